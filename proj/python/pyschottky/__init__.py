"""Python bindings for the real Schottky toolkit.

Marked groups are passed as dicts (the same layout as the JSON files read by
the ``schottky`` command) or as paths to such files.
"""

import json
import os

from ._schottky_core import (
    Mobius,
    SchottkyError,
    default_tolerance,
    g0_count,
    m_g,
    m_g_oracle,
    projective_distance,
    set_default_tolerance,
    signatures_of_rank,
)
from . import _schottky_core as _core

__all__ = [
    "Mobius",
    "SchottkyError",
    "default_tolerance",
    "enumeration",
    "fixed_point",
    "g0_count",
    "genus2",
    "limit_points",
    "m_g",
    "m_g_oracle",
    "projective_distance",
    "rho",
    "run_acceptance",
    "set_default_tolerance",
    "signatures_of_rank",
    "validate",
    "zeta",
]


def _group_text(group):
    if isinstance(group, (str, os.PathLike)):
        with open(group) as f:
            return f.read()
    return json.dumps(group)


def enumeration(g, types=False, bound=12):
    return json.loads(_core.enumeration_report(g, types, bound))


def rho(signature):
    """Report for a signature such as "(0,0,0,2,0;)"."""
    return json.loads(_core.rho_report(signature))


def zeta(group, tol=1e-9):
    return _core.zeta(_group_text(group), tol)


def limit_points(group, length=6, tol=1e-9, cap=1_000_000):
    return _core.limit_points(_group_text(group), length, tol, cap)


def validate(group, tol=1e-9):
    return json.loads(_core.validate(_group_text(group), tol))


def fixed_point(group, images, tol=1e-9):
    """Witness that the group is fixed by J composed with the twist, or None."""
    out = _core.fixed_point(_group_text(group), list(images), tol)
    return None if out is None else json.loads(out)


def genus2(budget=20000):
    return json.loads(_core.genus2_report(budget))


def run_acceptance(seed=None):
    return _core.run_acceptance() if seed is None else _core.run_acceptance(seed)
