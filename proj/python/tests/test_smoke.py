import json
import os
import subprocess

import pytest

import pyschottky as ps

DATA = os.environ.get(
    "SCHOTTKY_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data")
)
CLI = os.environ.get("SCHOTTKY_CLI")


def test_counts():
    assert [ps.m_g(g) for g in range(4)] == [2, 6, 17, 75]
    assert ps.m_g_oracle(3) == ps.m_g(3)
    big = ps.m_g(40)
    assert isinstance(big, int) and big > 2**63


def test_mobius_roundtrip():
    f = ps.Mobius(2, 1, 1, 1)
    assert abs(f(0) - 1) < 1e-12
    assert ps.projective_distance(f * f.inverse(), ps.Mobius(1, 0, 0, 1)) < 1e-12
    assert f.classify() == "loxodromic"
    r = ps.Mobius(1, 0, 0, 1, reversing=True)
    assert r.reversing and r(1j) == pytest.approx(-1j)


def test_rho_report():
    report = ps.rho("(0,0,0,2,0;)")
    assert report["rank"] == 3
    assert report["rho"]["images"] == ["x1", "x1 x3^-1", "x1 x2^-1"]
    sigs = ps.signatures_of_rank(2)
    assert len(sigs) == 11 and "(0,1,1,0,0;)" in sigs


def test_groups_from_files():
    g2 = os.path.join(DATA, "classical_g2.json")
    assert ps.validate(g2)["valid"]
    pts = ps.limit_points(g2, length=3)
    assert len(pts) > 0
    g3 = os.path.join(DATA, "imaginary_axis_g3.json")
    assert len(ps.zeta(g3)) == 3 * 3 - 3
    wit = ps.fixed_point(g3, ["x1^-1", "x2", "x3"], tol=1e-8)
    assert wit is not None and wit["residual"] < 1e-8


def test_domain_errors_raise():
    with pytest.raises(ps.SchottkyError, match="InvalidSignature|ParseError"):
        ps.rho("(1,2,3;)")
    with pytest.raises(ValueError):
        ps.Mobius(1, 1, 1, 1)


def test_genus2_classes():
    report = ps.genus2()
    assert [c["components"] for c in report["classes"]] == [5, 3, 2, 0]


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_exit_codes():
    ok = subprocess.run([CLI, "count", "2"], capture_output=True, text=True)
    assert ok.returncode == 0
    assert json.loads(ok.stdout)[0]["m_g"] == "17"
    bad = subprocess.run([CLI, "rho", "(1,2,3;)"], capture_output=True, text=True)
    assert bad.returncode == 1
    assert "error" in json.loads(bad.stderr)
