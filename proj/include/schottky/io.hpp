#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "schottky/enumeration.hpp"
#include "schottky/freegroup.hpp"
#include "schottky/realstructures.hpp"
#include "schottky/schottky.hpp"

namespace schottky {

using Json = nlohmann::ordered_json;

// Every *_from_json throws ParseError on malformed input.

/// [re, im]
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"matrix": [[re,im] x 4], "orientation": "preserving" | "reversing"}
Json to_json(const MobiusMap& f);
MobiusMap mobius_from_json(const Json& j);

/// {"center": [re,im], "radius": r} or {"normal": [re,im], "offset": t}
Json to_json(const Circle& c);
Circle circle_from_json(const Json& j);

/// {"generators": [...], "pairing": [{"c": circle, "c_prime": circle}, ...]}.
/// On input the pairing is optional; when generators are absent they are
/// built from the pairing with pairing_map.
Json to_json(const MarkedSchottky& m);
MarkedSchottky marked_from_json(const Json& j);
MarkedSchottky read_marked_group(const std::string& path);

/// {"rank": g, "images": ["x1 x3^-1", ...]}
Json to_json(const FgAuto& phi);
FgAuto fgauto_from_json(const Json& j);

Json to_json(const ValidationReport& r);

/// {g, m_g, g0, delta_set, terms: [{profile, n_f, b_f}], types?}; counts are
/// decimal strings.
Json enumeration_report(int g, bool with_types, int bound);

/// Derived images, case, transversal and the table comparison.
Json rho_report(const Signature& s);

/// The four classes and the rank-2 signature table.
Json genus2_report(int budget);

Json to_json(const ConjugacyReport& r);

/// [[re, im], ...]; infinity as the string "inf".
Json points_json(const std::vector<SpherePoint>& pts);
/// "re,im" per line with a header.
std::string points_csv(const std::vector<SpherePoint>& pts);
/// Scatter plot of the finite points, scaled to a square canvas.
std::string points_svg(const std::vector<SpherePoint>& pts, int size = 512);

}  // namespace schottky
