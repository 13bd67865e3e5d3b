#include "schottky/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "schottky/errors.hpp"
#include "schottky/signature_rho.hpp"

namespace schottky {

namespace {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string big(const BigInt& n) { return n.str(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  return parsing("complex", [&] {
    if (!j.is_array() || j.size() != 2) {
      throw ParseError("complex number must be [re, im]");
    }
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  });
}

Json to_json(const MobiusMap& f) {
  Json m = Json::array();
  for (const auto& e : f.matrix()) m.push_back(to_json(e));
  return {{"matrix", m},
          {"orientation", f.is_reversing() ? "reversing" : "preserving"}};
}

MobiusMap mobius_from_json(const Json& j) {
  return parsing("map", [&] {
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 4) {
      throw ParseError("matrix must list four entries");
    }
    Orientation o = Orientation::preserving;
    if (j.contains("orientation")) {
      const auto s = j.at("orientation").get<std::string>();
      if (s == "reversing") {
        o = Orientation::reversing;
      } else if (s != "preserving") {
        throw ParseError("unknown orientation '" + s + "'");
      }
    }
    return MobiusMap(complex_from_json(m[0]), complex_from_json(m[1]),
                     complex_from_json(m[2]), complex_from_json(m[3]), o);
  });
}

Json to_json(const Circle& c) {
  if (c.is_line) return {{"normal", to_json(c.normal)}, {"offset", c.offset}};
  return {{"center", to_json(c.center)}, {"radius", c.radius}};
}

Circle circle_from_json(const Json& j) {
  return parsing("circle", [&] {
    if (j.contains("normal")) {
      return Circle::line(complex_from_json(j.at("normal")),
                          j.at("offset").get<double>());
    }
    return Circle::disc(complex_from_json(j.at("center")),
                        j.at("radius").get<double>());
  });
}

Json to_json(const MarkedSchottky& m) {
  Json gens = Json::array();
  for (const auto& a : m.generators()) gens.push_back(to_json(a));
  Json out = {{"rank", m.rank()}, {"generators", gens}};
  if (m.witness()) {
    Json pairs = Json::array();
    for (const auto& pc : *m.witness()) {
      pairs.push_back({{"c", to_json(pc.c)}, {"c_prime", to_json(pc.c_prime)}});
    }
    out["pairing"] = pairs;
  }
  return out;
}

MarkedSchottky marked_from_json(const Json& j) {
  return parsing("marked group", [&] {
    std::optional<std::vector<std::pair<Circle, Circle>>> circles;
    if (j.contains("pairing")) {
      circles.emplace();
      for (const auto& p : j.at("pairing")) {
        circles->emplace_back(circle_from_json(p.at("c")),
                              circle_from_json(p.at("c_prime")));
      }
    }
    std::vector<MobiusMap> gens;
    if (j.contains("generators")) {
      for (const auto& g : j.at("generators")) {
        gens.push_back(mobius_from_json(g));
      }
    } else if (circles) {
      for (const auto& [c, cp] : *circles) gens.push_back(pairing_map(c, cp));
    } else {
      throw ParseError("marked group needs generators or a pairing");
    }
    if (!circles) return MarkedSchottky(std::move(gens));
    if (circles->size() != gens.size()) {
      throw ParseError("pairing and generators differ in length");
    }
    CirclePairing witness;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      witness.push_back({(*circles)[k].first, (*circles)[k].second, gens[k]});
    }
    return MarkedSchottky(std::move(gens), std::move(witness));
  });
}

MarkedSchottky read_marked_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  const Json j = parsing("json", [&] { return Json::parse(in); });
  return marked_from_json(j);
}

Json to_json(const FgAuto& phi) {
  Json images = Json::array();
  for (const auto& w : phi.images()) images.push_back(to_string(w));
  return {{"rank", phi.rank()}, {"images", images}};
}

FgAuto fgauto_from_json(const Json& j) {
  return parsing("automorphism", [&] {
    std::vector<FreeWord> images;
    for (const auto& w : j.at("images")) {
      images.push_back(FreeWord::parse(w.get<std::string>()));
    }
    return FgAuto(j.at("rank").get<int>(), std::move(images));
  });
}

Json to_json(const ValidationReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"margin", p.margin},
                     {"image_distance", p.image_distance},
                     {"exterior_to_interior", p.exterior_to_interior},
                     {"loxodromic", p.loxodromic}});
  }
  return {{"valid", r.valid}, {"pairs", pairs}};
}

Json enumeration_report(int g, bool with_types, int bound) {
  Json delta = Json::array();
  for (const auto& f : delta_set(g)) delta.push_back(to_string(f));
  Json terms = Json::array();
  for (const auto& t : profile_terms(g)) {
    terms.push_back({{"profile", to_string(t.profile)},
                     {"n_f", big(t.n_f)},
                     {"b_f", big(t.b_f)}});
  }
  Json out = {{"g", g},
              {"m_g", big(m_g(g))},
              {"g0", big(g0_count(g))},
              {"delta_set", delta},
              {"terms", terms}};
  if (with_types) {
    Json types = Json::array();
    for (const auto& t : enumerate_types(g, bound)) {
      types.push_back(to_string(t));
    }
    out["types"] = types;
  }
  return out;
}

Json rho_report(const Signature& s) {
  const int g = validate_signature(s);
  const FgAuto rho = rho_from_signature(s);
  Json basis = Json::array();
  for (const auto& w : kplus_basis(s)) basis.push_back(to_string(w));
  Json diag = Json::array();
  for (const auto& d : table_diagnostics(s)) {
    diag.push_back({{"index", d.index},
                    {"derived", d.derived},
                    {"displayed", d.displayed ? Json(*d.displayed) : Json()},
                    {"status", to_string(d.status)}});
  }
  return {{"signature", to_string(s)},
          {"rank", g},
          {"case", rho_case(s)},
          {"transversal", to_string(transversal(s))},
          {"basis", basis},
          {"rho", to_json(rho)},
          {"diagnostics", diag}};
}

Json genus2_report(int budget) {
  Json classes = Json::array();
  for (const auto& c : genus2_classes()) {
    classes.push_back({{"class", to_string(c.tag)},
                       {"rho", to_json(c.spec.rho)},
                       {"components", c.components},
                       {"empty_real_part", c.components == 0},
                       {"twist_order", c.twist_order}});
  }
  Json table = Json::array();
  for (const auto& s : signatures_of_rank(2)) {
    const auto result = structure_of_signature_g2(s, budget);
    table.push_back({{"signature", to_string(s)},
                     {"rho", to_json(rho_from_signature(s))},
                     {"class", to_string(result.tag)},
                     {"conjugator", to_json(result.conjugator)}});
  }
  return {{"classes", classes}, {"signatures", table}};
}

Json to_json(const ConjugacyReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"signature", to_string(e.signature)},
                       {"key", e.key},
                       {"rho", to_json(e.rho)}});
  }
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    Json pairs = Json::array();
    for (const auto& p : g.pairs) {
      pairs.push_back({{"first", p.first},
                       {"second", p.second},
                       {"verdict", to_string(p.verdict)}});
    }
    groups.push_back({{"key", g.key}, {"members", g.members}, {"pairs", pairs}});
  }
  return {{"g", r.g},
          {"budget", r.budget},
          {"entries", entries},
          {"groups", groups},
          {"classes", r.classes},
          {"class_count", r.classes.size()},
          {"unresolved_pairs", r.unresolved_pairs}};
}

Json points_json(const std::vector<SpherePoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) {
    if (p.denominator() == Complex(0.0)) {
      out.push_back("inf");
    } else {
      out.push_back(to_json(p.value()));
    }
  }
  return out;
}

std::string points_csv(const std::vector<SpherePoint>& pts) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im\n";
  for (const auto& p : pts) {
    if (p.denominator() == Complex(0.0)) {
      os << "inf,inf\n";
    } else {
      os << p.value().real() << ',' << p.value().imag() << '\n';
    }
  }
  return os.str();
}

std::string points_svg(const std::vector<SpherePoint>& pts, int size) {
  std::vector<Complex> finite;
  for (const auto& p : pts)
    if (p.denominator() != Complex(0.0)) finite.push_back(p.value());
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (!finite.empty()) {
    lo_x = hi_x = finite[0].real();
    lo_y = hi_y = finite[0].imag();
    for (const auto& z : finite) {
      lo_x = std::min(lo_x, z.real());
      hi_x = std::max(hi_x, z.real());
      lo_y = std::min(lo_y, z.imag());
      hi_y = std::max(hi_y, z.imag());
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double margin = 0.05 * size;
  const double scale = (size - 2 * margin) / span;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
     << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' ' << size
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& z : finite) {
    // y axis points up
    const double px = margin + (z.real() - lo_x) * scale;
    const double py = size - margin - (z.imag() - lo_y) * scale;
    os << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
       << "\" r=\"1.2\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace schottky
