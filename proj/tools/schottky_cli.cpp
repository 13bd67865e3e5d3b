// Command-line front end: enumeration tables, type lists, rho_K, marked
// group coordinates, limit sets, the genus-2 classification and the
// acceptance suite.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "schottky/acceptance.hpp"
#include "schottky/config.hpp"
#include "schottky/errors.hpp"
#include "schottky/io.hpp"

using namespace schottky;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerification = 2;

struct Options {
  std::string format = "json";
  double tol = 1e-9;
  std::uint64_t seed = Config{}.seed;
  int bound = 12;
  std::string out;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw ParseError("cannot write " + opt.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Options& opt, std::initializer_list<const char*> ok) {
  for (const char* f : ok)
    if (opt.format == f) return;
  throw ParseError("format '" + opt.format + "' not supported here");
}

// "3" or "0..5"
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int g = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {g, g};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "', expected N or A..B");
  }
}

int cmd_count(const Options& opt, const std::string& range, bool oracle) {
  require_format(opt, {"json", "csv"});
  const auto [lo, hi] = parse_range(range);
  if (lo < 0) throw NegativeRank("rank must be non-negative");
  if (hi > opt.bound) {
    throw BoundExceeded("rank " + std::to_string(hi) + " exceeds --bound " +
                        std::to_string(opt.bound));
  }
  bool all_match = true;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "g,m_g,g0,sum_nf_bf" << (oracle ? ",oracle,match" : "") << '\n';
  for (int g = lo; g <= hi; ++g) {
    const BigInt total = m_g(g), g0 = g0_count(g);
    Json row = {{"g", g},
                {"m_g", total.str()},
                {"g0", g0.str()},
                {"sum_nf_bf", BigInt(total - g0).str()}};
    csv << g << ',' << total << ',' << g0 << ',' << BigInt(total - g0);
    if (oracle) {
      const BigInt o = m_g_oracle(g, opt.bound);
      const bool match = o == total;
      all_match = all_match && match;
      row["oracle"] = o.str();
      row["match"] = match;
      csv << ',' << o << ',' << (match ? "true" : "false");
    }
    csv << '\n';
    rows.push_back(row);
  }
  emit(opt, opt.format == "csv" ? csv.str() : dump(rows));
  return all_match ? kOk : kVerification;
}

// "2 reflections, 1 glide-reflection, real factors of rank 1, 2"
std::string describe(const Signature& s) {
  std::vector<std::string> parts;
  auto add = [&](int n, const std::string& what) {
    if (n > 0) {
      parts.push_back(std::to_string(n) + " " + what + (n > 1 ? "s" : ""));
    }
  };
  add(s.a, "reflection");
  add(s.b, "imaginary reflection");
  add(s.c, "loxodromic");
  add(s.d, "glide-reflection");
  if (s.e > 0) {
    std::string r = "real factor" + std::string(s.e > 1 ? "s" : "") +
                    " of rank ";
    for (std::size_t i = 0; i < s.gammas.size(); ++i) {
      r += (i ? ", " : "") + std::to_string(s.gammas[i]);
    }
    parts.push_back(r);
  }
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

int cmd_types(const Options& opt, int g, bool refined) {
  require_format(opt, {"json", "csv"});
  struct Row {
    std::string type, signature, description;
  };
  std::vector<Row> rows;
  auto add = [&](const std::string& t, const Signature& s) {
    rows.push_back({t, to_string(s), describe(s)});
  };
  if (refined) {
    for (const auto& t : enumerate_refined_types(g, opt.bound)) {
      add(to_string(t), t.signature());
    }
  } else {
    for (const auto& t : enumerate_types(g, opt.bound)) {
      add(to_string(t), t.signature());
    }
  }
  if (opt.format == "csv") {
    std::string out = "type,signature,description\n";
    for (const auto& r : rows) {
      out += "\"" + r.type + "\",\"" + r.signature + "\",\"" +
             r.description + "\"\n";
    }
    emit(opt, out);
    return kOk;
  }
  Json types = Json::array();
  for (const auto& r : rows) {
    types.push_back({{"type", r.type},
                     {"signature", r.signature},
                     {"description", r.description}});
  }
  emit(opt, dump({{"g", g},
                  {"granularity", refined ? "refined" : "abstract"},
                  {"count", rows.size()},
                  {"types", types}}));
  return kOk;
}

int cmd_rho(const Options& opt, const std::string& text) {
  require_format(opt, {"json", "csv"});
  const Json report = rho_report(parse_signature(text));
  if (opt.format == "json") {
    emit(opt, dump(report));
    return kOk;
  }
  std::ostringstream csv;
  csv << "index,derived,displayed,status\n";
  for (const auto& d : report["diagnostics"]) {
    csv << d["index"].get<int>() << ",\"" << d["derived"].get<std::string>()
        << "\",\""
        << (d["displayed"].is_null() ? "" : d["displayed"].get<std::string>())
        << "\"," << d["status"].get<std::string>() << '\n';
  }
  emit(opt, csv.str());
  return kOk;
}

int cmd_zeta(const Options& opt, const std::string& path) {
  require_format(opt, {"json", "csv"});
  const auto m = read_marked_group(path);
  const auto n = normalize(m, opt.tol);
  const auto z = zeta(m, opt.tol);
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "re,im\n";
    for (const auto& c : z) csv << c.real() << ',' << c.imag() << '\n';
    emit(opt, csv.str());
    return kOk;
  }
  Json coords = Json::array();
  for (const auto& c : z) coords.push_back(to_json(c));
  emit(opt, dump({{"rank", m.rank()},
                  {"conjugator", to_json(n.conjugator)},
                  {"normalized", to_json(n.group)},
                  {"zeta", coords}}));
  return kOk;
}

int cmd_limitset(const Options& opt, const std::string& path, int length,
                 std::size_t cap) {
  require_format(opt, {"json", "csv", "svg"});
  const auto m = read_marked_group(path);
  const auto pts = limit_points(m, length, opt.tol, cap);
  if (opt.format == "csv") {
    emit(opt, points_csv(pts));
  } else if (opt.format == "svg") {
    emit(opt, points_svg(pts));
  } else {
    emit(opt, dump({{"rank", m.rank()},
                    {"max_length", length},
                    {"count", pts.size()},
                    {"points", points_json(pts)}}));
  }
  return kOk;
}

int cmd_validate(const Options& opt, const std::string& path) {
  require_format(opt, {"json"});
  const auto m = read_marked_group(path);
  if (!m.witness()) throw PreconditionFailed("input has no circle pairing");
  const auto report = validate_pairing(*m.witness(), opt.tol);
  emit(opt, dump(to_json(report)));
  return report.valid ? kOk : kVerification;
}

// "x1^-1, x2, x3" or empty for the identity
FgAuto parse_twist(const std::string& text, int rank) {
  if (text.empty()) return FgAuto::identity(rank);
  std::vector<FreeWord> images;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) images.push_back(FreeWord::parse(item));
  if (static_cast<int>(images.size()) != rank) {
    throw ParseError("twist needs one image per generator");
  }
  return FgAuto(rank, std::move(images));
}

int cmd_fixed(const Options& opt, const std::string& path,
              const std::string& twist) {
  require_format(opt, {"json"});
  const auto m = read_marked_group(path);
  const RealStructureSpec spec(parse_twist(twist, m.rank()));
  const auto wit = is_fixed_point(spec, m, opt.tol);
  Json out = {{"twist", to_json(spec.rho)}, {"fixed", wit.has_value()}};
  if (wit) {
    out["conjugator"] = to_json(wit->conjugator);
    out["residual"] = wit->residual;
  }
  emit(opt, dump(out));
  return kOk;
}

int cmd_g2(const Options& opt, int budget) {
  require_format(opt, {"json"});
  emit(opt, dump(genus2_report(budget)));
  return kOk;
}

int cmd_experiment(const Options& opt, int g, int budget, int max_rank) {
  require_format(opt, {"json"});
  emit(opt, dump(to_json(conjugacy_experiment(g, budget, max_rank))));
  return kOk;
}

int cmd_sample(const Options& opt, int g) {
  require_format(opt, {"json"});
  std::mt19937_64 rng(opt.seed);
  emit(opt, dump(to_json(random_classical_group(rng, g))));
  return kOk;
}

int cmd_verify(const Options& opt, bool timing) {
  require_format(opt, {"json", "csv"});
  Config config;
  config.tolerance = opt.tol;
  config.enumeration_bound = opt.bound;
  config.seed = opt.seed;
  config.validate();
  const auto results = run_acceptance(config);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  if (opt.format == "json") {
    Json rows = Json::array();
    for (const auto& r : results) {
      Json row = {{"id", r.id},
                  {"name", r.name},
                  {"pass", r.pass},
                  {"detail", r.detail}};
      if (timing) row["seconds"] = r.seconds;
      rows.push_back(row);
    }
    emit(opt, dump({{"passed", ok}, {"criteria", rows}}));
  } else {
    std::ostringstream csv;
    csv << "id,name,pass,detail" << (timing ? ",seconds" : "") << '\n';
    for (const auto& r : results) {
      csv << r.id << ",\"" << r.name << "\"," << (r.pass ? "true" : "false")
          << ",\"" << r.detail << '"';
      if (timing) csv << ',' << r.seconds;
      csv << '\n';
    }
    emit(opt, csv.str());
  }
  return ok ? kOk : kVerification;
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended Schottky groups: enumeration, rho_K, real structures"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--tol", opt.tol, "Tolerance for projective comparisons");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--bound", opt.bound, "Largest rank for enumerations");
  app.add_option("--out", opt.out, "Write output to this file");

  std::string range;
  bool oracle = false;
  auto* count = app.add_subcommand("count", "M_g with its decomposition");
  count->add_option("range", range, "N or A..B")->required();
  count->add_flag("--oracle", oracle, "Add the brute-force count");

  int g = 0;
  bool refined = false;
  auto* types = app.add_subcommand("types", "Topological types of rank g");
  types->add_option("g", g)->required();
  types->add_flag("--refined", refined, "Expand real factors into (+-;h;m)");

  std::string signature;
  auto* rho = app.add_subcommand("rho", "rho_K of a signature (a,b,c,d,e;g1,...)");
  rho->add_option("signature", signature)->required();

  std::string path;
  auto* zeta_cmd = app.add_subcommand("zeta", "Normalize a marked group");
  zeta_cmd->add_option("file", path, "Marked-group JSON")->required();

  int length = 6;
  std::size_t cap = Config{}.point_cap;
  auto* limit = app.add_subcommand("limitset", "Sample the limit set");
  limit->add_option("file", path, "Marked-group JSON")->required();
  limit->add_option("--length", length, "Largest word length");
  limit->add_option("--cap", cap, "Largest number of points");

  auto* validate = app.add_subcommand("validate", "Check a circle pairing");
  validate->add_option("file", path, "Marked-group JSON with a pairing")
      ->required();

  std::string twist;
  auto* fixed = app.add_subcommand(
      "fixed", "Is the group a real point of J o rho? (witness search)");
  fixed->add_option("file", path, "Marked-group JSON")->required();
  fixed->add_option("--twist", twist,
                    "Images of x1..xg, comma separated (default identity)");

  int budget = 20000;
  auto* g2 = app.add_subcommand("g2", "Genus-2 real structures");
  g2->add_option("--budget", budget, "Conjugator search budget");

  int max_rank = 5;
  auto* experiment =
      app.add_subcommand("experiment", "Conjugacy of rho_K within rank g");
  experiment->add_option("g", g)->required();
  experiment->add_option("--budget", budget, "Conjugator search budget");
  experiment->add_option("--max-rank", max_rank, "Largest accepted rank");

  auto* sample = app.add_subcommand("sample", "Random classical marked group");
  sample->add_option("g", g)->required();

  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_flag("--timing", timing, "Include run times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    set_default_tolerance(opt.tol);
    if (count->parsed()) return cmd_count(opt, range, oracle);
    if (types->parsed()) return cmd_types(opt, g, refined);
    if (rho->parsed()) return cmd_rho(opt, signature);
    if (zeta_cmd->parsed()) return cmd_zeta(opt, path);
    if (limit->parsed()) return cmd_limitset(opt, path, length, cap);
    if (validate->parsed()) return cmd_validate(opt, path);
    if (fixed->parsed()) return cmd_fixed(opt, path, twist);
    if (g2->parsed()) return cmd_g2(opt, budget);
    if (experiment->parsed()) return cmd_experiment(opt, g, budget, max_rank);
    if (sample->parsed()) return cmd_sample(opt, g);
    if (verify->parsed()) return cmd_verify(opt, timing);
  } catch (const Error& e) {
    report_error(e.code(), e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    report_error("InvalidArgument", e.what());
    return kUsage;
  }
  return kUsage;
}
