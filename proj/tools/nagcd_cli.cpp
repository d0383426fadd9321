// nagcd: command-line front end. Every result is one JSON object on stdout.
// Exit status: 0 ok, 1 domain/parse error, 2 indeterminate at precision.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nagcd/nagcd.hpp"

namespace {

using nagcd::Error;
using nagcd::ErrorCode;
using nagcd::LaurentScalar;
using nagcd::LogRadius;
using nagcd::Series;
using json = nlohmann::json;

struct Options {
  std::int64_t rho = 0;
  std::optional<std::int64_t> rho2;
  std::string tower;
  std::uint64_t seed = 0;
  int deg_cap = nagcd::kDefaultDegCap;
  std::int64_t prec_t = nagcd::kDefaultPrecT;
  std::string json_file;
  std::vector<std::string> args;
};

int exit_code(ErrorCode c) {
  return c == ErrorCode::kIndeterminate || c == ErrorCode::kRetryExceeded ? 2 : 1;
}

json val_json(const nagcd::Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

/// Series inputs of a command: JSON-file entries first, then positional
/// text, all in a common number of variables.
class Inputs {
 public:
  Inputs(const Options& o, std::size_t min_vars) : o_(o) {
    if (!o.json_file.empty()) {
      std::ifstream in(o.json_file);
      if (!in) throw Error(ErrorCode::kParse, "cannot open " + o.json_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kParse, std::string("malformed JSON input: ") + e.what());
      }
      if (j.is_object() && j.contains("inputs")) j = j["inputs"];
      if (!j.is_array()) j = json::array({j});
      for (const auto& s : j) json_.push_back(nagcd::series_from_json(s, o.prec_t));
    }
    m_ = min_vars;
    for (const auto& s : json_) m_ = std::max(m_, s.nvars());
    for (const auto& a : o.args) m_ = std::max(m_, nagcd::detail::infer_nvars(a));
  }

  std::size_t nvars() const { return m_; }

  /// The k-th series; positional text after the JSON entries.
  Series series(std::size_t k) const {
    if (k < json_.size()) return json_[k].with_deg_cap(o_.deg_cap);
    const std::size_t pos = k - json_.size();
    if (pos >= o_.args.size()) throw Error(ErrorCode::kDomain, "missing series argument " + std::to_string(k + 1));
    return nagcd::parse_series(o_.args[pos], m_, o_.deg_cap, o_.prec_t);
  }

  std::size_t count() const { return json_.size() + o_.args.size(); }

  /// Positional arguments after the first n series.
  std::vector<std::string> rest(std::size_t n) const {
    const std::size_t skip = n > json_.size() ? n - json_.size() : 0;
    if (skip >= o_.args.size()) return {};
    return {o_.args.begin() + static_cast<std::ptrdiff_t>(skip), o_.args.end()};
  }

 private:
  const Options& o_;
  std::vector<Series> json_;
  std::size_t m_ = 0;
};

json shear_json(const nagcd::Shear<LaurentScalar>& s) {
  json u = json::array();
  for (const auto& x : s.u) u.push_back(x.to_string());
  return u;
}

nagcd::BallTower parse_tower(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kDomain, "--tower is required");
  try {
    json j = json::parse(text);
    return nagcd::BallTower{j.at("rhos").get<std::vector<std::int64_t>>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed tower JSON: ") + e.what());
  }
}

using Verb = std::function<json(const Options&, int&)>;

json cmd_norm(const Options& o, int&) {
  Inputs in(o, 0);
  const auto rep = nagcd::gauss_val_report(in.series(0), LogRadius(o.rho));
  return {{"gauss_val", val_json(rep.value)}, {"certain", rep.certain}};
}

json cmd_eval(const Options& o, int&) {
  Inputs in(o, 0);
  const Series f = in.series(0);
  std::vector<LaurentScalar> point;
  for (const auto& s : in.rest(1)) point.push_back(nagcd::parse_scalar(s, o.prec_t));
  const LaurentScalar v = nagcd::eval_at(f, point, LogRadius(o.rho));
  return {{"value", v.to_string()}, {"valuation", val_json(v.val())}, {"truncated", v.truncated()}};
}

json cmd_unit(const Options& o, int&) {
  Inputs in(o, 0);
  return {{"is_unit", nagcd::is_unit(in.series(0), LogRadius(o.rho))}};
}

json cmd_invert(const Options& o, int&) {
  Inputs in(o, 0);
  const Series inv = nagcd::invert_unit(in.series(0), LogRadius(o.rho));
  return {{"inverse", nagcd::to_string(inv)}, {"truncated", inv.truncated()}};
}

json cmd_shear(const Options& o, int&) {
  Inputs in(o, 0);
  std::vector<Series> fs;
  for (std::size_t k = 0; k < in.count(); ++k) fs.push_back(in.series(k));
  std::vector<LogRadius> rhos{LogRadius(o.rho)};
  if (o.rho2) rhos.emplace_back(*o.rho2);
  nagcd::Rng rng(o.seed);
  const auto s = nagcd::generic_shear<LaurentScalar>(fs, rhos, rng);
  json sheared = json::array();
  for (const auto& f : fs) sheared.push_back(nagcd::to_string(nagcd::apply_shear(f, s)));
  return {{"u", shear_json(s)}, {"identity", s.is_identity()}, {"sheared", sheared}};
}

json cmd_prep(const Options& o, int&) {
  Inputs in(o, 1);
  const auto p = nagcd::weierstrass_prep(in.series(0), LogRadius(o.rho));
  return {{"unit", nagcd::to_string(p.unit)},
          {"poly", nagcd::to_string(p.poly)},
          {"degree", p.degree},
          {"exact", p.exact}};
}

json cmd_divide(const Options& o, int&) {
  Inputs in(o, 1);
  const auto d = nagcd::weierstrass_divide(in.series(0), in.series(1), LogRadius(o.rho));
  return {{"quotient", nagcd::to_string(d.quotient)},
          {"remainder", nagcd::to_string(d.remainder)},
          {"degree", d.degree},
          {"exact", d.exact}};
}

json cmd_gcd(const Options& o, int& status) {
  Inputs in(o, 0);
  nagcd::Rng rng(o.seed);
  const Series f1 = in.series(0), f2 = in.series(1);
  if (o.rho2) {
    // Radius stability: rho is the smaller ball, rho2 the larger one.
    const auto stable = nagcd::radius_stability_check(f1, f2, LogRadius(o.rho), LogRadius(*o.rho2), rng);
    if (!stable) status = 2;
    return {{"stable", stable ? json(*stable) : json(nullptr)}};
  }
  const auto g = nagcd::gcd_at_radius(f1, f2, LogRadius(o.rho), rng);
  return {{"gcd", nagcd::to_string(g.gcd)},
          {"cofactor1", nagcd::to_string(g.cofactor1)},
          {"cofactor2", nagcd::to_string(g.cofactor2)},
          {"shear", shear_json(g.shear_used)},
          {"certified", g.certified}};
}

json cmd_coprime(const Options& o, int& status) {
  Inputs in(o, 1);
  nagcd::Rng rng(o.seed);
  const auto c = nagcd::coprime_certificate(in.series(0), in.series(1), LogRadius(o.rho), rng);
  json out{{"status", nagcd::coprime_status_name(c.status)}};
  if (c.status == nagcd::CoprimeStatus::kIndeterminate) status = 2;
  if (c.cert) {
    out["h"] = nagcd::to_string(c.cert->h);
    out["g1"] = nagcd::to_string(c.cert->g1);
    out["g2"] = nagcd::to_string(c.cert->g2);
    out["shear"] = shear_json(c.cert->shear);
  }
  return out;
}

json cmd_mult(const Options& o, int& status) {
  Inputs in(o, 0);
  nagcd::Rng rng(o.seed);
  const auto m = nagcd::multiplicity_of_factor(in.series(0), in.series(1), LogRadius(o.rho), rng);
  if (!m.determinate) status = 2;
  return {{"multiplicity", m.count}, {"determinate", m.determinate}};
}

json cmd_tower_gcd(const Options& o, int&) {
  Inputs in(o, 0);
  nagcd::Rng rng(o.seed);
  const auto t = nagcd::tower_gcd(in.series(0), in.series(1), parse_tower(o.tower), rng);
  json levels = json::array(), units = json::array(), z0 = json::array();
  for (const auto& g : t.chain.g) levels.push_back(nagcd::to_string(g));
  for (const auto& u : t.chain.u) units.push_back(nagcd::to_string(u));
  for (const auto& x : t.chain.z0) z0.push_back(x.to_string());
  return {{"G", nagcd::to_string(t.G)},         {"canonical", nagcd::to_string(t.canonical)},
          {"levels", levels},                    {"units", units},
          {"basepoint", z0},                     {"tail", t.glued.tail},
          {"compatible", t.glued.compatible},    {"consistent", t.consistent}};
}

json cmd_factor1(const Options& o, int&) {
  Inputs in(o, 1);
  if (in.nvars() != 1) throw Error(ErrorCode::kDomain, "factor1 needs a series in z1 only");
  const auto fl = nagcd::factor_one_variable(in.series(0), LogRadius(o.rho));
  json roots = json::array();
  for (const auto& r : fl.roots) roots.push_back({{"a", r.a.to_string()}, {"mult", r.mult}});
  return {{"c", fl.c.to_string()},
          {"e", fl.e},
          {"roots", roots},
          {"unit", nagcd::to_string(fl.unit)},
          {"complete", fl.complete}};
}

json cmd_polygon(const Options& o, int&) {
  Inputs in(o, 1);
  if (in.nvars() != 1) throw Error(ErrorCode::kDomain, "polygon needs a series in z1 only");
  json segs = json::array();
  for (const auto& s : nagcd::newton_polygon(in.series(0))) {
    segs.push_back({{"slope", s.slope.get_str()}, {"length", s.length}});
  }
  return {{"segments", segs}};
}

/// Spec examples run through the same entry points.
json cmd_selftest(const Options& o, int& status) {
  auto P = [&](const std::string& s, std::size_t m = 2) { return nagcd::parse_series(s, m, o.deg_cap, o.prec_t); };
  nagcd::Rng rng(o.seed);
  std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"norm", [&] { return nagcd::gauss_val(P("t*z1 + z2^2"), LogRadius(1)) == nagcd::Valuation(2); }},
      {"unit", [&] {
         return nagcd::is_unit(P("1 - z1", 1), LogRadius(1)) && !nagcd::is_unit(P("1 - z1", 1), LogRadius(-1));
       }},
      {"prep", [&] {
         const Series f = P("z2^2 - z1^2 + z1^3");
         const auto p = nagcd::weierstrass_prep(f, LogRadius(0));
         return nagcd::agree(p.unit * p.poly, f, LogRadius(0)) && nagcd::is_weierstrass_poly(p.poly, LogRadius(0));
       }},
      {"gcd", [&] {
         return nagcd::gcd_at_radius(P("z1*z2"), P("z1*z1 + z1*z2"), LogRadius(0), rng).gcd == P("z1");
       }},
      {"coprime", [&] {
         const auto c = nagcd::coprime_certificate(P("z2 - z1"), P("z2 + z1"), LogRadius(0), rng);
         return c.cert && c.cert->h == P("2*z1");
       }},
      {"mult", [&] {
         return nagcd::multiplicity_of_factor(P("(z2 - z1)*(z2 - z1)*(z2 + z1)"), P("z2 - z1"), LogRadius(0), rng)
                    .count == 2;
       }},
      {"factor1", [&] {
         const auto fl = nagcd::factor_one_variable(P("(1 - z1)*(1 - t^(-1)*z1)", 1), LogRadius(-1));
         return fl.complete && fl.roots.size() == 2;
       }},
      {"polygon", [&] { return nagcd::newton_polygon(P("1 - t^(-1)*z1", 1)).size() == 1; }},
  };
  json results = json::array();
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++failed;
    results.push_back({{"name", name}, {"pass", ok}});
  }
  if (failed) status = 1;
  return {{"checks", results}, {"passed", static_cast<int>(checks.size()) - failed}, {"failed", failed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greatest common divisors of non-Archimedean analytic functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--rho", o.rho, "log-radius: r = 2^-rho");
  app.add_option("--rho2", o.rho2, "second log-radius (larger ball) for radius stability / shear");
  app.add_option("--tower", o.tower, "ball tower as JSON, e.g. {\"rhos\":[1,0,-1]}");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--deg-cap", o.deg_cap, "total-degree cap D")->check(CLI::NonNegativeNumber);
  app.add_option("--prec-t", o.prec_t, "t-adic precision of parsed coefficients")->check(CLI::PositiveNumber);
  app.add_option("--json", o.json_file, "read series inputs from a JSON file");

  const std::map<std::string, std::pair<Verb, std::string>> verbs = {
      {"norm", {cmd_norm, "Gauss valuation"}},
      {"eval", {cmd_eval, "evaluate at a point: SERIES Z1 ... ZM"}},
      {"unit", {cmd_unit, "unit criterion"}},
      {"invert", {cmd_invert, "inverse of a unit"}},
      {"shear", {cmd_shear, "generic shear making all inputs distinguished"}},
      {"prep", {cmd_prep, "Weierstrass preparation"}},
      {"divide", {cmd_divide, "Weierstrass division: G F"}},
      {"gcd", {cmd_gcd, "gcd at --rho (radius stability with --rho2)"}},
      {"coprime", {cmd_coprime, "coprimality certificate"}},
      {"mult", {cmd_mult, "multiplicity of a factor: F P"}},
      {"tower-gcd", {cmd_tower_gcd, "gcd glued over --tower"}},
      {"factor1", {cmd_factor1, "one-variable factorization on the ball"}},
      {"polygon", {cmd_polygon, "Newton polygon"}},
      {"selftest", {cmd_selftest, "run built-in examples"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, verb] : verbs) {
    CLI::App* sub = app.add_subcommand(name, verb.second);
    sub->add_option("args", o.args, "series and scalar arguments");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    int status = 0;
    try {
      const json out = verbs.at(name).first(o, status);
      std::cout << out.dump() << "\n";
      return status;
    } catch (const Error& e) {
      std::cout << json{{"error", nagcd::error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
      return exit_code(e.code());
    }
  }
  return 1;
}
