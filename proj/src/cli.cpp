#include "conedyn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "conedyn/error.hpp"
#include "conedyn/experiments.hpp"
#include "conedyn/order.hpp"
#include "conedyn/pf.hpp"
#include "conedyn/positivity.hpp"
#include "conedyn/report.hpp"
#include "conedyn/systems.hpp"

namespace conedyn::cli {

using nlohmann::json;
using geometry::Point;

namespace {

const std::vector<std::string> kExperiments = {
    "check-dp", "pf", "converge", "dichotomy", "trichotomy", "criterion", "order", "causal"};

bool is_registered(const std::string& key) {
  const auto& reg = systems::registry();
  return std::any_of(reg.begin(), reg.end(),
                     [&](const systems::RegistryEntry& e) { return e.key == key; });
}

// Validates a field spec without building it (the system may be unknown).
void check_field_spec(const json& f, std::vector<std::string>& problems) {
  if (f.is_null()) return;
  if (f.is_string()) {
    static const std::set<std::string> names = {"orthant", "lorentz", "homogeneous_spd"};
    if (!names.count(f.get<std::string>())) {
      problems.push_back("/field: unknown field name '" + f.get<std::string>() + "'");
    }
    return;
  }
  if (!f.is_object() || !f.contains("field") || !f["field"].is_string()) {
    problems.push_back("/field: expected a name or an object with a \"field\" key");
    return;
  }
  const auto kind = f["field"].get<std::string>();
  if (kind == "homogeneous_spd") {
    for (const auto& [k, v] : f.items()) {
      if (k != "field" && k != "n") problems.push_back("/field/" + k + ": unknown key");
    }
    if (!f.contains("n") || !f["n"].is_number_integer() || f["n"].get<int>() < 1) {
      problems.push_back("/field/n: positive integer required");
    }
  } else if (kind == "constant") {
    for (const auto& [k, v] : f.items()) {
      if (k != "field" && k != "cone") problems.push_back("/field/" + k + ": unknown key");
    }
    if (!f.contains("cone") || !f["cone"].is_object() || !f["cone"].contains("type")) {
      problems.push_back("/field/cone: object with a \"type\" key required");
    }
  } else {
    problems.push_back("/field/field: unknown field kind '" + kind + "'");
  }
}

cones::Cone cone_from_json(const json& c) {
  const auto type = c.at("type").get<std::string>();
  if (type == "polyhedral") {
    std::vector<Vec> gens;
    std::vector<Vec> facets;
    for (const auto& g : c.at("generators")) gens.push_back(report::vec_from_json(g));
    for (const auto& l : c.at("facet_normals")) facets.push_back(report::vec_from_json(l));
    return cones::Cone::polyhedral(std::move(gens), std::move(facets));
  }
  const int n = c.at("n").get<int>();
  if (type == "orthant") return cones::Cone::orthant(n);
  if (type == "lorentz") return cones::Cone::lorentz(n);
  if (type == "psd") return cones::Cone::psd(n);
  throw InvalidArgument("unknown cone type '" + type + "'");
}

conefield::ConeField field_from_json(const json& f, const flow::FlowSystem& s) {
  if (f.is_null()) return systems::default_field(s);
  if (f.is_string()) {
    const auto name = f.get<std::string>();
    if (name == "orthant") {
      return conefield::ConeField::constant(s.manifold, cones::Cone::orthant(s.dim()));
    }
    if (name == "lorentz") {
      return conefield::ConeField::constant(s.manifold, cones::Cone::lorentz(s.dim()));
    }
    if (name == "homogeneous_spd") {
      if (s.manifold.is_flat()) {
        throw InvalidArgument("homogeneous_spd field needs an SPD system");
      }
      return conefield::ConeField::homogeneous_spd(s.manifold.order());
    }
    throw InvalidArgument("unknown field '" + name + "'");
  }
  const auto kind = f.at("field").get<std::string>();
  if (kind == "homogeneous_spd") {
    const auto field = conefield::ConeField::homogeneous_spd(f.at("n").get<int>());
    if (!(field.manifold() == s.manifold)) {
      throw InvalidArgument("homogeneous_spd order does not match the system");
    }
    return field;
  }
  if (kind == "constant") return conefield::ConeField::constant(s.manifold, cone_from_json(f.at("cone")));
  throw InvalidArgument("unknown field kind '" + kind + "'");
}

std::string field_name(const json& f) {
  if (f.is_null()) return "default";
  if (f.is_string()) return f.get<std::string>();
  return f.dump();
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() &&
          item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + item + "' in '" + s + "'");
    }
  }
  return out;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  file << text;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object", {"/: expected object"});
  static const std::set<std::string> known = {"system", "experiment", "field", "T", "dt",
                                              "n", "seed", "out", "csv"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) problems.push_back("/" + key + ": unknown key");
  }
  Scenario s;
  const auto get_string = [&](const char* key, std::string& dst, bool required) {
    if (!j.contains(key)) {
      if (required) problems.push_back(std::string("/") + key + ": required");
      return;
    }
    if (!j[key].is_string()) {
      problems.push_back(std::string("/") + key + ": expected a string");
      return;
    }
    dst = j[key].get<std::string>();
  };
  get_string("system", s.system, true);
  get_string("experiment", s.experiment, true);
  get_string("out", s.out, false);
  get_string("csv", s.csv, false);
  if (j.contains("system") && j["system"].is_string() && !is_registered(s.system)) {
    problems.push_back("/system: unknown system '" + s.system + "'");
  }
  if (j.contains("experiment") && j["experiment"].is_string() &&
      std::find(kExperiments.begin(), kExperiments.end(), s.experiment) == kExperiments.end()) {
    problems.push_back("/experiment: unknown experiment '" + s.experiment + "'");
  }
  if (j.contains("field")) {
    s.field = j["field"];
    check_field_spec(s.field, problems);
  }
  const auto get_positive = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number() || !(j[key].get<double>() > 0.0)) {
      problems.push_back(std::string("/") + key + ": positive number required");
      return;
    }
    dst = j[key].get<double>();
  };
  get_positive("T", s.T);
  get_positive("dt", s.dt);
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
      problems.push_back("/n: positive integer required");
    } else {
      s.n = j["n"].get<int>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      problems.push_back("/seed: non-negative integer required");
    } else {
      s.seed = j["seed"].get<std::uint64_t>();
    }
  }
  if (s.dt > s.T) problems.push_back("/dt: must not exceed T");
  if (!problems.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ScenarioError(msg, problems);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ScenarioError("cannot read scenario '" + path + "'", {path + ": unreadable"});
  std::stringstream buf;
  buf << file.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    const std::string where = path + ":" + std::to_string(line) + ":" + std::to_string(col);
    throw ScenarioError("parse error at " + where + ": " + e.what(), {where + ": parse error"});
  }
  return parse_scenario(j);
}

json scenario_to_json(const Scenario& s) {
  json j{{"system", s.system}, {"experiment", s.experiment}, {"T", s.T},
         {"dt", s.dt},         {"n", s.n},                   {"seed", s.seed}};
  if (!s.field.is_null()) j["field"] = s.field;
  if (!s.out.empty()) j["out"] = s.out;
  if (!s.csv.empty()) j["csv"] = s.csv;
  return j;
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  file << scenario_to_json(s).dump(2) << '\n';
}

namespace {

// Flags shared by every experiment subcommand; unset values fall back to the
// scenario file, then to per-command defaults.
struct Flags {
  std::string scenario;
  std::optional<std::string> system;
  std::optional<std::string> field;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<double> T;
  std::optional<double> dt;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  // Command-specific.
  std::string x0;
  std::string x;
  std::string y;
  std::string cone = "orthant";
  std::string tscan = "1,2,5";
  std::string times = "0.1,1,5";
  std::string box;
  double tau = 1.0;
  int rays = 8;
  int resolution = 101;
  int directions = 16;
  int transects = 10;
};

struct Resolved {
  std::string system;
  json field;
  std::uint64_t seed = 0;
  int n = 0;
  double T = 0.0;
  double dt = 1e-3;
  std::string out;
  std::string csv;
};

Resolved resolve(const std::string& command, const Flags& f, int default_n, double default_T) {
  Resolved r;
  r.n = default_n;
  r.T = default_T;
  if (!f.scenario.empty()) {
    const Scenario s = load_scenario(f.scenario);
    if (s.experiment != command) {
      throw InvalidArgument("scenario experiment '" + s.experiment +
                            "' does not match subcommand '" + command + "'");
    }
    r.system = s.system;
    r.field = s.field;
    r.seed = s.seed;
    r.n = s.n;
    r.T = s.T;
    r.dt = s.dt;
    r.out = s.out;
    r.csv = s.csv;
  }
  if (f.system) r.system = *f.system;
  if (f.field) {
    const auto& text = *f.field;
    r.field = !text.empty() && text.front() == '{' ? json::parse(text) : json(text);
  }
  if (f.seed) r.seed = *f.seed;
  if (f.n) r.n = *f.n;
  if (f.T) r.T = *f.T;
  if (f.dt) r.dt = *f.dt;
  if (f.out) r.out = *f.out;
  if (f.csv) r.csv = *f.csv;
  if (r.n < 1) throw InvalidArgument("--n must be >= 1");
  if (!(r.T > 0.0) || !(r.dt > 0.0)) throw InvalidArgument("--T and --dt must be positive");
  return r;
}

json base_params(const Resolved& r) {
  return json{{"system", r.system}, {"field", field_name(r.field)}, {"dt", r.dt}};
}

Point point_or_default(const std::string& text, const flow::FlowSystem& s) {
  if (text.empty()) {
    if (s.manifold.is_flat()) return Point{Vec::Zero(s.dim())};
    return Point{linalg::pack(Mat::Identity(s.manifold.order(), s.manifold.order()))};
  }
  Point p{to_vec(parse_list(text))};
  geometry::validate(s.manifold, p);
  return p;
}

experiments::Options experiment_options(const Resolved& r, const Flags& f, int dim) {
  experiments::Options o;
  o.dt = r.dt;
  if (!f.box.empty()) {
    const auto b = parse_list(f.box);
    if (b.size() != 2 || !(b[1] > b[0])) throw InvalidArgument("--box expects lo,hi");
    o.box = geometry::Box::cube(dim, b[0], b[1]);
  }
  return o;
}

int emit(const json& report, const std::string& path, std::ostream& out) {
  write_text(path, report.dump(2) + "\n", out);
  return kOk;
}

void add_common(CLI::App* cmd, Flags& f, bool system_flags = true) {
  cmd->add_option("--scenario", f.scenario, "Scenario JSON file");
  if (system_flags) {
    cmd->add_option("--system", f.system, "Registry system key (see `list`)");
    cmd->add_option("--field", f.field,
                    "Cone field: orthant | lorentz | homogeneous_spd | JSON field spec");
  }
  cmd->add_option("--seed", f.seed, "Random seed (default 0)");
  cmd->add_option("--n", f.n, "Sample count");
  cmd->add_option("--T", f.T, "Horizon");
  cmd->add_option("--dt", f.dt, "RK4 step (default 1e-3)");
  cmd->add_option("--out", f.out, "JSON report path (default stdout)");
}

int run_list(std::ostream& out) {
  out << std::left << std::setw(16) << "key" << std::setw(18) << "default field"
      << "description\n";
  for (const auto& e : systems::registry()) {
    out << std::left << std::setw(16) << e.key << std::setw(18) << e.default_field
        << e.description << '\n';
  }
  return kOk;
}

flow::FlowSystem require_system(const Resolved& r) {
  if (r.system.empty()) throw InvalidArgument("--system is required");
  return systems::make(r.system);
}

int run_check_dp(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("check-dp", f, 200, 5.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  positivity::DpOptions opts;
  opts.dt = r.dt;
  const auto v = positivity::check_dp(s, field, r.n, f.rays, parse_list(f.times), r.seed, opts);
  emit(report::dp_report(v, base_params(r)), r.out, out);
  return v.status == positivity::DpStatus::kViolated ? kVerdictFailed : kOk;
}

int run_pf(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("pf", f, 1, 50.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  const Point x0 = point_or_default(f.x0, s);
  const auto res = pf::pf_direction(s, field, x0, r.T, r.dt);
  std::optional<pf::Eigenpair> eq;
  if (s.eval(x0.coords).norm() < flow::kEqTol) {
    eq = pf::pf_at_equilibrium(s, field, x0, f.tau, r.dt);
  }
  json params = base_params(r);
  params["x0"] = report::to_json(x0.coords);
  params["T"] = r.T;
  params["tau"] = f.tau;
  emit(report::pf_report(res, eq ? &*eq : nullptr, params), r.out, out);
  return kOk;
}

int run_converge(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("converge", f, 1000, 100.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  const auto opts = experiment_options(r, f, s.dim());
  const auto rep = experiments::generic_convergence(s, field, r.n, r.T, r.seed, opts);
  std::optional<experiments::BoundaryScan> scan;
  if (rep.equilibria.size() >= 2 && f.transects > 0) {
    scan = experiments::basin_boundary_scan(s, rep, f.transects, r.seed, 1e-3, r.dt);
  }
  json params = base_params(r);
  const auto box = opts.box ? *opts.box : s.box;
  params["box"] = {{"lo", report::to_json(box.lo)}, {"hi", report::to_json(box.hi)}};
  emit(report::convergence_report(rep, scan ? &*scan : nullptr, params), r.out, out);
  if (!r.csv.empty()) write_text(r.csv, report::convergence_csv(rep), out);
  return rep.precondition_sdp ? kOk : kVerdictFailed;
}

int run_dichotomy(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("dichotomy", f, 200, 100.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  const auto rep = experiments::dichotomy_check(s, field, r.n, r.T, r.seed,
                                                experiment_options(r, f, s.dim()));
  json params = base_params(r);
  params["T"] = r.T;
  emit(report::dichotomy_report(rep, params), r.out, out);
  return rep.violations > 0 ? kVerdictFailed : kOk;
}

int run_criterion(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("criterion", f, 100, 100.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  const auto scan = parse_list(f.tscan);
  auto rep = experiments::convergence_criterion_check(s, field, r.n, scan, r.seed, r.T,
                                                      experiment_options(r, f, s.dim()));
  json params = base_params(r);
  params["T"] = r.T;
  params["T_scan"] = scan;
  emit(report::criterion_report(rep, params), r.out, out);
  return rep.triggered == rep.confirmed ? kOk : kVerdictFailed;
}

int run_trichotomy(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("trichotomy", f, 8, 100.0);
  const auto s = require_system(r);
  const auto field = field_from_json(r.field, s);
  const Point x0 = point_or_default(f.x0, s);
  const auto rep = experiments::trichotomy_check(s, field, x0, r.n, r.T, r.dt);
  json params = base_params(r);
  params["x0"] = report::to_json(x0.coords);
  params["n_seq"] = r.n;
  params["T"] = r.T;
  emit(report::trichotomy_report(rep, params), r.out, out);
  return rep.consistent ? kOk : kVerdictFailed;
}

int run_order(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("order", f, 1, 1.0);
  const Vec x = to_vec(parse_list(f.x));
  const Vec y = to_vec(parse_list(f.y));
  if (x.size() == 0 || x.size() != y.size()) throw InvalidArgument("--x and --y must have equal length");
  order::OrderVerdict v;
  std::string cone_name;
  if (f.cone == "loewner") {
    const int n = linalg::matrix_order(static_cast<int>(x.size()));
    v = order::leq_loewner(n, Point{x}, Point{y});
    cone_name = "loewner(" + std::to_string(n) + ")";
  } else {
    const int d = static_cast<int>(x.size());
    const cones::Cone c = f.cone == "orthant"   ? cones::Cone::orthant(d)
                          : f.cone == "lorentz" ? cones::Cone::lorentz(d)
                          : f.cone == "psd"     ? cones::Cone::psd(linalg::matrix_order(d))
                                                : throw InvalidArgument("unknown --cone '" + f.cone + "'");
    v = order::leq_flat(c, Point{x}, Point{y});
    cone_name = c.name();
  }
  json cert = json::array();
  for (const Vec& p : v.certificate) cert.push_back(report::to_json(p));
  json params{{"cone", cone_name}, {"x", report::to_json(x)}, {"y", report::to_json(y)}};
  json counts{{"relation", order::to_string(v.relation)}, {"certificate", std::move(cert)}};
  emit(report::make_report("order", params, r.seed, counts), r.out, out);
  return kOk;
}

int run_causal(const Flags& f, std::ostream& out) {
  const Resolved r = resolve("causal", f, 500, 1.0);
  const order::Region region{0.0, 2.0, -2.0, 2.0};
  const Vec p = Vec::Zero(2);
  const auto grid =
      order::reachable_grid(order::minkowski_cone(), p, region, f.resolution, f.directions);
  const auto exact = order::minkowski_future(p, order::FutureKind::kCausal, region, f.resolution);
  const double agree = order::agreement(grid, exact);
  const auto qc_mink = order::quasi_closed_probe(order::minkowski_oracle(), r.n, r.seed);
  const auto qc_flat = order::quasi_closed_probe(order::flat_oracle(cones::Cone::orthant(2)), r.n, r.seed);
  const auto push = order::push_up_probe(2 * r.n, r.seed);
  const std::vector<double> deltas = {0.125, 0.25, 0.5};
  Vec past(2);
  past << -2.0, 0.0;
  Vec space(2);
  space << 0.0, 3.0;
  const auto inner = order::continuity_probe(order::ContinuityKind::kInner, p, {past}, deltas);
  const auto outer = order::continuity_probe(order::ContinuityKind::kOuter, p, {space}, deltas);

  json params{{"resolution", f.resolution}, {"directions", f.directions},
              {"region", {region.t_lo, region.t_hi, region.x_lo, region.x_hi}},
              {"sequences", r.n}, {"triples", 2 * r.n}, {"deltas", deltas}};
  json counts{{"grid_agreement", agree},
              {"quasi_closed_violations_minkowski", qc_mink.violations},
              {"quasi_closed_violations_flat", qc_flat.violations},
              {"push_up_triples", push.triples},
              {"push_up_violations", push.violations},
              {"inner_continuity_largest_delta", inner.largest_passing_delta},
              {"outer_continuity_largest_delta", outer.largest_passing_delta}};
  json findings = json::array();
  bool ok = agree >= 0.99 && qc_mink.violations == 0 && qc_flat.violations == 0 &&
            push.violations == 0 && inner.passes(0.5) && outer.passes(0.5);
  if (!inner.precondition_ok) findings.push_back(inner.precondition_error);
  if (!outer.precondition_ok) findings.push_back(outer.precondition_error);
  emit(report::make_report("causal", params, r.seed, counts, nullptr, findings), r.out, out);
  return ok ? kOk : kVerdictFailed;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential positivity and conal-order experiments", "conedyn"};
  app.require_subcommand(1);
  Flags f;

  app.add_subcommand("list", "List registered systems");
  auto* check = app.add_subcommand("check-dp", "Sample differential positivity");
  add_common(check, f);
  check->add_option("--rays", f.rays, "Rays per point (default 8)");
  check->add_option("--times", f.times, "Comma-separated test times");
  auto* pfc = app.add_subcommand("pf", "Perron-Frobenius direction along an orbit");
  add_common(pfc, f);
  pfc->add_option("--x0", f.x0, "Initial point (comma-separated chart coordinates)");
  pfc->add_option("--tau", f.tau, "Time for the equilibrium eigenproblem");
  auto* conv = app.add_subcommand("converge", "Monte-Carlo generic convergence");
  add_common(conv, f);
  conv->add_option("--csv", f.csv, "Per-sample CSV path");
  conv->add_option("--box", f.box, "Sampling cube lo,hi");
  conv->add_option("--transects", f.transects, "Basin-boundary transects (default 10)");
  auto* dich = app.add_subcommand("dichotomy", "Limit-set dichotomy on ordered pairs");
  add_common(dich, f);
  dich->add_option("--box", f.box, "Sampling cube lo,hi");
  auto* tri = app.add_subcommand("trichotomy", "Monotone approximating sequence");
  add_common(tri, f);
  tri->add_option("--x0", f.x0, "Limit point of the sequence");
  auto* crit = app.add_subcommand("criterion", "x <= phi_T(x) convergence criterion");
  add_common(crit, f);
  crit->add_option("--tscan", f.tscan, "Comma-separated scan times");
  crit->add_option("--box", f.box, "Sampling cube lo,hi");
  auto* ord = app.add_subcommand("order", "Compare two points in a flat conal order");
  add_common(ord, f, false);
  ord->add_option("--cone", f.cone, "orthant | lorentz | psd | loewner");
  ord->add_option("--x", f.x, "First point")->required();
  ord->add_option("--y", f.y, "Second point")->required();
  auto* causal = app.add_subcommand("causal", "Causal-order battery in 1+1 Minkowski space");
  add_common(causal, f, false);
  causal->add_option("--resolution", f.resolution, "Grid points per axis (default 101)");
  causal->add_option("--directions", f.directions, "Stencil size (default 16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("list")) return run_list(out);
    if (check->parsed()) return run_check_dp(f, out);
    if (pfc->parsed()) return run_pf(f, out);
    if (conv->parsed()) return run_converge(f, out);
    if (dich->parsed()) return run_dichotomy(f, out);
    if (tri->parsed()) return run_trichotomy(f, out);
    if (crit->parsed()) return run_criterion(f, out);
    if (ord->parsed()) return run_order(f, out);
    if (causal->parsed()) return run_causal(f, out);
  } catch (const ScenarioError& e) {
    err << "conedyn: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "conedyn: bad JSON argument: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "conedyn: " << e.what() << '\n';
    return kUsage;
  } catch (const Unsupported& e) {
    err << "conedyn: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "conedyn: numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace conedyn::cli
