#include "conedyn/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace conedyn::report {

namespace {

// JSON has no infinity; unbounded distances are emitted as null.
json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Vec vec_from_json(const json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json make_report(const std::string& type, json params, std::uint64_t seed,
                 json counts, json interval, json findings) {
  return json{{"report_type", type},     {"params", std::move(params)},
              {"seed", seed},            {"counts", std::move(counts)},
              {"interval", std::move(interval)}, {"findings", std::move(findings)}};
}

json dp_report(const positivity::DpVerdict& v, json params) {
  params["x_samples"] = v.x_samples;
  params["ray_samples"] = v.ray_samples;
  params["times"] = v.times;
  json counts{{"status", positivity::to_string(v.status)},
              {"worst_margin", number(v.worst_margin)},
              {"worst_boundary_margin", number(v.worst_boundary_margin)}};
  json findings = json::array();
  if (v.status == positivity::DpStatus::kSdp) {
    findings.push_back("SDP not refuted at the sampled resolution (" +
                       std::to_string(v.x_samples) + " points x " +
                       std::to_string(v.ray_samples) + " rays)");
  }
  if (v.witness.x0.size() > 0) {
    json w{{"x0", to_json(v.witness.x0)},
           {"ray", to_json(v.witness.ray)},
           {"t", v.witness.t}};
    if (v.witness.facet_normal.size() > 0) w["facet_normal"] = to_json(v.witness.facet_normal);
    counts["witness"] = std::move(w);
  }
  return make_report("check_dp", std::move(params), v.seed, std::move(counts),
                     nullptr, std::move(findings));
}

json convergence_report(const experiments::ConvergenceReport& r,
                        const experiments::BoundaryScan* scan, json params) {
  params["N"] = r.total;
  params["T"] = r.T;
  json eqs = json::array();
  for (const auto& e : r.equilibria) eqs.push_back({{"point", to_json(e.point)}, {"count", e.count}});
  json counts{{"total", r.total},
              {"converged", r.converged},
              {"non_singleton", r.non_singleton},
              {"undetermined", r.undetermined},
              {"escapes", r.escapes},
              {"fraction", r.fraction},
              {"precondition", positivity::to_string(r.precondition)},
              {"precondition_sdp", r.precondition_sdp},
              {"equilibria", std::move(eqs)}};
  if (scan != nullptr) {
    json transects = json::array();
    for (const auto& t : scan->transects) {
      transects.push_back({{"a", to_json(t.a)}, {"b", to_json(t.b)},
                           {"width", t.width}, {"resolved", t.resolved}});
    }
    counts["boundary_scan"] = {{"transects", std::move(transects)},
                               {"max_width", scan->max_width},
                               {"all_resolved", scan->all_resolved}};
  }
  return make_report("converge", std::move(params), r.seed, std::move(counts),
                     json{{"lo", r.interval.lo}, {"hi", r.interval.hi}, {"level", 0.95}},
                     r.findings);
}

json dichotomy_report(const experiments::DichotomyReport& r, json params) {
  params["pairs"] = r.pairs;
  json counts{{"pairs", r.pairs},
              {"violations", r.violations},
              {"strict_order", r.strict_order},
              {"equal_singleton", r.equal_singleton},
              {"excluded", r.excluded}};
  return make_report("dichotomy", std::move(params), r.seed, std::move(counts),
                     nullptr, r.findings);
}

json criterion_report(const experiments::CriterionReport& r, json params) {
  json counts{{"samples", r.samples}, {"triggered", r.triggered}, {"confirmed", r.confirmed}};
  return make_report("criterion", std::move(params), r.seed, std::move(counts),
                     nullptr, r.findings);
}

json trichotomy_report(const experiments::TrichotomyReport& r, json params) {
  json seq = json::array();
  for (const auto& v : r.omega_sequence) seq.push_back(to_json(v));
  json counts{{"branch", r.branch},
              {"consistent", r.consistent},
              {"matches", {r.matches[0], r.matches[1], r.matches[2]}},
              {"omega_x0", to_json(r.omega_x0)},
              {"omega_sequence", std::move(seq)}};
  return make_report("trichotomy", std::move(params), 0, std::move(counts));
}

json pf_report(const pf::PfResult& r, const pf::Eigenpair* eq, json params) {
  json log = json::array();
  for (const auto& s : r.contraction_log) log.push_back({s.t, number(s.distance)});
  json counts{{"direction", to_json(r.direction)},
              {"final_point", to_json(r.final_point)},
              {"converged", r.converged},
              {"final_distance", number(r.contraction_log.back().distance)},
              {"contraction_log", std::move(log)}};
  if (eq != nullptr) {
    counts["equilibrium_eigenvector"] = to_json(eq->v);
    counts["rho"] = eq->rho;
    counts["power_iterations"] = eq->iterations;
    counts["eigen_residual"] = eq->residual;
  }
  return make_report("pf", std::move(params), 0, std::move(counts));
}

std::string convergence_csv(const experiments::ConvergenceReport& r) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const Eigen::Index n = r.samples.empty() ? 0 : r.samples.front().x0.size();
  out << "index";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x0_" << i;
  out << ",outcome";
  for (Eigen::Index i = 0; i < n; ++i) out << ",limit_" << i;
  out << ",residual\n";
  for (const auto& s : r.samples) {
    out << s.index;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << s.x0(i);
    out << ',' << experiments::to_string(s.outcome);
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',';
      if (s.limit.size() == n) out << s.limit(i);
    }
    out << ',' << s.residual << '\n';
  }
  return out.str();
}

}  // namespace conedyn::report
