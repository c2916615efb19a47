#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "conedyn/experiments.hpp"
#include "conedyn/order.hpp"
#include "conedyn/pf.hpp"
#include "conedyn/positivity.hpp"

namespace conedyn::report {

using nlohmann::json;

// Every report carries report_type, params, seed, counts, interval (or null)
// and findings[]; see schema/report.schema.json.
json make_report(const std::string& type, json params, std::uint64_t seed,
                 json counts, json interval = nullptr,
                 json findings = json::array());

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json dp_report(const positivity::DpVerdict& v, json params);
json convergence_report(const experiments::ConvergenceReport& r,
                        const experiments::BoundaryScan* scan, json params);
json dichotomy_report(const experiments::DichotomyReport& r, json params);
json criterion_report(const experiments::CriterionReport& r, json params);
json trichotomy_report(const experiments::TrichotomyReport& r, json params);
json pf_report(const pf::PfResult& r, const pf::Eigenpair* eq, json params);

// One row per sample: index, x0_0.., outcome, limit_0.., residual.
std::string convergence_csv(const experiments::ConvergenceReport& r);

}  // namespace conedyn::report
