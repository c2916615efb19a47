#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conedyn/conefield.hpp"
#include "conedyn/flow.hpp"
#include "conedyn/parallel.hpp"

namespace conedyn::positivity {

inline constexpr double kTol = 1e-7;
inline constexpr double kSdpMarginFloor = 1e-6;

enum class DpStatus { kDp, kSdp, kViolated, kInconclusive };

std::string to_string(DpStatus s);
inline bool passes(DpStatus s) {
  return s == DpStatus::kDp || s == DpStatus::kSdp;
}

struct Witness {
  Vec x0;
  Vec ray;
  double t = 0.0;
  // Cross-positivity witnesses also carry the facet normal.
  Vec facet_normal;
};

// SDP means "not refuted at the sampled resolution".
struct DpVerdict {
  DpStatus status = DpStatus::kInconclusive;
  double worst_margin = 0.0;
  // Worst margin over images of boundary rays only.
  double worst_boundary_margin = 0.0;
  Witness witness;
  int x_samples = 0;
  int ray_samples = 0;
  std::vector<double> times;
  std::uint64_t seed = 0;
};

struct DpOptions {
  double dt = flow::kDefaultDt;
  double tol = kTol;
  double sdp_margin_floor = kSdpMarginFloor;
  Execution execution = Execution::kParallel;
};

// Samples points from s.box and rays of C_M(x0) (boundary rays first, then
// random interior combinations), maps them by dphi_t(x0) and classifies the
// images in C_M(phi_t(x0)).
DpVerdict check_dp(const flow::FlowSystem& s, const conefield::ConeField& f,
                   int x_samples, int ray_samples,
                   const std::vector<double>& times, std::uint64_t seed,
                   const DpOptions& opts = {});

// Infinitesimal facet test <lambda, J(x) g> >= -tol for each generator g on
// facet lambda. Flat manifolds and polyhedral cones only.
DpVerdict cross_positivity_flat(const flow::FlowSystem& s,
                                const cones::Cone& c, int x_samples,
                                std::uint64_t seed, double tol = kTol);

struct EquivalenceReport {
  double agreement = 0.0;
  // Every sampled ordered pair stayed ordered at T/2 and T.
  bool monotone = false;
  DpStatus dp_status = DpStatus::kInconclusive;
  int pairs = 0;
  int pairs_preserved = 0;
};

// Compares order preservation of sampled pairs x <= y with the check_dp
// verdict at times {T/2, T}. agreement is 1 when both tests agree.
EquivalenceReport flat_equivalence(const flow::FlowSystem& s,
                                   const cones::Cone& c, int pairs, double T,
                                   std::uint64_t seed);

}  // namespace conedyn::positivity
