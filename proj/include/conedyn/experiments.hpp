#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conedyn/conefield.hpp"
#include "conedyn/flow.hpp"
#include "conedyn/parallel.hpp"
#include "conedyn/positivity.hpp"

namespace conedyn::experiments {

using geometry::Point;

struct Options {
  double dt = flow::kDefaultDt;
  Execution execution = Execution::kParallel;
  // Sampling region; the system's own box when absent.
  std::optional<geometry::Box> box;
};

// Wilson score interval at 95%.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval wilson_interval(int successes, int total);

enum class Outcome { kConverged, kNonSingleton, kUndetermined, kEscape };
std::string to_string(Outcome o);

struct SampleRecord {
  int index = 0;
  Vec x0;
  Outcome outcome = Outcome::kUndetermined;
  // Limit equilibrium (converged) or last state (otherwise); empty on escape.
  Vec limit;
  double residual = 0.0;
  // Index into ConvergenceReport::equilibria, -1 unless converged.
  int equilibrium = -1;
};

struct EquilibriumCount {
  Vec point;
  int count = 0;
};

struct ConvergenceReport {
  int total = 0;
  int converged = 0;
  int non_singleton = 0;
  int undetermined = 0;
  int escapes = 0;
  std::vector<EquilibriumCount> equilibria;
  double T = 0.0;
  std::uint64_t seed = 0;
  positivity::DpStatus precondition = positivity::DpStatus::kInconclusive;
  bool precondition_sdp = false;
  double fraction = 0.0;
  Interval interval;
  std::vector<std::string> findings;
  std::vector<SampleRecord> samples;
};

// Samples N points uniformly from the box and classifies each orbit by
// flow::omega_limit. Also runs check_dp to record the SDP precondition.
ConvergenceReport generic_convergence(const flow::FlowSystem& s,
                                      const conefield::ConeField& f, int N,
                                      double T, std::uint64_t seed,
                                      const Options& opts = {});

struct Transect {
  Vec a;
  Vec b;
  double width = 0.0;
  bool resolved = false;
};

struct BoundaryScan {
  std::vector<Transect> transects;
  double max_width = 0.0;
  bool all_resolved = false;
};

// Picks random pairs of converged samples with different limits and bisects
// the segment between them until the two ends still have different limits
// and are closer than `width`.
BoundaryScan basin_boundary_scan(const flow::FlowSystem& s,
                                 const ConvergenceReport& report, int count,
                                 std::uint64_t seed, double width = 1e-3,
                                 double dt = flow::kDefaultDt);

enum class PairCase { kStrictOrder, kEqualSingleton, kViolation, kExcluded };

struct PairOutcome {
  PairCase kind = PairCase::kExcluded;
  flow::OmegaEstimate omega_x;
  flow::OmegaEstimate omega_y;
  std::string detail;
};

// Classifies one ordered pair x <= y by the limit-set dichotomy.
PairOutcome classify_pair(const flow::FlowSystem& s, const cones::Cone& c,
                          const Point& x, const Point& y, double T,
                          double dt = flow::kDefaultDt);

struct DichotomyReport {
  int pairs = 0;
  int violations = 0;
  int strict_order = 0;
  int equal_singleton = 0;
  int excluded = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> findings;
};

DichotomyReport dichotomy_check(const flow::FlowSystem& s,
                                const conefield::ConeField& f, int pairs,
                                double T, std::uint64_t seed,
                                const Options& opts = {});

struct CriterionReport {
  int samples = 0;
  int triggered = 0;
  int confirmed = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> findings;
};

// For each sample x, triggers when x <= phi_T(x) or phi_T(x) <= x for some T
// in T_scan; every triggered orbit must have a singleton equilibrium limit.
CriterionReport convergence_criterion_check(const flow::FlowSystem& s,
                                            const conefield::ConeField& f,
                                            int x_samples,
                                            const std::vector<double>& T_scan,
                                            std::uint64_t seed, double T = 100.0,
                                            const Options& opts = {});

// Same check for explicit points (used for equilibria and CLI probes).
CriterionReport convergence_criterion_at(const flow::FlowSystem& s,
                                         const conefield::ConeField& f,
                                         const std::vector<Point>& xs,
                                         const std::vector<double>& T_scan,
                                         double T = 100.0,
                                         double dt = flow::kDefaultDt);

struct TrichotomyReport {
  // 1, 2 or 3; 0 when no alternative matches.
  int branch = 0;
  bool consistent = false;
  std::array<bool, 3> matches{};
  Vec omega_x0;
  std::vector<Vec> omega_sequence;
};

// Builds x_n = x0 - section(x0)/n for n = 1..n_seq and matches the limits
// against the three alternatives. Throws InvalidArgument when the sequence is
// not ordered.
TrichotomyReport trichotomy_check(const flow::FlowSystem& s,
                                  const conefield::ConeField& f,
                                  const Point& x0, int n_seq, double T,
                                  double dt = flow::kDefaultDt);

struct ColimitReport {
  int pairs = 0;
  int checked = 0;
  int excluded = 0;
  int violations = 0;
  std::uint64_t seed = 0;
};

// Among ordered pairs sharing one singleton limit p, asserts f(p) ~ 0.
ColimitReport colimit_check(const flow::FlowSystem& s,
                            const conefield::ConeField& f, int pairs, double T,
                            std::uint64_t seed, const Options& opts = {});

}  // namespace conedyn::experiments
