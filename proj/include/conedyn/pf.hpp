#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conedyn/conefield.hpp"
#include "conedyn/flow.hpp"

namespace conedyn::pf {

using geometry::Point;

struct ContractionSample {
  double t;
  double distance;
};

struct PfResult {
  // Metric-normalized propagated direction at phi_T(x0).
  Vec direction;
  Vec final_point;
  std::optional<double> rho;
  std::vector<ContractionSample> contraction_log;
  bool converged = false;
};

inline constexpr double kConvergedDistance = 1e-6;

// Propagates two interior rays by the tangent flow, renormalizing every step,
// and logs their Hilbert distance in C_M(phi_t(x0)). Throws DpViolation when
// a ray leaves the cone by more than 10 * positivity::kTol.
PfResult pf_direction(const flow::FlowSystem& s, const conefield::ConeField& f,
                      const Point& x0, double T, double dt = flow::kDefaultDt);
PfResult pf_direction(const flow::FlowSystem& s, const conefield::ConeField& f,
                      const Point& x0, const Vec& u1, const Vec& u2, double T,
                      double dt = flow::kDefaultDt);

struct Eigenpair {
  Vec v;
  double rho;
  int iterations;
  double residual;
};

// Dominant eigenpair of dphi_tau(e) by power iteration from the field section.
// Throws InvalidArgument if e is not an equilibrium and NumericFailure if the
// iteration does not settle (e.g. a complex dominant pair).
Eigenpair pf_at_equilibrium(const flow::FlowSystem& s,
                            const conefield::ConeField& f, const Point& e,
                            double tau = 1.0, double dt = flow::kDefaultDt);

}  // namespace conedyn::pf
