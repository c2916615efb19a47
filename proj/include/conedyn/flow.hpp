#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conedyn/geometry.hpp"

namespace conedyn::flow {

using geometry::ManifoldSpec;
using geometry::Point;

inline constexpr double kDefaultDt = 1e-3;
inline constexpr int kStoreStride = 10;
inline constexpr double kTailFraction = 0.25;
inline constexpr double kClusterRadius = 1e-4;
inline constexpr double kEqTol = 1e-10;
// Orbits whose chart norm exceeds this are reported as escapes.
inline constexpr double kEscapeRadius = 1e6;

// out must already have the chart dimension.
using VectorFieldFn = std::function<void(const Vec& x, Vec& out)>;
// out must already be dim x dim.
using JacobianFn = std::function<void(const Vec& x, Mat& out)>;

// A smooth vector field in chart coordinates together with its exact
// Jacobian.
struct FlowSystem {
  ManifoldSpec manifold;
  VectorFieldFn field;
  JacobianFn jacobian;
  std::string name;
  // Default sampling region for experiments.
  geometry::Box box;

  int dim() const { return manifold.dim(); }
  Vec eval(const Vec& x) const;
  Mat jac(const Vec& x) const;
};

// States are columns of `states`; times[k] is the time of column k.
struct Trajectory {
  std::vector<double> times;
  Mat states;

  int size() const { return static_cast<int>(times.size()); }
  Vec state(int k) const { return states.col(k); }
  Vec final_state() const { return states.col(states.cols() - 1); }
};

// Tangent flow dphi_t(x0) along a trajectory; phi[k] belongs to
// trajectory.times[k].
struct TangentFlow {
  Trajectory trajectory;
  std::vector<Mat> phi;

  const Mat& final_phi() const { return phi.back(); }
};

// Fixed-step classical RK4 from 0 to T (a final partial step lands exactly on
// T). States are stored every `stride` steps plus the final one. Throws
// NumericFailure on a non-finite state, on leaving SPD, or when the state
// norm exceeds kEscapeRadius.
Trajectory integrate(const FlowSystem& s, const Point& x0, double T,
                     double dt = kDefaultDt, int stride = kStoreStride);

// Final state only; T may be negative (backward flow).
Vec advance(const FlowSystem& s, const Vec& x0, double T,
            double dt = kDefaultDt);

// Jointly integrates x' = f(x), Phi' = J(x) Phi with Phi(0) = I.
TangentFlow tangent_flow(const FlowSystem& s, const Point& x0, double T,
                         double dt = kDefaultDt, int stride = kStoreStride);

struct TangentSample {
  double t;
  Vec x;
  Mat phi;
};

// State and Phi at each requested time (sorted ascending, all >= 0). Steps of
// dt, shortened where needed to land exactly on every requested time.
std::vector<TangentSample> tangent_flow_at(const FlowSystem& s, const Vec& x0,
                                           const std::vector<double>& times,
                                           double dt = kDefaultDt);

// Advances (x, W) one RK4 step of size h where the columns of W obey the
// variational equation. W may have zero columns.
void rk4_step(const FlowSystem& s, Vec& x, Mat& w, double h);

// Called after every accepted step with the current time, state and
// propagated vectors; may rescale the vectors in place.
using StepObserver = std::function<void(double t, const Vec& x, Mat& w)>;

// Integrates x and the columns of w from 0 to T, calling `observe` after each
// step. Returns the final state; w holds the final vectors.
Vec propagate(const FlowSystem& s, const Vec& x0, Mat& w, double T, double dt,
              const StepObserver& observe);

// Newton's method on f from `seed`. Returns nullopt when the Jacobian is
// singular at an iterate or the residual does not reach kEqTol.
std::optional<Vec> newton_polish(const FlowSystem& s, const Vec& seed,
                                 int max_iterations = 100);

// Deduplicated zeros of f reached by Newton from the seeds.
std::vector<Point> find_equilibria(const FlowSystem& s,
                                   const std::vector<Point>& seeds);

enum class OmegaKind { kSingletonEquilibrium, kNonSingleton, kUndetermined };

struct OmegaEstimate {
  OmegaKind kind = OmegaKind::kUndetermined;
  // Polished equilibrium (singleton) or tail samples (non-singleton).
  std::vector<Vec> points;
  // |f| at the reported equilibrium, or at the final state otherwise.
  double residual = 0.0;

  bool is_singleton() const { return kind == OmegaKind::kSingletonEquilibrium; }
  const Vec& limit() const { return points.front(); }
};

std::string to_string(OmegaKind kind);

// Classifies the long-run behaviour of the orbit of x0 from the last
// kTailFraction of a length-T trajectory.
OmegaEstimate omega_limit(const FlowSystem& s, const Point& x0, double T,
                          double dt = kDefaultDt);

}  // namespace conedyn::flow
