#pragma once

// Independent reference values used by the unit and acceptance tests. Nothing
// here calls into the library under test.

#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace oracle {

// Root of g on [lo, hi] by plain bisection; g(lo) and g(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Positive fixed point of s = tanh(k s) for k > 1.
inline double tanh_fixed_point(double k) {
  return bisect([k](double s) { return s - std::tanh(k * s); }, 0.1, 2.0);
}

// coop2d diagonal equilibria +-(s, s): s = tanh(2.5 s).
inline double coop2d_s() { return tanh_fixed_point(2.5); }
// coop2d antidiagonal equilibria +-(a, -a): a = tanh(1.5 a).
inline double coop2d_a() { return tanh_fixed_point(1.5); }
// bistable1d stable roots +-s1: s1 = tanh(2 s1).
inline double bistable_s() { return tanh_fixed_point(2.0); }

// Saddles of coop2d off both symmetry axes, solved once with an external
// nonlinear solver and frozen here: (u, v) and its images under x -> -x and
// the coordinate swap.
inline constexpr double kCoopSaddleU = 0.918733;
inline constexpr double kCoopSaddleV = -0.513248;

// exp(A t) for A = [[-1, 1], [1, -1]] via its eigenvectors (1,1), (1,-1).
inline Eigen::Matrix2d exp_exchange(double t) {
  const double e = std::exp(-2.0 * t);
  Eigen::Matrix2d m;
  m << (1 + e) / 2, (1 - e) / 2, (1 - e) / 2, (1 + e) / 2;
  return m;
}

// Jacobian of coop2d at x: -I + diag(sech^2(Ax)) A.
inline Eigen::Matrix2d coop2d_jacobian(const Eigen::Vector2d& x) {
  Eigen::Matrix2d a;
  a << 2, 0.5, 0.5, 2;
  const Eigen::Vector2d z = a * x;
  Eigen::Matrix2d j = -Eigen::Matrix2d::Identity();
  for (int i = 0; i < 2; ++i) {
    const double c = 1.0 / std::cosh(z(i));
    j.row(i) += c * c * a.row(i);
  }
  return j;
}

// Dominant eigenpair of a symmetric 2x2 matrix, eigenvector in the first
// quadrant.
inline std::pair<double, Eigen::Vector2d> dominant_sym(const Eigen::Matrix2d& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  Eigen::Vector2d v = es.eigenvectors().col(1);
  if (v.sum() < 0) v = -v;
  return {es.eigenvalues()(1), v};
}

}  // namespace oracle
