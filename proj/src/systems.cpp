#include "conedyn/systems.hpp"

#include <cmath>

#include "conedyn/error.hpp"

namespace conedyn::systems {

using flow::FlowSystem;
using geometry::Box;
using geometry::ManifoldSpec;

FlowSystem coop2d() {
  constexpr double a = 2.0;
  constexpr double b = 0.5;
  FlowSystem s{ManifoldSpec::euclidean(2), nullptr, nullptr, "coop2d",
               Box::cube(2, -2.0, 2.0)};
  s.field = [](const Vec& x, Vec& out) {
    out(0) = -x(0) + std::tanh(a * x(0) + b * x(1));
    out(1) = -x(1) + std::tanh(b * x(0) + a * x(1));
  };
  s.jacobian = [](const Vec& x, Mat& out) {
    const double t0 = std::tanh(a * x(0) + b * x(1));
    const double t1 = std::tanh(b * x(0) + a * x(1));
    const double d0 = 1.0 - t0 * t0;
    const double d1 = 1.0 - t1 * t1;
    out(0, 0) = -1.0 + a * d0;
    out(0, 1) = b * d0;
    out(1, 0) = b * d1;
    out(1, 1) = -1.0 + a * d1;
  };
  return s;
}

FlowSystem bistable1d() {
  FlowSystem s{ManifoldSpec::euclidean(1), nullptr, nullptr, "bistable1d",
               Box::cube(1, -2.0, 2.0)};
  s.field = [](const Vec& x, Vec& out) { out(0) = -x(0) + std::tanh(2.0 * x(0)); };
  s.jacobian = [](const Vec& x, Mat& out) {
    const double t = std::tanh(2.0 * x(0));
    out(0, 0) = -1.0 + 2.0 * (1.0 - t * t);
  };
  return s;
}

FlowSystem linear(const Mat& a, std::string name) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw InvalidArgument("linear system needs a square matrix");
  }
  const int n = static_cast<int>(a.rows());
  FlowSystem s{ManifoldSpec::euclidean(n), nullptr, nullptr, std::move(name),
               Box::cube(n, -2.0, 2.0)};
  s.field = [a](const Vec& x, Vec& out) { out.noalias() = a * x; };
  s.jacobian = [a](const Vec&, Mat& out) { out = a; };
  return s;
}

FlowSystem metzler_linear() {
  Mat a(2, 2);
  a << -1.0, 2.0, 0.0, -1.0;
  return linear(a, "metzler_linear");
}

FlowSystem rotation2d() {
  Mat a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;
  return linear(a, "rotation2d");
}

FlowSystem zero(int n) {
  return linear(Mat::Zero(n, n), "zero");
}

FlowSystem spd_lyapunov() {
  Mat a(2, 2);
  a << -1.0, 0.2, 0.0, -1.0;
  const int n = 2;
  const int m = linalg::packed_size(n);
  // P -> A P + P A^T is linear, so its Jacobian in packed coordinates is the
  // constant matrix whose k-th column is the image of the k-th basis vector.
  Mat jac(m, m);
  for (int k = 0; k < m; ++k) {
    const Mat e = linalg::unpack(Vec::Unit(m, k));
    jac.col(k) = linalg::pack(a * e + e * a.transpose());
  }
  FlowSystem s{ManifoldSpec::spd(n), nullptr, nullptr, "spd_lyapunov",
               Box::cube(m, -1.0, 1.0)};
  s.field = [jac](const Vec& x, Vec& out) { out.noalias() = jac * x; };
  s.jacobian = [jac](const Vec&, Mat& out) { out = jac; };
  return s;
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"coop2d", "dx/dt = -x + tanh(Ax), A = [[2,0.5],[0.5,2]] (SDP, orthant)",
       "orthant"},
      {"metzler_linear", "dx/dt = Ax, A = [[-1,2],[0,-1]] (DP, orthant)",
       "orthant"},
      {"rotation2d", "dx/dt = Ax, A = [[0,1],[-1,0]] (not DP, control case)",
       "orthant"},
      {"bistable1d", "dx/dt = -x + tanh(2x) (1-D, three equilibria)",
       "orthant"},
      {"spd_lyapunov",
       "dP/dt = AP + PA^T on SPD(2), A = [[-1,0.2],[0,-1]] (DP, not SDP)",
       "homogeneous_spd"},
  };
  return entries;
}

FlowSystem make(const std::string& key) {
  if (key == "coop2d") return coop2d();
  if (key == "metzler_linear") return metzler_linear();
  if (key == "rotation2d") return rotation2d();
  if (key == "bistable1d") return bistable1d();
  if (key == "spd_lyapunov") return spd_lyapunov();
  throw InvalidArgument("unknown system '" + key + "'");
}

conefield::ConeField default_field(const FlowSystem& s) {
  if (s.manifold.is_flat()) {
    return conefield::ConeField::constant(s.manifold,
                                          cones::Cone::orthant(s.dim()));
  }
  return conefield::ConeField::homogeneous_spd(s.manifold.order());
}

}  // namespace conedyn::systems
