#include "conedyn/geometry.hpp"

#include <cmath>

#include "conedyn/error.hpp"

namespace conedyn::geometry {

ManifoldSpec ManifoldSpec::euclidean(int n) {
  if (n < 1) throw InvalidArgument("Euclidean dimension must be >= 1");
  return ManifoldSpec(ManifoldKind::kEuclidean, n);
}

ManifoldSpec ManifoldSpec::spd(int n) {
  if (n < 1) throw InvalidArgument("SPD order must be >= 1");
  return ManifoldSpec(ManifoldKind::kSpd, n);
}

int ManifoldSpec::dim() const {
  return kind_ == ManifoldKind::kEuclidean ? order_
                                           : linalg::packed_size(order_);
}

std::string ManifoldSpec::name() const {
  return (kind_ == ManifoldKind::kEuclidean ? "Euclidean(" : "SPD(") +
         std::to_string(order_) + ")";
}

void validate(const ManifoldSpec& m, const Point& x) {
  if (x.coords.size() != m.dim()) {
    throw InvalidArgument("point has dimension " +
                          std::to_string(x.coords.size()) + ", expected " +
                          std::to_string(m.dim()) + " on " + m.name());
  }
  if (!x.coords.allFinite()) throw InvalidArgument("point is not finite");
  if (m.kind() == ManifoldKind::kSpd &&
      linalg::min_eigenvalue(linalg::unpack(x.coords)) <= kEigTol) {
    throw InvalidArgument("point is not positive definite");
  }
}

Mat as_matrix(const ManifoldSpec& m, const Point& x) {
  validate(m, x);
  return linalg::unpack(x.coords);
}

Point from_matrix(const ManifoldSpec& m, const Mat& p) {
  Point x{linalg::pack(p)};
  validate(m, x);
  return x;
}

namespace {

void check_tangent(const ManifoldSpec& m, const Point& x, const Tangent& u) {
  if (u.vec.size() != m.dim()) {
    throw InvalidArgument("tangent has dimension " +
                          std::to_string(u.vec.size()) + ", expected " +
                          std::to_string(m.dim()));
  }
  if (u.base.coords.size() != x.coords.size() ||
      (u.base.coords - x.coords).lpNorm<Eigen::Infinity>() != 0.0) {
    throw InvalidArgument("tangent base point does not match");
  }
}

double spd_inner(const Mat& p_inv, const Vec& u, const Vec& v) {
  const Mat a = p_inv * linalg::unpack(u);
  const Mat b = p_inv * linalg::unpack(v);
  return (a * b).trace();
}

}  // namespace

double metric_inner(const ManifoldSpec& m, const Point& x, const Tangent& u,
                    const Tangent& v) {
  validate(m, x);
  check_tangent(m, x, u);
  check_tangent(m, x, v);
  if (m.is_flat()) return u.vec.dot(v.vec);
  const Mat p_inv = linalg::unpack(x.coords).inverse();
  return spd_inner(p_inv, u.vec, v.vec);
}

double metric_norm(const ManifoldSpec& m, const Point& x, const Vec& v) {
  return std::sqrt(metric_inner(m, x, Tangent{x, v}, Tangent{x, v}));
}

Vec transport_vec(const ManifoldSpec& m, const Point& x1, const Point& x2,
                  const Vec& u) {
  validate(m, x1);
  validate(m, x2);
  if (u.size() != m.dim()) throw InvalidArgument("tangent dimension mismatch");
  if (m.is_flat()) return u;
  const Mat g = linalg::sym_sqrt(linalg::unpack(x2.coords), kEigTol) *
                linalg::sym_inv_sqrt(linalg::unpack(x1.coords), kEigTol);
  return linalg::pack(g * linalg::unpack(u) * g.transpose());
}

Tangent transport(const ManifoldSpec& m, const Point& x1, const Point& x2,
                  const Tangent& u) {
  check_tangent(m, x1, u);
  return Tangent{x2, transport_vec(m, x1, x2, u.vec)};
}

double distance(const ManifoldSpec& m, const Point& x, const Point& y) {
  validate(m, x);
  validate(m, y);
  if (m.is_flat()) return (x.coords - y.coords).norm();
  const Mat xi = linalg::sym_inv_sqrt(linalg::unpack(x.coords), kEigTol);
  const Mat inner = xi * linalg::unpack(y.coords) * xi;
  return linalg::sym_log(inner, 0.0).norm();
}

Box Box::cube(int dim, double lo, double hi) {
  return Box{Vec::Constant(dim, lo), Vec::Constant(dim, hi)};
}

Point sample_point(const ManifoldSpec& m, const Box& box, Rng& rng) {
  if (box.lo.size() != m.dim() || box.hi.size() != m.dim()) {
    throw InvalidArgument("sampling box dimension mismatch");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec s(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    s(i) = box.lo(i) + (box.hi(i) - box.lo(i)) * unit(rng);
  }
  if (m.is_flat()) return Point{s};
  return Point{linalg::pack(linalg::sym_exp(linalg::unpack(s)))};
}

}  // namespace conedyn::geometry
