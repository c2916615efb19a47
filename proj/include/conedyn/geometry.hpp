#pragma once

#include <string>

#include "conedyn/linalg.hpp"

namespace conedyn::geometry {

// Positive-definiteness threshold for SPD points.
inline constexpr double kEigTol = 1e-10;

enum class ManifoldKind { kEuclidean, kSpd };

// A manifold with a single global chart. Euclidean(n) uses the identity chart;
// SPD(n) uses packed symmetric matrices (see linalg::pack).
class ManifoldSpec {
 public:
  static ManifoldSpec euclidean(int n);
  static ManifoldSpec spd(int n);

  ManifoldKind kind() const { return kind_; }
  // Matrix order for SPD, ambient dimension for Euclidean.
  int order() const { return order_; }
  // Intrinsic (= chart) dimension.
  int dim() const;
  bool is_flat() const { return kind_ == ManifoldKind::kEuclidean; }
  std::string name() const;

  bool operator==(const ManifoldSpec&) const = default;

 private:
  ManifoldSpec(ManifoldKind kind, int order) : kind_(kind), order_(order) {}

  ManifoldKind kind_;
  int order_;
};

struct Point {
  Vec coords;
};

struct Tangent {
  Point base;
  Vec vec;
};

// Throws InvalidArgument if x has the wrong dimension or (SPD) is not
// positive definite.
void validate(const ManifoldSpec& m, const Point& x);

// Convenience for SPD points: the point as a symmetric matrix.
Mat as_matrix(const ManifoldSpec& m, const Point& x);
Point from_matrix(const ManifoldSpec& m, const Mat& p);

double metric_inner(const ManifoldSpec& m, const Point& x, const Tangent& u,
                    const Tangent& v);
double metric_norm(const ManifoldSpec& m, const Point& x, const Vec& v);

// The metric-preserving, cone-preserving linear map from T_{x1}M to T_{x2}M.
// Euclidean: identity. SPD: U -> G U G^T with G = x2^{1/2} x1^{-1/2}.
Tangent transport(const ManifoldSpec& m, const Point& x1, const Point& x2,
                  const Tangent& u);

// Same as transport() on raw chart vectors.
Vec transport_vec(const ManifoldSpec& m, const Point& x1, const Point& x2,
                  const Vec& u);

double distance(const ManifoldSpec& m, const Point& x, const Point& y);

// Axis-aligned box in chart coordinates (Euclidean) or in the packed
// symmetric tangent space at the identity (SPD; points are exp of samples).
struct Box {
  Vec lo;
  Vec hi;

  static Box cube(int dim, double lo, double hi);
};

Point sample_point(const ManifoldSpec& m, const Box& box, Rng& rng);

}  // namespace conedyn::geometry
