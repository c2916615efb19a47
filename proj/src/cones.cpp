#include "conedyn/cones.hpp"

#include <cmath>
#include <limits>

#include "conedyn/error.hpp"

namespace conedyn::cones {

namespace {

constexpr double kFacetSlack = 1e-12;

void check_dim(const Cone& c, const Vec& v, const char* what) {
  if (v.size() != c.dim()) {
    throw InvalidArgument(std::string(what) + ": vector has dimension " +
                          std::to_string(v.size()) + ", cone " + c.name() +
                          " has dimension " + std::to_string(c.dim()));
  }
}

Vec unit(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

Vec random_unit(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec u(n);
  do {
    for (int i = 0; i < n; ++i) u(i) = normal(rng);
  } while (u.norm() < 1e-8);
  return u.normalized();
}

// Raw normalized slack without region classification.
double margin_of(const Cone& c, const Vec& v) {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  switch (c.kind()) {
    case ConeKind::kOrthant:
      return v.minCoeff() / norm;
    case ConeKind::kLorentz:
      return (v(0) - v.tail(v.size() - 1).norm()) / norm;
    case ConeKind::kPolyhedral: {
      double m = std::numeric_limits<double>::infinity();
      for (const Vec& lambda : c.facet_normals()) m = std::min(m, lambda.dot(v));
      return m / norm;
    }
    case ConeKind::kPsd:
      // packed norm == Frobenius norm
      return linalg::min_eigenvalue(linalg::unpack(v)) / norm;
  }
  return 0.0;
}

bool in_cone(const Cone& c, const Vec& v) { return margin_of(c, v) >= 0.0; }

// Largest a with in(a) true, given in(0) true and in(a) false for large a.
template <class In>
double bisect_sup(In in) {
  double lo = 0.0;
  double hi = 1.0;
  while (in(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericFailure("hilbert_distance: unbounded ratio");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (in(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Smallest b with in(b) true, given in(0) false and in(b) true for large b.
template <class In>
double bisect_inf(In in) {
  double lo = 0.0;
  double hi = 1.0;
  while (!in(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericFailure("hilbert_distance: unbounded ratio");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (in(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Cone Cone::orthant(int n) {
  if (n < 1) throw InvalidArgument("orthant dimension must be >= 1");
  Cone c;
  c.kind_ = ConeKind::kOrthant;
  c.dim_ = c.order_ = n;
  c.witness_ = Vec::Ones(n).normalized();
  for (int i = 0; i < n; ++i) {
    c.generators_.push_back(unit(n, i));
    c.facets_.push_back(unit(n, i));
  }
  return c;
}

Cone Cone::lorentz(int n) {
  if (n < 2) throw InvalidArgument("Lorentz cone needs dimension >= 2");
  Cone c;
  c.kind_ = ConeKind::kLorentz;
  c.dim_ = c.order_ = n;
  c.witness_ = unit(n, 0);
  return c;
}

Cone Cone::psd(int n) {
  if (n < 1) throw InvalidArgument("PSD order must be >= 1");
  Cone c;
  c.kind_ = ConeKind::kPsd;
  c.order_ = n;
  c.dim_ = linalg::packed_size(n);
  c.witness_ = linalg::pack(Mat::Identity(n, n)).normalized();
  return c;
}

Cone Cone::polyhedral(std::vector<Vec> generators,
                      std::vector<Vec> facet_normals) {
  if (generators.empty() || facet_normals.empty()) {
    throw InvalidArgument("polyhedral cone needs generators and facet normals");
  }
  const auto n = generators.front().size();
  if (n < 1) throw InvalidArgument("polyhedral cone dimension must be >= 1");
  Cone c;
  c.kind_ = ConeKind::kPolyhedral;
  c.dim_ = c.order_ = static_cast<int>(n);
  for (Vec& g : generators) {
    if (g.size() != n) throw InvalidArgument("generator dimension mismatch");
    if (g.norm() == 0.0) throw InvalidArgument("zero generator");
    c.generators_.push_back(g.normalized());
  }
  for (Vec& lambda : facet_normals) {
    if (lambda.size() != n) throw InvalidArgument("facet normal dimension mismatch");
    if (lambda.norm() == 0.0) throw InvalidArgument("zero facet normal");
    c.facets_.push_back(lambda.normalized());
  }
  for (std::size_t i = 0; i < c.generators_.size(); ++i) {
    for (std::size_t k = 0; k < c.facets_.size(); ++k) {
      if (c.facets_[k].dot(c.generators_[i]) < -kFacetSlack) {
        throw InvalidArgument("generator " + std::to_string(i) +
                              " violates facet " + std::to_string(k));
      }
    }
  }
  for (std::size_t i = 0; i < c.generators_.size(); ++i) {
    if (margin_of(c, -c.generators_[i]) >= -kFacetSlack) {
      throw InvalidArgument("cone is not pointed: -generator " +
                            std::to_string(i) + " lies in the cone");
    }
  }
  Vec w = Vec::Zero(n);
  for (const Vec& g : c.generators_) w += g;
  if (w.norm() == 0.0 || margin_of(c, w) <= kFacetSlack) {
    throw InvalidArgument("cone is not solid: generator sum is not interior");
  }
  c.witness_ = w.normalized();
  return c;
}

std::string Cone::name() const {
  switch (kind_) {
    case ConeKind::kOrthant:
      return "orthant(" + std::to_string(dim_) + ")";
    case ConeKind::kLorentz:
      return "lorentz(" + std::to_string(dim_) + ")";
    case ConeKind::kPsd:
      return "psd(" + std::to_string(order_) + ")";
    case ConeKind::kPolyhedral:
      return "polyhedral(" + std::to_string(dim_) + ", " +
             std::to_string(generators_.size()) + " generators)";
  }
  return "cone";
}

std::vector<Vec> Cone::boundary_rays(int count, Rng& rng) const {
  if (is_polyhedral()) return generators_;
  std::vector<Vec> rays;
  for (int k = 0; k < count; ++k) {
    if (kind_ == ConeKind::kLorentz) {
      Vec r(dim_);
      r(0) = 1.0;
      r.tail(dim_ - 1) = random_unit(dim_ - 1, rng);
      rays.push_back(r / std::sqrt(2.0));
    } else {
      const Vec u = random_unit(order_, rng);
      rays.push_back(linalg::pack(u * u.transpose()));
    }
  }
  return rays;
}

Vec Cone::random_interior(Rng& rng) const {
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  Vec v;
  switch (kind_) {
    case ConeKind::kOrthant:
    case ConeKind::kPolyhedral:
      v = Vec::Zero(dim_);
      for (const Vec& g : generators_) v += weight(rng) * g;
      break;
    case ConeKind::kLorentz: {
      std::uniform_real_distribution<double> radius(0.0, 0.95);
      v = Vec(dim_);
      v(0) = 1.0;
      v.tail(dim_ - 1) = radius(rng) * random_unit(dim_ - 1, rng);
      break;
    }
    case ConeKind::kPsd: {
      std::normal_distribution<double> normal(0.0, 1.0);
      Mat b(order_, order_);
      for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) b(i, j) = normal(rng);
      v = linalg::pack(b * b.transpose() + 0.05 * Mat::Identity(order_, order_));
      break;
    }
  }
  return v.normalized();
}

bool Cone::operator==(const Cone& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_ || order_ != other.order_ ||
      generators_.size() != other.generators_.size() ||
      facets_.size() != other.facets_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] != other.generators_[i]) return false;
  for (std::size_t i = 0; i < facets_.size(); ++i)
    if (facets_[i] != other.facets_[i]) return false;
  return true;
}

Containment contains(const Cone& c, const Vec& v, double tol) {
  check_dim(c, v, "contains");
  if (tol < 0.0) throw InvalidArgument("contains: negative tolerance");
  const double m = margin_of(c, v);
  if (v.norm() == 0.0) return {Region::kBoundary, 0.0};
  if (m > tol) return {Region::kInterior, m};
  if (m < -tol) return {Region::kOutside, m};
  return {Region::kBoundary, m};
}

double hilbert_distance(const Cone& c, const Vec& u, const Vec& v) {
  check_dim(c, u, "hilbert_distance");
  check_dim(c, v, "hilbert_distance");
  if (u.norm() == 0.0 || v.norm() == 0.0) {
    throw InvalidArgument("hilbert_distance: zero vector");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (contains(c, u, 0.0).region != Region::kInterior ||
      contains(c, v, 0.0).region != Region::kInterior) {
    return kInf;
  }
  double hi = 0.0;
  double lo = 0.0;
  switch (c.kind()) {
    case ConeKind::kOrthant: {
      const Vec r = u.cwiseQuotient(v);
      hi = r.maxCoeff();
      lo = r.minCoeff();
      break;
    }
    case ConeKind::kPolyhedral: {
      hi = -kInf;
      lo = kInf;
      for (const Vec& lambda : c.facet_normals()) {
        const double r = lambda.dot(u) / lambda.dot(v);
        hi = std::max(hi, r);
        lo = std::min(lo, r);
      }
      break;
    }
    case ConeKind::kPsd: {
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(
          linalg::unpack(u), linalg::unpack(v), Eigen::EigenvaluesOnly);
      hi = es.eigenvalues().maxCoeff();
      lo = es.eigenvalues().minCoeff();
      break;
    }
    case ConeKind::kLorentz: {
      lo = bisect_sup([&](double a) { return in_cone(c, u - a * v); });
      hi = bisect_inf([&](double b) { return in_cone(c, b * v - u); });
      break;
    }
  }
  return std::max(0.0, std::log(hi / lo));
}

bool dual_contains(const Cone& c, const Vec& lambda) {
  check_dim(c, lambda, "dual_contains");
  switch (c.kind()) {
    case ConeKind::kOrthant:
      return lambda.minCoeff() >= 0.0;
    case ConeKind::kPolyhedral:
      for (const Vec& g : c.generators())
        if (lambda.dot(g) < -kFacetSlack) return false;
      return true;
    case ConeKind::kLorentz:
      return lambda(0) - lambda.tail(lambda.size() - 1).norm() >=
             -kFacetSlack * lambda.norm();
    case ConeKind::kPsd:
      return linalg::min_eigenvalue(linalg::unpack(lambda)) >=
             -kFacetSlack * lambda.norm();
  }
  return false;
}

}  // namespace conedyn::cones
