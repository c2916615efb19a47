#include "conedyn/conefield.hpp"

#include <cmath>
#include <limits>

#include "conedyn/error.hpp"

namespace conedyn::conefield {

ConeField ConeField::constant(const ManifoldSpec& m, cones::Cone cone) {
  if (!m.is_flat()) {
    throw InvalidArgument("constant cone fields need a flat manifold");
  }
  if (cone.dim() != m.dim()) {
    throw InvalidArgument("cone dimension " + std::to_string(cone.dim()) +
                          " does not match manifold dimension " +
                          std::to_string(m.dim()));
  }
  return ConeField(FieldKind::kConstant, m, std::move(cone),
                   Point{Vec::Zero(m.dim())});
}

ConeField ConeField::homogeneous_spd(int n) {
  const auto m = ManifoldSpec::spd(n);
  return ConeField(FieldKind::kHomogeneous, m, cones::Cone::psd(n),
                   Point{linalg::pack(Mat::Identity(n, n))});
}

ConeField ConeField::with_transport(TransportFn fn) const {
  ConeField copy = *this;
  copy.transport_override_ = std::move(fn);
  return copy;
}

Vec ConeField::transport(const Point& x1, const Point& x2, const Vec& u) const {
  if (transport_override_) return (*transport_override_)(x1, x2, u);
  return geometry::transport_vec(manifold_, x1, x2, u);
}

cones::Cone cone_at(const ConeField& f, const Point& x) {
  geometry::validate(f.manifold(), x);
  // Congruence by an invertible matrix maps the PSD cone onto itself, so the
  // transported cone is the PSD cone again in chart coordinates.
  return f.base_cone();
}

cones::Containment contains_at(const ConeField& f, const Point& x,
                               const Vec& v, double tol) {
  geometry::validate(f.manifold(), x);
  if (f.kind() == FieldKind::kConstant) {
    return cones::contains(f.base_cone(), v, tol);
  }
  const Vec at_base =
      geometry::transport_vec(f.manifold(), x, f.base_point(), v);
  return cones::contains(f.base_cone(), at_base, tol);
}

GammaInvarianceReport check_gamma_invariance(const ConeField& f, int samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  const auto& m = f.manifold();
  const auto box = m.is_flat() ? geometry::Box::cube(m.dim(), -5.0, 5.0)
                               : geometry::Box::cube(m.dim(), -1.0, 1.0);
  GammaInvarianceReport report;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    Rng rng = linalg::rng_for(seed, static_cast<std::uint64_t>(k));
    const Point x1 = geometry::sample_point(m, box, rng);
    const Point x2 = geometry::sample_point(m, box, rng);
    const cones::Cone c1 = cone_at(f, x1);
    const cones::Cone c2 = cone_at(f, x2);
    for (const Vec& r : c1.boundary_rays(4, rng)) {
      const double margin = cones::contains(c2, f.transport(x1, x2, r)).margin;
      report.max_violation = std::min(report.max_violation, margin);
      ++report.rays_checked;
    }
  }
  return report;
}

Vec section(const ConeField& f, const Point& x) {
  geometry::validate(f.manifold(), x);
  const Vec& w = f.base_cone().interior_witness();
  if (f.kind() == FieldKind::kConstant) return w;
  return geometry::transport_vec(f.manifold(), f.base_point(), x, w);
}

}  // namespace conedyn::conefield
