#pragma once

#include <functional>
#include <optional>

#include "conedyn/cones.hpp"
#include "conedyn/geometry.hpp"

namespace conedyn::conefield {

using geometry::ManifoldSpec;
using geometry::Point;

enum class FieldKind { kConstant, kHomogeneous };

// Linear map T_{x1}M -> T_{x2}M acting on chart vectors.
using TransportFn =
    std::function<Vec(const Point& x1, const Point& x2, const Vec& u)>;

// A cone field x -> C_M(x).
//
// Constant fields use the same cone at every point of a flat manifold.
// Homogeneous fields are defined by transporting a base cone at the base
// point o (the identity matrix on SPD(n)) with the manifold transport.
class ConeField {
 public:
  static ConeField constant(const ManifoldSpec& m, cones::Cone cone);
  // PSD cone transported by congruence over SPD(n).
  static ConeField homogeneous_spd(int n);

  // Returns a copy whose transport is replaced by `fn`. Used to build
  // deliberately inconsistent fields in tests.
  ConeField with_transport(TransportFn fn) const;

  FieldKind kind() const { return kind_; }
  const ManifoldSpec& manifold() const { return manifold_; }
  const cones::Cone& base_cone() const { return base_; }
  const Point& base_point() const { return base_point_; }

  // Transport used for invariance checks (manifold transport unless replaced).
  Vec transport(const Point& x1, const Point& x2, const Vec& u) const;

 private:
  ConeField(FieldKind kind, ManifoldSpec m, cones::Cone base, Point o)
      : kind_(kind),
        manifold_(m),
        base_(std::move(base)),
        base_point_(std::move(o)) {}

  FieldKind kind_;
  ManifoldSpec manifold_;
  cones::Cone base_;
  Point base_point_;
  std::optional<TransportFn> transport_override_;
};

// C_M(x) in chart coordinates.
cones::Cone cone_at(const ConeField& f, const Point& x);

// Containment of v in C_M(x), measured in the frame of the base point: for
// homogeneous fields v is first transported from x back to o, so the margin
// is independent of where x sits on the manifold. Regions agree with
// contains(cone_at(f, x), v) because transport maps the cones onto each other.
cones::Containment contains_at(const ConeField& f, const Point& x,
                               const Vec& v, double tol = cones::kDefaultTol);

struct GammaInvarianceReport {
  // Most negative containment margin of a transported boundary ray (0 when
  // every transported ray stays in the cone).
  double max_violation = 0.0;
  int samples = 0;
  int rays_checked = 0;
};

// Pushes generators and boundary rays of C_M(x1) through the field transport
// to random x2 and records the worst chart margin in C_M(x2).
GammaInvarianceReport check_gamma_invariance(const ConeField& f, int samples,
                                             std::uint64_t seed);

// Smooth interior section V(x): the unit interior witness of the base cone,
// transported to x.
Vec section(const ConeField& f, const Point& x);

}  // namespace conedyn::conefield
