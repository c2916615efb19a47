#pragma once

#include <string>
#include <vector>

#include "conedyn/linalg.hpp"

namespace conedyn::cones {

// Default tolerance on normalized containment margins.
inline constexpr double kDefaultTol = 1e-9;

enum class ConeKind { kOrthant, kPolyhedral, kLorentz, kPsd };

enum class Region { kOutside, kBoundary, kInterior };

struct Containment {
  Region region;
  // Normalized slack; positive inside, negative outside, 0 for the zero vector.
  double margin;
};

// A closed, convex, pointed, solid cone in R^dim.
//
// Lorentz(n) is {(t, x) : t >= |x|} with x in R^{n-1}. PSD(n) lives in the
// packed symmetric coordinates of linalg::pack, so dim = n(n+1)/2. Polyhedral
// cones carry both representations (generators and facet normals); facet
// normals are stored unit-length.
class Cone {
 public:
  static Cone orthant(int n);
  static Cone lorentz(int n);
  static Cone psd(int n);
  // Checks that every generator satisfies every facet inequality, that no
  // generator's negation lies in the cone and that the sum of generators is
  // an interior point.
  static Cone polyhedral(std::vector<Vec> generators,
                         std::vector<Vec> facet_normals);

  ConeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Matrix order for PSD, otherwise equal to dim().
  int order() const { return order_; }
  std::string name() const;

  // Unit interior point.
  const Vec& interior_witness() const { return witness_; }

  // Extreme rays for Orthant/Polyhedral; empty for Lorentz and PSD.
  const std::vector<Vec>& generators() const { return generators_; }
  // Unit facet normals for Orthant/Polyhedral; empty otherwise.
  const std::vector<Vec>& facet_normals() const { return facets_; }
  bool is_polyhedral() const {
    return kind_ == ConeKind::kOrthant || kind_ == ConeKind::kPolyhedral;
  }

  // Unit boundary rays. Polyhedral: the generators. Lorentz: (1, u)/sqrt(2)
  // with u a random unit vector. PSD: packed rank-one projectors.
  std::vector<Vec> boundary_rays(int count, Rng& rng) const;
  // Unit vector drawn from the interior.
  Vec random_interior(Rng& rng) const;

  bool operator==(const Cone& other) const;

 private:
  Cone() = default;

  ConeKind kind_ = ConeKind::kOrthant;
  int dim_ = 0;
  int order_ = 0;
  Vec witness_;
  std::vector<Vec> generators_;
  std::vector<Vec> facets_;
};

// Classifies v against the cone. Interior iff margin > tol, Outside iff
// margin < -tol. The zero vector is Boundary with margin 0.
Containment contains(const Cone& c, const Vec& v, double tol = kDefaultTol);

// Hilbert projective distance log(M/m) with M = inf{b : b v - u in C} and
// m = sup{a : u - a v in C}. +infinity if either vector is not interior.
double hilbert_distance(const Cone& c, const Vec& u, const Vec& v);

// Membership of lambda in the dual cone.
bool dual_contains(const Cone& c, const Vec& lambda);

}  // namespace conedyn::cones
