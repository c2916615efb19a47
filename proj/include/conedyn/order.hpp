#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conedyn/conefield.hpp"
#include "conedyn/cones.hpp"

namespace conedyn::order {

using geometry::Point;

enum class Relation { kLeqStrict, kLeq, kIncomparable };

std::string to_string(Relation r);
inline bool is_leq(Relation r) { return r != Relation::kIncomparable; }

struct OrderVerdict {
  Relation relation = Relation::kIncomparable;
  // Conal polyline from x to y, empty when incomparable.
  std::vector<Vec> certificate;
};

// Flat conal order: classify y - x against the cone.
OrderVerdict leq_flat(const cones::Cone& c, const Point& x, const Point& y,
                      double tol = cones::kDefaultTol);

// Conal order of the homogeneous PSD field on SPD(n): the Loewner order.
OrderVerdict leq_loewner(int n, const Point& p, const Point& q,
                         double tol = cones::kDefaultTol);

// Every segment direction of the polyline lies in the cone within tol.
bool verify_certificate(const cones::Cone& c, const std::vector<Vec>& polyline,
                        double tol = cones::kDefaultTol);

// 1+1 Minkowski space, coordinates (t, x).
enum class FutureKind { kChronological, kCausal };

// Analytic predicate: Causal dt >= |dx|, Chronological dt > |dx|.
bool minkowski_in_future(const Vec& p, const Vec& q, FutureKind kind);
Relation minkowski_relation(const Vec& p, const Vec& q);

// Rectangle [t_lo, t_hi] x [x_lo, x_hi] sampled at resolution x resolution
// grid points (both endpoints included).
struct Region {
  double t_lo, t_hi, x_lo, x_hi;

  Vec node(int i, int j, int resolution) const;
  double diameter() const;
};

struct FutureSet {
  FutureKind kind = FutureKind::kCausal;
  Vec base;
  Region region{};
  int resolution = 0;
  // Row-major over (t index, x index).
  std::vector<std::uint8_t> members;

  bool at(int i, int j) const { return members[i * resolution + j] != 0; }
  int count() const;
};

FutureSet minkowski_future(const Vec& p, FutureKind kind, const Region& region,
                           int resolution);

// Normalized containment margin of a displacement at a point.
using LocalCone = std::function<double(const Vec& at, const Vec& step)>;

LocalCone minkowski_cone();
LocalCone field_cone(const conefield::ConeField& f);

// Breadth-first conal reachability from the grid node nearest p. A step to a
// neighbour is allowed when its displacement has margin >= -grid_slack, with
// grid_slack = half a cell diagonal / region diameter. `directions` selects
// the stencil: 8 (king moves) or 16 (adds the (1,2)/(2,1) knight moves).
FutureSet reachable_grid(const LocalCone& cone, const Vec& p,
                         const Region& region, int resolution, int directions);

// Fraction of grid nodes on which two sets agree.
double agreement(const FutureSet& a, const FutureSet& b);

// A strict/weak order query together with the cone used to build boundary
// pairs and interior shifts.
struct OrderOracle {
  std::string name;
  cones::Cone cone;
  std::function<Relation(const Vec&, const Vec&)> relate;
};

OrderOracle flat_oracle(const cones::Cone& c);
OrderOracle minkowski_oracle();

struct QuasiClosedReport {
  int sequences = 0;
  int violations = 0;
  // Sequences discarded because some x_n << y_n failed to hold.
  int unordered_sequences = 0;
};

// Builds limit pairs with y - x on the cone boundary (every tenth pair is the
// degenerate x = y), approximating sequences x_n = x - w/n, y_n = y + w/n with
// w the interior witness, and counts limits that are not ordered.
QuasiClosedReport quasi_closed_probe(const OrderOracle& oracle, int sequences,
                                     std::uint64_t seed, int steps = 20);

struct PushUpReport {
  int triples = 0;
  int violations = 0;
};

// Random Minkowski triples with x << y and y <= z; violations are triples
// where x << z fails.
PushUpReport push_up_probe(int triples, std::uint64_t seed);

enum class ContinuityKind { kInner, kOuter };

struct ContinuityReport {
  bool precondition_ok = true;
  std::string precondition_error;
  std::vector<double> deltas;
  std::vector<bool> passed;
  // Largest tested delta whose whole disc passes (0 when none).
  double largest_passing_delta = 0.0;

  bool passes(double delta) const;
};

// Inner: K must lie in I^-(p) and stay in I^-(q) for |q - p| < delta.
// Outer: K must avoid the closure of I^-(p) and keep avoiding it.
// q is scanned over circles of radius delta/4, delta/2, 3delta/4, delta at
// 64 angles each.
ContinuityReport continuity_probe(ContinuityKind kind, const Vec& p,
                                  const std::vector<Vec>& k,
                                  const std::vector<double>& deltas);

}  // namespace conedyn::order
