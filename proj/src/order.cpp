#include "conedyn/order.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>

#include "conedyn/error.hpp"

namespace conedyn::order {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::kLeqStrict:
      return "leq_strict";
    case Relation::kLeq:
      return "leq";
    case Relation::kIncomparable:
      return "incomparable";
  }
  return "incomparable";
}

namespace {

Relation classify(const cones::Containment& c) {
  switch (c.region) {
    case cones::Region::kInterior:
      return Relation::kLeqStrict;
    case cones::Region::kBoundary:
      return Relation::kLeq;
    case cones::Region::kOutside:
      return Relation::kIncomparable;
  }
  return Relation::kIncomparable;
}

}  // namespace

OrderVerdict leq_flat(const cones::Cone& c, const Point& x, const Point& y,
                      double tol) {
  if (x.coords.size() != c.dim() || y.coords.size() != c.dim()) {
    throw InvalidArgument("leq_flat: dimension mismatch");
  }
  OrderVerdict v;
  v.relation = classify(cones::contains(c, y.coords - x.coords, tol));
  if (is_leq(v.relation)) v.certificate = {x.coords, y.coords};
  return v;
}

OrderVerdict leq_loewner(int n, const Point& p, const Point& q, double tol) {
  const auto m = geometry::ManifoldSpec::spd(n);
  geometry::validate(m, p);
  geometry::validate(m, q);
  const auto c = cones::Cone::psd(n);
  OrderVerdict v;
  v.relation = classify(cones::contains(c, q.coords - p.coords, tol));
  if (is_leq(v.relation)) v.certificate = {p.coords, q.coords};
  return v;
}

bool verify_certificate(const cones::Cone& c, const std::vector<Vec>& polyline,
                        double tol) {
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    if (cones::contains(c, polyline[i + 1] - polyline[i], tol).region ==
        cones::Region::kOutside) {
      return false;
    }
  }
  return true;
}

bool minkowski_in_future(const Vec& p, const Vec& q, FutureKind kind) {
  if (p.size() != 2 || q.size() != 2) {
    throw InvalidArgument("Minkowski points are (t, x) pairs");
  }
  const double dt = q(0) - p(0);
  const double dx = std::abs(q(1) - p(1));
  const double eps = 1e-12 * (1.0 + std::abs(dt) + dx);
  return kind == FutureKind::kCausal ? dt - dx >= -eps : dt - dx > eps;
}

Relation minkowski_relation(const Vec& p, const Vec& q) {
  if (minkowski_in_future(p, q, FutureKind::kChronological)) return Relation::kLeqStrict;
  if (minkowski_in_future(p, q, FutureKind::kCausal)) return Relation::kLeq;
  return Relation::kIncomparable;
}

Vec Region::node(int i, int j, int resolution) const {
  Vec q(2);
  q(0) = t_lo + (t_hi - t_lo) * i / (resolution - 1);
  q(1) = x_lo + (x_hi - x_lo) * j / (resolution - 1);
  return q;
}

double Region::diameter() const { return std::hypot(t_hi - t_lo, x_hi - x_lo); }

int FutureSet::count() const {
  return static_cast<int>(std::count(members.begin(), members.end(), 1));
}

namespace {

void check_grid(const Region& r, int resolution) {
  if (resolution < 2) throw InvalidArgument("grid resolution must be >= 2");
  if (!(r.t_hi > r.t_lo) || !(r.x_hi > r.x_lo)) {
    throw InvalidArgument("degenerate region");
  }
}

}  // namespace

FutureSet minkowski_future(const Vec& p, FutureKind kind, const Region& region,
                           int resolution) {
  check_grid(region, resolution);
  FutureSet set{kind, p, region, resolution, {}};
  set.members.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      set.members[i * resolution + j] =
          minkowski_in_future(p, region.node(i, j, resolution), kind) ? 1 : 0;
  return set;
}

LocalCone minkowski_cone() {
  return [](const Vec&, const Vec& step) {
    return (step(0) - std::abs(step(1))) / step.norm();
  };
}

LocalCone field_cone(const conefield::ConeField& f) {
  return [f](const Vec& at, const Vec& step) {
    return conefield::contains_at(f, Point{at}, step, 0.0).margin;
  };
}

FutureSet reachable_grid(const LocalCone& cone, const Vec& p,
                         const Region& region, int resolution, int directions) {
  check_grid(region, resolution);
  if (directions < 8) throw InvalidArgument("reachable_grid: directions must be >= 8");
  FutureSet set{FutureKind::kCausal, p, region, resolution, {}};
  const auto n = static_cast<std::size_t>(resolution);
  set.members.assign(n * n, 0);

  const double ht = (region.t_hi - region.t_lo) / (resolution - 1);
  const double hx = (region.x_hi - region.x_lo) / (resolution - 1);
  const double slack = 0.5 * std::hypot(ht, hx) / region.diameter();

  // Primitive integer steps of growing Chebyshev radius until the stencil has
  // at least `directions` entries (8, 16, 32, ...).
  std::vector<std::pair<int, int>> stencil;
  for (int radius = 1; static_cast<int>(stencil.size()) < directions; ++radius) {
    for (int a = -radius; a <= radius; ++a)
      for (int b = -radius; b <= radius; ++b)
        if (std::max(std::abs(a), std::abs(b)) == radius &&
            std::gcd(std::abs(a), std::abs(b)) == 1)
          stencil.emplace_back(a, b);
  }

  const double fi = (p(0) - region.t_lo) / ht;
  const double fj = (p(1) - region.x_lo) / hx;
  if (fi < -0.5 || fj < -0.5 || fi > resolution - 0.5 || fj > resolution - 0.5) {
    return set;
  }
  const int i0 = std::clamp(static_cast<int>(std::lround(fi)), 0, resolution - 1);
  const int j0 = std::clamp(static_cast<int>(std::lround(fj)), 0, resolution - 1);
  std::deque<std::pair<int, int>> queue{{i0, j0}};
  set.members[i0 * n + j0] = 1;
  Vec step(2);
  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    const Vec at = region.node(i, j, resolution);
    for (const auto& [a, b] : stencil) {
      const int ni = i + a;
      const int nj = j + b;
      if (ni < 0 || nj < 0 || ni >= resolution || nj >= resolution) continue;
      auto& cell = set.members[ni * n + nj];
      if (cell) continue;
      step << a * ht, b * hx;
      if (cone(at, step) >= -slack) {
        cell = 1;
        queue.emplace_back(ni, nj);
      }
    }
  }
  return set;
}

double agreement(const FutureSet& a, const FutureSet& b) {
  if (a.resolution != b.resolution || a.members.size() != b.members.size()) {
    throw InvalidArgument("agreement: grids differ");
  }
  std::size_t same = 0;
  for (std::size_t k = 0; k < a.members.size(); ++k)
    same += a.members[k] == b.members[k] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.members.size());
}

OrderOracle flat_oracle(const cones::Cone& c) {
  return OrderOracle{"flat:" + c.name(), c, [c](const Vec& x, const Vec& y) {
                       return leq_flat(c, Point{x}, Point{y}).relation;
                     }};
}

OrderOracle minkowski_oracle() {
  return OrderOracle{"minkowski", cones::Cone::lorentz(2), minkowski_relation};
}

QuasiClosedReport quasi_closed_probe(const OrderOracle& oracle, int sequences,
                                     std::uint64_t seed, int steps) {
  if (sequences < 1 || steps < 1) throw InvalidArgument("quasi_closed_probe: bad counts");
  const cones::Cone& c = oracle.cone;
  const Vec w = c.interior_witness();
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> length(0.05, 1.0);
  QuasiClosedReport rep;
  rep.sequences = sequences;
  for (int k = 0; k < sequences; ++k) {
    Rng rng = linalg::rng_for(seed, static_cast<std::uint64_t>(k));
    Vec x(c.dim());
    for (int i = 0; i < c.dim(); ++i) x(i) = coord(rng);
    Vec y = x;
    if (k % 10 != 0) {
      const auto rays = c.boundary_rays(1, rng);
      std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
      y = x + length(rng) * rays[pick(rng)];
    }
    bool strict = true;
    for (int n = 1; n <= steps && strict; ++n) {
      strict = oracle.relate(x - w / n, y + w / n) == Relation::kLeqStrict;
    }
    if (!strict) {
      ++rep.unordered_sequences;
      continue;
    }
    if (!is_leq(oracle.relate(x, y))) ++rep.violations;
  }
  return rep;
}

PushUpReport push_up_probe(int triples, std::uint64_t seed) {
  const auto c = cones::Cone::lorentz(2);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> length(0.05, 1.0);
  PushUpReport rep;
  for (int k = 0; k < triples; ++k) {
    Rng rng = linalg::rng_for(seed, static_cast<std::uint64_t>(k));
    Vec x(2);
    x << coord(rng), coord(rng);
    const Vec y = x + length(rng) * c.random_interior(rng);
    Vec z = y;
    if (k % 3 == 0) {
      z = y + length(rng) * c.boundary_rays(1, rng).front();
    } else if (k % 3 == 1) {
      z = y + length(rng) * c.random_interior(rng);
    }
    if (minkowski_relation(x, y) != Relation::kLeqStrict ||
        !is_leq(minkowski_relation(y, z))) {
      continue;
    }
    ++rep.triples;
    if (minkowski_relation(x, z) != Relation::kLeqStrict) ++rep.violations;
  }
  return rep;
}

bool ContinuityReport::passes(double delta) const {
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (deltas[i] == delta) return passed[i];
  return false;
}

ContinuityReport continuity_probe(ContinuityKind kind, const Vec& p,
                                  const std::vector<Vec>& k,
                                  const std::vector<double>& deltas) {
  // k in I^-(q)  <=>  q in I^+(k); closure(I^-(q)) = J^-(q).
  const auto holds = [&](const Vec& q) {
    for (const Vec& point : k) {
      const bool ok =
          kind == ContinuityKind::kInner
              ? minkowski_in_future(point, q, FutureKind::kChronological)
              : !minkowski_in_future(point, q, FutureKind::kCausal);
      if (!ok) return false;
    }
    return true;
  };
  ContinuityReport rep;
  rep.deltas = deltas;
  rep.passed.assign(deltas.size(), false);
  if (!holds(p)) {
    rep.precondition_ok = false;
    rep.precondition_error =
        kind == ContinuityKind::kInner
            ? "K is not contained in the chronological past of p"
            : "K meets the closure of the chronological past of p";
    return rep;
  }
  constexpr int kAngles = 64;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    bool ok = true;
    for (int ring = 1; ring <= 4 && ok; ++ring) {
      const double r = deltas[d] * ring / 4.0;
      for (int a = 0; a < kAngles && ok; ++a) {
        const double theta = 2.0 * std::numbers::pi * a / kAngles;
        Vec q(2);
        q << p(0) + r * std::cos(theta), p(1) + r * std::sin(theta);
        ok = holds(q);
      }
    }
    rep.passed[d] = ok;
    if (ok) rep.largest_passing_delta = std::max(rep.largest_passing_delta, deltas[d]);
  }
  return rep;
}

}  // namespace conedyn::order
