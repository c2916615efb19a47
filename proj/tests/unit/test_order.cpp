#include <doctest.h>

#include <cmath>

#include "conedyn/error.hpp"
#include "conedyn/order.hpp"

using namespace conedyn;
using cones::Cone;
using order::FutureKind;
using order::Relation;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

const order::Region kRegion{0.0, 2.0, -2.0, 2.0};

}  // namespace

TEST_CASE("leq_flat examples") {
  const auto a = order::leq_flat(Cone::orthant(2), {v2(0, 0)}, {v2(1, 2)});
  CHECK(a.relation == Relation::kLeqStrict);
  CHECK(order::verify_certificate(Cone::orthant(2), a.certificate));
  CHECK(order::leq_flat(Cone::orthant(2), {v2(1, 1)}, {v2(1, 1)}).relation == Relation::kLeq);
  CHECK(order::leq_flat(Cone::orthant(2), {v2(0, 0)}, {v2(1, 0)}).relation == Relation::kLeq);
  const auto c = order::leq_flat(Cone::lorentz(2), {v2(0, 0)}, {v2(1, 2)});
  CHECK(c.relation == Relation::kIncomparable);
  CHECK(c.certificate.empty());
  CHECK_THROWS_AS(order::leq_flat(Cone::orthant(3), {v2(0, 0)}, {v2(1, 2)}), InvalidArgument);
}

TEST_CASE("certificates fail outside the cone") {
  CHECK_FALSE(order::verify_certificate(Cone::orthant(2), {v2(0, 0), v2(1, 1), v2(0, 2)}));
  CHECK(order::verify_certificate(Cone::orthant(2), {v2(0, 0), v2(1, 0), v2(1, 3)}));
}

TEST_CASE("Loewner order") {
  Mat p = Mat::Identity(2, 2), q(2, 2);
  q << 2, 0.5, 0.5, 2;
  CHECK(order::leq_loewner(2, {linalg::pack(p)}, {linalg::pack(q)}).relation == Relation::kLeqStrict);
  CHECK(order::leq_loewner(2, {linalg::pack(q)}, {linalg::pack(p)}).relation == Relation::kIncomparable);
  q << 2, 0, 0, 1;
  CHECK(order::leq_loewner(2, {linalg::pack(p)}, {linalg::pack(q)}).relation == Relation::kLeq);
}

TEST_CASE("minkowski_future predicate examples") {
  const Vec o = v2(0, 0);
  CHECK(order::minkowski_in_future(o, v2(2, 1), FutureKind::kCausal));
  CHECK(order::minkowski_in_future(o, v2(2, 1), FutureKind::kChronological));
  CHECK(order::minkowski_in_future(o, v2(1, 1), FutureKind::kCausal));
  CHECK_FALSE(order::minkowski_in_future(o, v2(1, 1), FutureKind::kChronological));
  CHECK_FALSE(order::minkowski_in_future(o, v2(0, 1), FutureKind::kCausal));
  CHECK_FALSE(order::minkowski_in_future(o, v2(0, 1), FutureKind::kChronological));
}

TEST_CASE("chronological future is inside the causal future") {
  const auto chrono = order::minkowski_future(v2(0, 0), FutureKind::kChronological, kRegion, 51);
  const auto causal = order::minkowski_future(v2(0, 0), FutureKind::kCausal, kRegion, 51);
  for (int i = 0; i < 51; ++i)
    for (int j = 0; j < 51; ++j)
      if (chrono.at(i, j)) CHECK(causal.at(i, j));
  CHECK(chrono.count() < causal.count());
  CHECK_THROWS_AS(order::minkowski_future(v2(0, 0), FutureKind::kCausal, kRegion, 1), InvalidArgument);
  CHECK_THROWS_AS(order::minkowski_future(v2(0, 0), FutureKind::kCausal, {0, 0, -1, 1}, 5), InvalidArgument);
}

TEST_CASE("reachable_grid matches the analytic causal future") {
  const auto exact = order::minkowski_future(v2(0, 0), FutureKind::kCausal, kRegion, 101);
  const auto grid = order::reachable_grid(order::minkowski_cone(), v2(0, 0), kRegion, 101, 16);
  CHECK(order::agreement(grid, exact) >= 0.99);

  const auto lorentz = order::field_cone(
      conefield::ConeField::constant(geometry::ManifoldSpec::euclidean(2), Cone::lorentz(2)));
  const auto grid2 = order::reachable_grid(lorentz, v2(0, 0), kRegion, 101, 16);
  CHECK(order::agreement(grid, grid2) == 1.0);
}

TEST_CASE("reachable_grid on the orthant fills the quadrant from the corner") {
  const order::Region box{-1, 1, -1, 1};
  const auto cone = order::field_cone(
      conefield::ConeField::constant(geometry::ManifoldSpec::euclidean(2), Cone::orthant(2)));
  const auto grid = order::reachable_grid(cone, v2(-1, -1), box, 21, 8);
  CHECK(grid.count() == 21 * 21);
  CHECK_THROWS_AS(order::reachable_grid(cone, v2(-1, -1), box, 21, 4), InvalidArgument);
}

TEST_CASE("quasi_closed_probe examples") {
  const auto flat = order::quasi_closed_probe(order::flat_oracle(Cone::orthant(2)), 200, 0);
  CHECK(flat.violations == 0);
  CHECK(flat.unordered_sequences == 0);
  const auto mink = order::quasi_closed_probe(order::minkowski_oracle(), 200, 0);
  CHECK(mink.violations == 0);
  // The null pair (0,0) -> (1,1) approximated from inside the cone.
  const Vec w = Cone::lorentz(2).interior_witness();
  for (int n = 1; n <= 50; ++n) {
    CHECK(order::minkowski_relation(v2(0, 0) - w / n, v2(1, 1) + w / n) == Relation::kLeqStrict);
  }
  CHECK(order::is_leq(order::minkowski_relation(v2(0, 0), v2(1, 1))));
}

TEST_CASE("push-up") {
  const auto rep = order::push_up_probe(1000, 0);
  CHECK(rep.triples == 1000);
  CHECK(rep.violations == 0);
}

TEST_CASE("continuity_probe examples") {
  const std::vector<double> deltas = {0.25, 0.5, 1.0};
  const auto inner = order::continuity_probe(order::ContinuityKind::kInner, v2(0, 0), {v2(-2, 0)}, deltas);
  CHECK(inner.precondition_ok);
  CHECK(inner.passes(0.5));
  const auto outer = order::continuity_probe(order::ContinuityKind::kOuter, v2(0, 0), {v2(0, 3)}, deltas);
  CHECK(outer.precondition_ok);
  CHECK(outer.passes(0.5));
  const auto empty = order::continuity_probe(order::ContinuityKind::kInner, v2(0, 0), {}, deltas);
  for (double d : deltas) CHECK(empty.passes(d));
  const auto bad = order::continuity_probe(order::ContinuityKind::kInner, v2(0, 0), {v2(0, 3)}, deltas);
  CHECK_FALSE(bad.precondition_ok);
  CHECK_FALSE(bad.precondition_error.empty());
  // A point close to the light cone stops passing for large deltas.
  const auto near = order::continuity_probe(order::ContinuityKind::kInner, v2(0, 0), {v2(-1, 0.8)}, deltas);
  CHECK(near.passes(0.25) == false);
}

TEST_CASE("openness, antisymmetry and transitivity of the flat order") {
  Rng rng(3);
  std::normal_distribution<double> g;
  for (const Cone& c : {Cone::orthant(2), Cone::lorentz(3)}) {
    const int d = c.dim();
    auto random_vec = [&] {
      Vec v(d);
      for (int i = 0; i < d; ++i) v(i) = g(rng);
      return v;
    };
    for (int k = 0; k < 100; ++k) {
      const Vec x = random_vec();
      const Vec y = x + c.random_interior(rng);
      const double margin = cones::contains(c, y - x).margin;
      const double r = 0.1 * margin * (y - x).norm();
      const Vec dx = random_vec().normalized() * r / 2.0;
      const Vec dy = random_vec().normalized() * r / 2.0;
      CHECK(order::leq_flat(c, {x + dx}, {y + dy}).relation == Relation::kLeqStrict);
    }
    for (int k = 0; k < 1000; ++k) {
      const Vec x = random_vec();
      const Vec y = x + (k % 2 ? c.random_interior(rng) : c.boundary_rays(1, rng).front());
      const Vec z = y + c.random_interior(rng);
      CHECK(order::is_leq(order::leq_flat(c, {x}, {z}).relation));
      const auto back = order::leq_flat(c, {y}, {x});
      if (back.relation != Relation::kIncomparable) CHECK((x - y).norm() < 1e-12);
    }
  }
}
