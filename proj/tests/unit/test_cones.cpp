#include <doctest.h>

#include <cmath>
#include <limits>

#include "conedyn/cones.hpp"
#include "conedyn/error.hpp"

using namespace conedyn;
using cones::Cone;
using cones::Region;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Cone wedge_2d() {
  // Same set as Lorentz(2): generators (1,1), (1,-1).
  const double r = 1.0 / std::sqrt(2.0);
  return Cone::polyhedral({v2(1, 1), v2(1, -1)}, {v2(r, r), v2(r, -r)});
}

Vec random_interior(const Cone& c, Rng& rng) { return c.random_interior(rng); }

}  // namespace

TEST_CASE("contains examples") {
  const auto a = cones::contains(Cone::orthant(2), v2(1, 1), 1e-9);
  CHECK(a.region == Region::kInterior);
  CHECK(a.margin == doctest::Approx(1 / std::sqrt(2.0)));
  const auto b = cones::contains(Cone::lorentz(2), v2(2, 1));
  CHECK(b.region == Region::kInterior);
  CHECK(b.margin == doctest::Approx(1 / std::sqrt(5.0)));
  const auto c = cones::contains(Cone::orthant(2), v2(1, -1));
  CHECK(c.region == Region::kOutside);
  CHECK(c.margin == doctest::Approx(-1 / std::sqrt(2.0)));
  const auto z = cones::contains(Cone::lorentz(3), Vec::Zero(3));
  CHECK(z.region == Region::kBoundary);
  CHECK(z.margin == 0.0);
}

TEST_CASE("contains on PSD uses lambda_min over Frobenius norm") {
  Mat m(2, 2);
  m << 2, 0, 0, 1;
  const auto r = cones::contains(Cone::psd(2), linalg::pack(m));
  CHECK(r.region == Region::kInterior);
  CHECK(r.margin == doctest::Approx(1 / std::sqrt(5.0)));
  m << 1, 1, 1, 1;
  CHECK(cones::contains(Cone::psd(2), linalg::pack(m)).region == Region::kBoundary);
  m << 1, 2, 2, 1;
  CHECK(cones::contains(Cone::psd(2), linalg::pack(m)).region == Region::kOutside);
}

TEST_CASE("contains rejects dimension mismatch and negative tol") {
  CHECK_THROWS_AS(cones::contains(Cone::orthant(3), v2(1, 1)), InvalidArgument);
  CHECK_THROWS_AS(cones::contains(Cone::orthant(2), v2(1, 1), -1.0), InvalidArgument);
}

TEST_CASE("hilbert_distance examples") {
  CHECK(cones::hilbert_distance(Cone::orthant(2), v2(1, 1), v2(2, 1)) ==
        doctest::Approx(std::log(2.0)));
  Rng rng(1);
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(3), Cone::psd(2), wedge_2d()}) {
    const Vec v = c.random_interior(rng);
    CHECK(cones::hilbert_distance(c, 3 * v, v) < 1e-9);
  }
  const double lor = cones::hilbert_distance(Cone::lorentz(2), v2(2, 1), v2(2, -1));
  const double poly = cones::hilbert_distance(wedge_2d(), v2(2, 1), v2(2, -1));
  CHECK(std::abs(lor - poly) < 1e-9);
  CHECK(lor == doctest::Approx(2 * std::log(3.0)));
}

TEST_CASE("hilbert_distance on PSD uses generalized eigenvalues") {
  Mat u(2, 2), v(2, 2);
  u << 4, 0, 0, 1;
  v = Mat::Identity(2, 2);
  CHECK(cones::hilbert_distance(Cone::psd(2), linalg::pack(u), linalg::pack(v)) ==
        doctest::Approx(std::log(4.0)));
}

TEST_CASE("hilbert_distance is infinite off the interior and rejects zero") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(cones::hilbert_distance(Cone::orthant(2), v2(1, 0), v2(1, 1)) == inf);
  CHECK(cones::hilbert_distance(Cone::lorentz(2), v2(1, 1), v2(2, 1)) == inf);
  CHECK_THROWS_AS(cones::hilbert_distance(Cone::orthant(2), v2(0, 0), v2(1, 1)), InvalidArgument);
}

TEST_CASE("hilbert_distance properties on random interior vectors") {
  Rng rng(7);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(3), Cone::psd(2), wedge_2d()}) {
    for (int k = 0; k < 200; ++k) {
      const Vec u = random_interior(c, rng);
      const Vec v = random_interior(c, rng);
      const Vec w = random_interior(c, rng);
      const double duv = cones::hilbert_distance(c, u, v);
      CHECK(std::abs(cones::hilbert_distance(c, v, u) - duv) < 1e-9);
      CHECK(std::abs(cones::hilbert_distance(c, scale(rng) * u, scale(rng) * v) - duv) < 1e-9);
      CHECK(cones::hilbert_distance(c, u, w) <=
            duv + cones::hilbert_distance(c, v, w) + 1e-9);
    }
  }
}

TEST_CASE("dual_contains examples") {
  Vec l(3);
  l << 1, 0, 2;
  CHECK(cones::dual_contains(Cone::orthant(3), l));
  CHECK(cones::dual_contains(Cone::lorentz(2), v2(1, -1)));
  CHECK_FALSE(cones::dual_contains(Cone::lorentz(2), v2(1, -2)));
  const Cone c = Cone::polyhedral({v2(1, 0), v2(1, 1)}, {v2(0, 1), v2(1, -1) / std::sqrt(2.0)});
  CHECK_FALSE(cones::dual_contains(c, v2(0, -1)));
  CHECK(cones::dual_contains(c, v2(1, 0)));
  CHECK_THROWS_AS(cones::dual_contains(Cone::orthant(3), v2(1, 1)), InvalidArgument);
}

TEST_CASE("polyhedral construction checks consistency, pointedness and solidity") {
  // Facet normal inconsistent with a generator.
  CHECK_THROWS_AS(Cone::polyhedral({v2(1, 0), v2(0, 1)}, {v2(1, 0), v2(-1, 1)}), InvalidArgument);
  // A line is not pointed.
  CHECK_THROWS_AS(Cone::polyhedral({v2(1, 0), v2(-1, 0)}, {v2(0, 1)}), InvalidArgument);
  // A ray in R^2 is not solid.
  CHECK_THROWS_AS(Cone::polyhedral({v2(1, 0)}, {v2(1, 0), v2(0, 1), v2(0, -1)}), InvalidArgument);
}

TEST_CASE("every generator is contained") {
  for (const Cone& c : {Cone::orthant(4), wedge_2d()}) {
    for (const Vec& g : c.generators()) {
      CHECK(cones::contains(c, g).region != Region::kOutside);
    }
  }
}

TEST_CASE("Lorentz(2) and its polyhedral twin agree on regions") {
  Rng rng(9);
  std::normal_distribution<double> g;
  const Cone lor = Cone::lorentz(2);
  const Cone poly = wedge_2d();
  int agree = 0;
  for (int k = 0; k < 1000; ++k) {
    const Vec v = v2(g(rng), g(rng));
    agree += cones::contains(lor, v).region == cones::contains(poly, v).region;
  }
  CHECK(agree == 1000);
}

TEST_CASE("boundary rays lie on the boundary, interior samples inside") {
  Rng rng(2);
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(3), Cone::psd(2), wedge_2d()}) {
    for (const Vec& r : c.boundary_rays(6, rng)) {
      CHECK(r.norm() == doctest::Approx(1.0));
      CHECK(std::abs(cones::contains(c, r).margin) < 1e-9);
    }
    for (int k = 0; k < 50; ++k) {
      CHECK(cones::contains(c, c.random_interior(rng)).region == Region::kInterior);
    }
    CHECK(cones::contains(c, c.interior_witness()).region == Region::kInterior);
  }
}
