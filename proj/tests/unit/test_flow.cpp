#include <doctest.h>

#include <cmath>

#include "conedyn/error.hpp"
#include "conedyn/flow.hpp"
#include "conedyn/systems.hpp"
#include "oracles.hpp"

using namespace conedyn;
using flow::FlowSystem;
using flow::OmegaKind;
using geometry::Point;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

FlowSystem decay1d() { return systems::linear(Mat::Constant(1, 1, -1.0), "decay"); }

FlowSystem constant1d() {
  return FlowSystem{geometry::ManifoldSpec::euclidean(1),
                    [](const Vec&, Vec& out) { out(0) = 1.0; },
                    [](const Vec&, Mat& out) { out(0, 0) = 0.0; }, "constant",
                    geometry::Box::cube(1, -1, 1)};
}

FlowSystem blowup1d() {
  return FlowSystem{geometry::ManifoldSpec::euclidean(1),
                    [](const Vec& x, Vec& out) { out(0) = x(0) * x(0); },
                    [](const Vec& x, Mat& out) { out(0, 0) = 2 * x(0); }, "blowup",
                    geometry::Box::cube(1, -1, 1)};
}

std::vector<FlowSystem> registry_systems() {
  std::vector<FlowSystem> out;
  for (const auto& e : systems::registry()) out.push_back(systems::make(e.key));
  return out;
}

}  // namespace

TEST_CASE("integrate examples") {
  const auto traj = flow::integrate(decay1d(), {vec({1.0})}, 1.0, 1e-3);
  CHECK(std::abs(traj.final_state()(0) - std::exp(-1.0)) < 1e-9);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0));
  CHECK(traj.state(0)(0) == 1.0);
  for (int k = 1; k < traj.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);

  const auto rot = flow::integrate(systems::rotation2d(), {vec({1, 0})}, 2 * M_PI, 1e-3);
  CHECK((rot.final_state() - vec({1, 0})).norm() < 1e-6);

  const double s = oracle::coop2d_s();
  const Vec end = flow::integrate(systems::coop2d(), {vec({0.1, 0.1})}, 50.0).final_state();
  CHECK((end - vec({s, s})).norm() < 1e-4);
}

TEST_CASE("integrate stores every stride-th step and lands on T") {
  const auto traj = flow::integrate(decay1d(), {vec({1.0})}, 0.0255, 1e-3, 10);
  CHECK(traj.times.back() == doctest::Approx(0.0255).epsilon(1e-12));
  CHECK(traj.size() == 4);  // 0, 0.01, 0.02, final
}

TEST_CASE("integrate errors") {
  CHECK_THROWS_AS(flow::integrate(decay1d(), {vec({1.0})}, -1.0), InvalidArgument);
  CHECK_THROWS_AS(flow::integrate(decay1d(), {vec({1.0})}, 1.0, 2.0), InvalidArgument);
  try {
    flow::integrate(blowup1d(), {vec({1.0})}, 2.0, 1e-3);
    FAIL("expected a numeric failure");
  } catch (const NumericFailure& e) {
    CHECK(e.time() > 0.9);
    CHECK(e.time() < 1.01);
  }
}

TEST_CASE("SPD flows guard positive definiteness") {
  // Constant velocity -E11 drives the first eigenvalue of I through zero at t=1.
  const FlowSystem s{geometry::ManifoldSpec::spd(2),
                     [](const Vec&, Vec& out) { out << -1.0, 0.0, 0.0; },
                     [](const Vec&, Mat& out) { out.setZero(); }, "shrink",
                     geometry::Box::cube(3, -1, 1)};
  const Point eye{linalg::pack(Mat::Identity(2, 2))};
  CHECK_THROWS_AS(flow::integrate(s, eye, 2.0), NumericFailure);
}

TEST_CASE("tangent_flow examples") {
  const auto s = systems::linear(mat2(-1, 1, 1, -1));
  const auto tf = flow::tangent_flow(s, {vec({0.3, -2})}, 1.0);
  const Eigen::Matrix2d expected = oracle::exp_exchange(1.0);
  CHECK((tf.final_phi() - expected).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(tf.phi.front() == Mat::Identity(2, 2));

  const auto at0 = flow::tangent_flow_at(systems::coop2d(), vec({0.4, 0.2}), {0.0});
  CHECK(at0.front().phi == Mat::Identity(2, 2));
  const auto tiny = flow::tangent_flow(systems::coop2d(), {vec({0.4, 0.2})}, 1e-9, 1e-9);
  CHECK((tiny.final_phi() - Mat::Identity(2, 2)).norm() < 1e-8);
}

TEST_CASE("tangent flow matches finite differences") {
  const double h = 1e-5;
  for (const auto& s : {systems::coop2d(), systems::bistable1d(), systems::metzler_linear()}) {
    Rng rng(1);
    for (int k = 0; k < 5; ++k) {
      const Point x0 = geometry::sample_point(s.manifold, s.box, rng);
      const auto tf = flow::tangent_flow(s, x0, 1.0);
      const Vec base = tf.trajectory.final_state();
      for (int i = 0; i < s.dim(); ++i) {
        const Vec shifted = flow::advance(s, x0.coords + h * Vec::Unit(s.dim(), i), 1.0);
        const Vec fd = (shifted - base) / h;
        CHECK((tf.final_phi().col(i) - fd).norm() < 1e-4);
      }
    }
  }
}

TEST_CASE("det Phi stays positive") {
  for (const auto& s : registry_systems()) {
    Rng rng(2);
    const Point x0 = geometry::sample_point(s.manifold, s.box, rng);
    const auto tf = flow::tangent_flow(s, x0, 3.0);
    for (const Mat& p : tf.phi) CHECK(p.determinant() > 0.0);
  }
}

TEST_CASE("registry Jacobians match central differences") {
  for (const auto& s : registry_systems()) {
    Rng rng(3);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vec x = geometry::sample_point(s.manifold, s.box, rng).coords;
      const Mat j = s.jac(x);
      const double h = 1e-6 * (1.0 + x.norm());
      for (int i = 0; i < s.dim(); ++i) {
        const Vec e = Vec::Unit(s.dim(), i) * h;
        const Vec col = (s.eval(x + e) - s.eval(x - e)) / (2 * h);
        worst = std::max(worst, (j.col(i) - col).cwiseAbs().maxCoeff());
      }
    }
    INFO(s.name);
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("semigroup and cocycle properties") {
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const auto s = systems::coop2d();
  for (int k = 0; k < 10; ++k) {
    const double t = u(rng), r = u(rng);
    const Point x = geometry::sample_point(s.manifold, s.box, rng);
    const Vec joint = flow::advance(s, x.coords, t + r);
    const Vec xt = flow::advance(s, x.coords, t);
    CHECK((joint - flow::advance(s, xt, r)).norm() < 1e-7);

    const Mat phi_tr = flow::tangent_flow_at(s, x.coords, {t + r}).back().phi;
    const Mat phi_t = flow::tangent_flow_at(s, x.coords, {t}).back().phi;
    const Mat phi_r = flow::tangent_flow_at(s, xt, {r}).back().phi;
    CHECK((phi_tr - phi_r * phi_t).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("backward flow inverts forward flow") {
  const auto s = systems::coop2d();
  const Vec x = vec({0.3, -0.7});
  CHECK((flow::advance(s, flow::advance(s, x, 2.0), -2.0) - x).norm() < 1e-9);
}

TEST_CASE("RK4 order check on the linear scalar problem") {
  const double exact = std::exp(-1.0);
  const double e1 = std::abs(flow::advance(decay1d(), vec({1.0}), 1.0, 0.1)(0) - exact);
  const double e2 = std::abs(flow::advance(decay1d(), vec({1.0}), 1.0, 0.05)(0) - exact);
  const double factor = e1 / e2;
  CHECK(factor >= 8.0);
  CHECK(factor <= 40.0);
}

TEST_CASE("find_equilibria examples") {
  const auto zero = flow::find_equilibria(decay1d(), {{vec({3.0})}});
  REQUIRE(zero.size() == 1);
  CHECK(std::abs(zero[0].coords(0)) < 1e-12);

  CHECK(flow::find_equilibria(constant1d(), {{vec({0.0})}, {vec({2.0})}}).empty());
  CHECK_THROWS_AS(flow::find_equilibria(decay1d(), {}), InvalidArgument);
}

TEST_CASE("coop2d equilibria from seed grids") {
  const auto grid = [](int g) {
    std::vector<Point> seeds;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        seeds.push_back({vec({-2.0 + 4.0 * i / (g - 1), -2.0 + 4.0 * j / (g - 1)})});
    return seeds;
  };
  const auto has = [](const std::vector<Point>& eqs, const Vec& e) {
    for (const auto& p : eqs)
      if ((p.coords - e).norm() < 1e-5) return true;
    return false;
  };
  const auto s = systems::coop2d();
  const double d = oracle::coop2d_s(), a = oracle::coop2d_a();
  const double u = oracle::kCoopSaddleU, v = oracle::kCoopSaddleV;
  const std::vector<Vec> stable_and_origin = {vec({0, 0}), vec({d, d}), vec({-d, -d}),
                                              vec({a, -a}), vec({-a, a})};
  const std::vector<Vec> saddles = {vec({u, v}), vec({-u, -v}), vec({v, u}), vec({-v, -u})};

  // The 5x5 grid reaches the origin and the four stable equilibria.
  const auto coarse = flow::find_equilibria(s, grid(5));
  CHECK(coarse.size() == 5);
  for (const Vec& e : stable_and_origin) CHECK(has(coarse, e));

  // A finer grid also reaches the four saddles between the stable nodes.
  const auto fine = flow::find_equilibria(s, grid(9));
  CHECK(fine.size() == 9);
  for (const Vec& e : stable_and_origin) CHECK(has(fine, e));
  for (const Vec& e : saddles) CHECK(has(fine, e));
  for (const auto& p : fine) CHECK(s.eval(p.coords).norm() < flow::kEqTol);
}

TEST_CASE("omega_limit examples") {
  const auto a = flow::omega_limit(decay1d(), {vec({5.0})}, 40.0);
  CHECK(a.kind == OmegaKind::kSingletonEquilibrium);
  CHECK(std::abs(a.limit()(0)) < 1e-9);

  const double s = oracle::coop2d_s();
  const auto b = flow::omega_limit(systems::coop2d(), {vec({1.0, 0.5})}, 100.0);
  CHECK(b.kind == OmegaKind::kSingletonEquilibrium);
  CHECK((b.limit() - vec({s, s})).norm() < 1e-8);
  CHECK(b.residual < 10 * flow::kEqTol);

  const auto c = flow::omega_limit(systems::rotation2d(), {vec({1.0, 0.0})}, 100.0);
  CHECK(c.kind == OmegaKind::kNonSingleton);
  for (const Vec& p : c.points) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("omega_limit is undetermined for unbounded drift") {
  const auto r = flow::omega_limit(constant1d(), {vec({0.0})}, 10.0);
  CHECK(r.kind == OmegaKind::kUndetermined);
}
