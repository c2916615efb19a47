#include "conedyn/pf.hpp"

#include <cmath>

#include "conedyn/error.hpp"
#include "conedyn/positivity.hpp"

namespace conedyn::pf {

namespace {

Vec normalized(const geometry::ManifoldSpec& m, const Point& x, const Vec& v) {
  return v / geometry::metric_norm(m, x, v);
}

}  // namespace

PfResult pf_direction(const flow::FlowSystem& s, const conefield::ConeField& f,
                      const Point& x0, double T, double dt) {
  geometry::validate(s.manifold, x0);
  const Vec u1 = conefield::section(f, x0);
  Rng rng = linalg::rng_for(0, 0);
  const cones::Cone c = conefield::cone_at(f, x0);
  Vec b = c.boundary_rays(1, rng).front();
  if (f.kind() == conefield::FieldKind::kHomogeneous) {
    b = f.transport(f.base_point(), x0, b);
  }
  return pf_direction(s, f, x0, u1, u1 + b, T, dt);
}

PfResult pf_direction(const flow::FlowSystem& s, const conefield::ConeField& f,
                      const Point& x0, const Vec& u1, const Vec& u2, double T,
                      double dt) {
  if (!(T > 0.0)) throw InvalidArgument("pf_direction: T must be positive");
  const auto& m = s.manifold;
  for (const Vec* u : {&u1, &u2}) {
    if (conefield::contains_at(f, x0, *u).region != cones::Region::kInterior) {
      throw InvalidArgument("pf_direction: initial rays must be interior");
    }
  }
  Mat w(s.dim(), 2);
  w.col(0) = normalized(m, x0, u1);
  w.col(1) = normalized(m, x0, u2);

  PfResult result;
  const auto log_distance = [&](double t, const Vec& x) {
    const double d = cones::hilbert_distance(conefield::cone_at(f, Point{x}),
                                             w.col(0), w.col(1));
    result.contraction_log.push_back({t, d});
  };
  log_distance(0.0, x0.coords);

  const double exit_margin = -10.0 * positivity::kTol;
  long step = 0;
  const Vec x_final = flow::propagate(
      s, x0.coords, w, T, dt, [&](double t, const Vec& x, Mat& vecs) {
        ++step;
        const Point xt{x};
        for (int k = 0; k < 2; ++k) {
          vecs.col(k) /= geometry::metric_norm(m, xt, vecs.col(k));
        }
        if (step % flow::kStoreStride != 0 && t != T) return;
        for (int k = 0; k < 2; ++k) {
          const double margin = conefield::contains_at(f, xt, vecs.col(k)).margin;
          if (margin < exit_margin) {
            throw DpViolation("pf_direction: propagated ray left the cone at t=" +
                              std::to_string(t) + " (margin " +
                              std::to_string(margin) + ")");
          }
        }
        log_distance(t, x);
      });

  result.final_point = x_final;
  result.direction = w.col(0);
  result.converged = result.contraction_log.back().distance < kConvergedDistance;
  return result;
}

Eigenpair pf_at_equilibrium(const flow::FlowSystem& s,
                            const conefield::ConeField& f, const Point& e,
                            double tau, double dt) {
  geometry::validate(s.manifold, e);
  if (!(tau > 0.0)) throw InvalidArgument("pf_at_equilibrium: tau must be positive");
  const double r = s.eval(e.coords).norm();
  if (!(r < flow::kEqTol)) {
    throw InvalidArgument("pf_at_equilibrium: |f(e)| = " + std::to_string(r) +
                          " is not an equilibrium");
  }
  const Mat phi = flow::tangent_flow_at(s, e.coords, {tau}, dt).front().phi;
  const auto& m = s.manifold;
  const auto norm = [&](const Vec& v) { return geometry::metric_norm(m, e, v); };

  constexpr int kMaxIterations = 10000;
  Vec v = conefield::section(f, e);
  v /= norm(v);
  int it = 0;
  bool settled = false;
  while (it < kMaxIterations) {
    ++it;
    Vec next = phi * v;
    next /= norm(next);
    const double change = norm(next - v);
    v = next;
    if (change < 1e-12) {
      settled = true;
      break;
    }
  }
  if (!settled) {
    throw NumericFailure("pf_at_equilibrium: power iteration did not settle in " +
                         std::to_string(kMaxIterations) +
                         " iterations (complex or negative dominant eigenvalue?)");
  }
  const Vec image = phi * v;
  const double rho = norm(image);
  const double residual = norm(image - rho * v);
  if (!(residual < 1e-8)) {
    throw NumericFailure("pf_at_equilibrium: eigen-residual " +
                         std::to_string(residual) + " too large");
  }
  return Eigenpair{v, rho, it, residual};
}

}  // namespace conedyn::pf
