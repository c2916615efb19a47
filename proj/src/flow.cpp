#include "conedyn/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conedyn/error.hpp"

namespace conedyn::flow {

Vec FlowSystem::eval(const Vec& x) const {
  Vec out(dim());
  field(x, out);
  return out;
}

Mat FlowSystem::jac(const Vec& x) const {
  Mat out(dim(), dim());
  jacobian(x, out);
  return out;
}

namespace {

// Scratch buffers for one RK4 step of the state and `cols` variational
// columns; reused across steps to keep the inner loop allocation-free.
struct Workspace {
  Vec k1, k2, k3, k4, tmp;
  Mat j, w1, w2, w3, w4, wtmp;

  Workspace(int n, int cols)
      : k1(n), k2(n), k3(n), k4(n), tmp(n), j(n, n), w1(n, cols),
        w2(n, cols), w3(n, cols), w4(n, cols), wtmp(n, cols) {}
};

void step(const FlowSystem& s, Vec& x, Mat* w, double h, Workspace& ws) {
  const bool var = w != nullptr && w->cols() > 0;
  s.field(x, ws.k1);
  if (var) {
    s.jacobian(x, ws.j);
    ws.w1.noalias() = ws.j * *w;
  }
  ws.tmp = x + 0.5 * h * ws.k1;
  s.field(ws.tmp, ws.k2);
  if (var) {
    s.jacobian(ws.tmp, ws.j);
    ws.wtmp = *w + 0.5 * h * ws.w1;
    ws.w2.noalias() = ws.j * ws.wtmp;
  }
  ws.tmp = x + 0.5 * h * ws.k2;
  s.field(ws.tmp, ws.k3);
  if (var) {
    s.jacobian(ws.tmp, ws.j);
    ws.wtmp = *w + 0.5 * h * ws.w2;
    ws.w3.noalias() = ws.j * ws.wtmp;
  }
  ws.tmp = x + h * ws.k3;
  s.field(ws.tmp, ws.k4);
  if (var) {
    s.jacobian(ws.tmp, ws.j);
    ws.wtmp = *w + h * ws.w3;
    ws.w4.noalias() = ws.j * ws.wtmp;
    *w += (h / 6.0) * (ws.w1 + 2.0 * ws.w2 + 2.0 * ws.w3 + ws.w4);
  }
  x += (h / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
}

void guard(const FlowSystem& s, const Vec& x, const Mat* w, double t) {
  if (!x.allFinite() || (w != nullptr && !w->allFinite())) {
    std::ostringstream msg;
    msg << s.name << ": non-finite state at t=" << t;
    throw NumericFailure(msg.str(), t);
  }
  if (x.norm() > kEscapeRadius) {
    std::ostringstream msg;
    msg << s.name << ": orbit escaped radius " << kEscapeRadius << " at t=" << t;
    throw NumericFailure(msg.str(), t);
  }
  if (!s.manifold.is_flat() &&
      linalg::min_eigenvalue(linalg::unpack(x)) <= geometry::kEigTol) {
    std::ostringstream msg;
    msg << s.name << ": state left the SPD cone at t=" << t;
    throw NumericFailure(msg.str(), t);
  }
}

void check_args(const FlowSystem& s, const Vec& x0, double dt) {
  if (x0.size() != s.dim()) {
    throw InvalidArgument(s.name + ": initial state has dimension " +
                          std::to_string(x0.size()) + ", expected " +
                          std::to_string(s.dim()));
  }
  if (!(dt > 0.0)) throw InvalidArgument("step size must be positive");
  guard(s, x0, nullptr, 0.0);
}

// Number of steps to cover |T| with steps of dt; the last may be partial.
long step_count(double T, double dt) {
  const double ratio = std::abs(T) / dt;
  long n = static_cast<long>(std::ceil(ratio - 1e-9));
  return std::max(n, 1L);
}

}  // namespace

void rk4_step(const FlowSystem& s, Vec& x, Mat& w, double h) {
  Workspace ws(s.dim(), static_cast<int>(w.cols()));
  step(s, x, &w, h, ws);
}

Vec propagate(const FlowSystem& s, const Vec& x0, Mat& w, double T, double dt,
              const StepObserver& observe) {
  check_args(s, x0, dt);
  if (w.rows() != s.dim()) throw InvalidArgument("propagate: bad vector block");
  Vec x = x0;
  if (T == 0.0) return x;
  Workspace ws(s.dim(), static_cast<int>(w.cols()));
  const long n = step_count(T, dt);
  const double sign = T > 0 ? 1.0 : -1.0;
  for (long k = 1; k <= n; ++k) {
    const double t_prev = sign * static_cast<double>(k - 1) * dt;
    const double t = k == n ? T : sign * static_cast<double>(k) * dt;
    step(s, x, &w, t - t_prev, ws);
    guard(s, x, &w, t);
    if (observe) observe(t, x, w);
  }
  return x;
}

Vec advance(const FlowSystem& s, const Vec& x0, double T, double dt) {
  Mat none(s.dim(), 0);
  return propagate(s, x0, none, T, dt, nullptr);
}

Trajectory integrate(const FlowSystem& s, const Point& x0, double T, double dt,
                     int stride) {
  if (!(T > 0.0)) throw InvalidArgument("integrate: T must be positive");
  if (dt > T) throw InvalidArgument("integrate: dt must not exceed T");
  if (stride < 1) throw InvalidArgument("integrate: stride must be >= 1");
  const long n = step_count(T, dt);
  const long stored = n / stride + 2;
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(stored));
  traj.states.resize(s.dim(), stored);
  traj.times.push_back(0.0);
  traj.states.col(0) = x0.coords;
  long k = 0;
  Mat none(s.dim(), 0);
  propagate(s, x0.coords, none, T, dt, [&](double t, const Vec& x, Mat&) {
    ++k;
    if (k % stride == 0 || k == n) {
      traj.states.col(static_cast<Eigen::Index>(traj.times.size())) = x;
      traj.times.push_back(t);
    }
  });
  traj.states.conservativeResize(Eigen::NoChange,
                                 static_cast<Eigen::Index>(traj.times.size()));
  return traj;
}

TangentFlow tangent_flow(const FlowSystem& s, const Point& x0, double T,
                         double dt, int stride) {
  if (!(T > 0.0)) throw InvalidArgument("tangent_flow: T must be positive");
  if (dt > T) throw InvalidArgument("tangent_flow: dt must not exceed T");
  if (stride < 1) throw InvalidArgument("tangent_flow: stride must be >= 1");
  const long n = step_count(T, dt);
  const long stored = n / stride + 2;
  TangentFlow tf;
  auto& traj = tf.trajectory;
  traj.times.reserve(static_cast<std::size_t>(stored));
  traj.states.resize(s.dim(), stored);
  traj.times.push_back(0.0);
  traj.states.col(0) = x0.coords;
  tf.phi.push_back(Mat::Identity(s.dim(), s.dim()));
  Mat w = Mat::Identity(s.dim(), s.dim());
  long k = 0;
  propagate(s, x0.coords, w, T, dt, [&](double t, const Vec& x, Mat& phi) {
    ++k;
    if (k % stride == 0 || k == n) {
      traj.states.col(static_cast<Eigen::Index>(traj.times.size())) = x;
      traj.times.push_back(t);
      tf.phi.push_back(phi);
    }
  });
  traj.states.conservativeResize(Eigen::NoChange,
                                 static_cast<Eigen::Index>(traj.times.size()));
  return tf;
}

std::vector<TangentSample> tangent_flow_at(const FlowSystem& s, const Vec& x0,
                                           const std::vector<double>& times,
                                           double dt) {
  check_args(s, x0, dt);
  std::vector<TangentSample> out;
  Vec x = x0;
  Mat w = Mat::Identity(s.dim(), s.dim());
  Workspace ws(s.dim(), s.dim());
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw InvalidArgument("tangent_flow_at: times must be sorted and >= 0");
    while (t < target) {
      const double h = std::min(dt, target - t);
      step(s, x, &w, h, ws);
      t = target - (t + h) <= 1e-12 * std::max(1.0, target) ? target : t + h;
      guard(s, x, &w, t);
    }
    out.push_back({target, x, w});
  }
  return out;
}

std::optional<Vec> newton_polish(const FlowSystem& s, const Vec& seed,
                                 int max_iterations) {
  Vec x = seed;
  Vec fx = s.eval(x);
  double r = fx.norm();
  if (!std::isfinite(r)) return std::nullopt;
  for (int it = 0; it < max_iterations && r >= kEqTol; ++it) {
    Eigen::FullPivLU<Mat> lu(s.jac(x));
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return std::nullopt;
    const Vec dx = lu.solve(-fx);
    double scale = 1.0;
    Vec xn = x + dx;
    Vec fn = s.eval(xn);
    // Halve the step while the residual grows.
    for (int d = 0; d < 40 && !(fn.norm() < r); ++d) {
      scale *= 0.5;
      xn = x + scale * dx;
      fn = s.eval(xn);
    }
    if (!xn.allFinite()) return std::nullopt;
    if (!s.manifold.is_flat() &&
        linalg::min_eigenvalue(linalg::unpack(xn)) <= geometry::kEigTol) {
      return std::nullopt;
    }
    x = xn;
    fx = fn;
    r = fx.norm();
  }
  if (!(r < kEqTol)) return std::nullopt;
  return x;
}

std::vector<Point> find_equilibria(const FlowSystem& s,
                                   const std::vector<Point>& seeds) {
  if (seeds.empty()) throw InvalidArgument("find_equilibria: no seeds");
  std::vector<Point> found;
  for (const Point& seed : seeds) {
    const auto p = newton_polish(s, seed.coords);
    if (!p) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Point& q) {
      return (q.coords - *p).norm() < kClusterRadius;
    });
    if (!dup) found.push_back(Point{*p});
  }
  return found;
}

std::string to_string(OmegaKind kind) {
  switch (kind) {
    case OmegaKind::kSingletonEquilibrium:
      return "singleton_equilibrium";
    case OmegaKind::kNonSingleton:
      return "non_singleton";
    case OmegaKind::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

}  // namespace

OmegaEstimate omega_limit(const FlowSystem& s, const Point& x0, double T,
                          double dt) {
  const Trajectory traj = integrate(s, x0, T, dt);
  const double tail_start = (1.0 - kTailFraction) * T;
  int first = 0;
  while (first < traj.size() - 1 && traj.times[first] < tail_start) ++first;
  const auto tail = traj.states.rightCols(traj.size() - first);

  OmegaEstimate est;
  const Vec last = traj.final_state();
  est.residual = s.eval(last).norm();

  const Vec centroid = tail.rowwise().mean();
  const double radius = (tail.colwise() - centroid).colwise().norm().maxCoeff();
  if (2.0 * radius < kClusterRadius) {
    if (const auto p = newton_polish(s, centroid)) {
      const double spread = (tail.colwise() - *p).colwise().norm().maxCoeff();
      const double res = s.eval(*p).norm();
      if (res < 10.0 * kEqTol && spread < kClusterRadius) {
        est.kind = OmegaKind::kSingletonEquilibrium;
        est.points = {*p};
        est.residual = res;
        return est;
      }
    }
    est.points = {last};
    return est;
  }

  // Recurrence: after leaving the start by half the diameter, the tail
  // polyline must come back within kClusterRadius of its first sample.
  double diameter = 0.0;
  for (Eigen::Index i = 0; i < tail.cols(); ++i)
    for (Eigen::Index j = i + 1; j < tail.cols(); ++j)
      diameter = std::max(diameter, (tail.col(i) - tail.col(j)).norm());
  const Vec start = tail.col(0);
  Eigen::Index left = 1;
  while (left < tail.cols() && (tail.col(left) - start).norm() <= 0.5 * diameter)
    ++left;
  double closest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = left; i + 1 < tail.cols(); ++i) {
    closest = std::min(closest,
                       segment_distance(start, tail.col(i), tail.col(i + 1)));
  }
  if (diameter >= kClusterRadius && closest < kClusterRadius) {
    est.kind = OmegaKind::kNonSingleton;
    const Eigen::Index count = std::min<Eigen::Index>(16, tail.cols());
    for (Eigen::Index k = 0; k < count; ++k) {
      est.points.push_back(tail.col(k * (tail.cols() - 1) / std::max<Eigen::Index>(1, count - 1)));
    }
    return est;
  }
  est.points = {last};
  return est;
}

}  // namespace conedyn::flow
