#include "conedyn/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conedyn/error.hpp"
#include "conedyn/order.hpp"

namespace conedyn::positivity {

using geometry::Point;

std::string to_string(DpStatus s) {
  switch (s) {
    case DpStatus::kDp:
      return "DP";
    case DpStatus::kSdp:
      return "SDP";
    case DpStatus::kViolated:
      return "Violated";
    case DpStatus::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SampleResult {
  double worst = kInf;
  Witness worst_witness;
  double worst_boundary = kInf;
};

DpStatus classify(double worst, double worst_boundary, const DpOptions& o) {
  if (worst < -10.0 * o.tol) return DpStatus::kViolated;
  if (worst >= -o.tol) {
    return worst_boundary > o.sdp_margin_floor ? DpStatus::kSdp
                                               : DpStatus::kDp;
  }
  return DpStatus::kInconclusive;
}

}  // namespace

DpVerdict check_dp(const flow::FlowSystem& s, const conefield::ConeField& f,
                   int x_samples, int ray_samples,
                   const std::vector<double>& times, std::uint64_t seed,
                   const DpOptions& opts) {
  if (x_samples < 1 || ray_samples < 1) {
    throw InvalidArgument("check_dp: sample counts must be >= 1");
  }
  if (times.empty()) throw InvalidArgument("check_dp: no times given");
  if (!(s.manifold == f.manifold())) {
    throw InvalidArgument("check_dp: system and cone field live on different manifolds");
  }
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0)) throw InvalidArgument("check_dp: times must be > 0");

  std::vector<SampleResult> results(static_cast<std::size_t>(x_samples));
  std::vector<std::string> errors(results.size());
  for_each_index(results.size(), opts.execution, [&](std::size_t i) {
    try {
      Rng rng = linalg::rng_for(seed, i);
      const Point x0 = geometry::sample_point(s.manifold, s.box, rng);
      const cones::Cone c = conefield::cone_at(f, x0);
      std::vector<Vec> rays =
          c.boundary_rays(std::max(2, ray_samples / 2), rng);
      const std::size_t boundary_count = rays.size();
      while (static_cast<int>(rays.size()) < ray_samples) {
        rays.push_back(c.random_interior(rng));
      }
      // Rays live at x0; for homogeneous fields they are expressed in the
      // chart at x0, so transport the base-frame rays there.
      if (f.kind() == conefield::FieldKind::kHomogeneous) {
        for (Vec& r : rays) r = f.transport(f.base_point(), x0, r);
      }
      const auto samples = flow::tangent_flow_at(s, x0.coords, sorted, opts.dt);
      SampleResult& out = results[i];
      for (const auto& sample : samples) {
        const Point xt{sample.x};
        for (std::size_t r = 0; r < rays.size(); ++r) {
          const Vec w = sample.phi * rays[r];
          const double m =
              conefield::contains_at(f, xt, w, opts.tol).margin;
          if (m < out.worst) {
            out.worst = m;
            out.worst_witness = Witness{x0.coords, rays[r], sample.t, Vec()};
          }
          if (r < boundary_count) out.worst_boundary = std::min(out.worst_boundary, m);
        }
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw NumericFailure("check_dp: sample " + std::to_string(i) + ": " + errors[i]);
  }

  DpVerdict v;
  v.x_samples = x_samples;
  v.ray_samples = ray_samples;
  v.times = sorted;
  v.seed = seed;
  v.worst_margin = kInf;
  v.worst_boundary_margin = kInf;
  for (const auto& r : results) {
    if (r.worst < v.worst_margin) {
      v.worst_margin = r.worst;
      v.witness = r.worst_witness;
    }
    v.worst_boundary_margin = std::min(v.worst_boundary_margin, r.worst_boundary);
  }
  v.status = classify(v.worst_margin, v.worst_boundary_margin, opts);
  return v;
}

DpVerdict cross_positivity_flat(const flow::FlowSystem& s,
                                const cones::Cone& c, int x_samples,
                                std::uint64_t seed, double tol) {
  if (!s.manifold.is_flat()) {
    throw Unsupported("cross_positivity_flat: manifold " + s.manifold.name() +
                      " is not flat");
  }
  if (!c.is_polyhedral()) {
    throw Unsupported("cross_positivity_flat: cone " + c.name() +
                      " is not polyhedral");
  }
  if (c.dim() != s.dim()) throw InvalidArgument("cross_positivity_flat: dimension mismatch");
  if (x_samples < 1) throw InvalidArgument("cross_positivity_flat: x_samples must be >= 1");

  DpVerdict v;
  v.x_samples = x_samples;
  v.seed = seed;
  v.worst_margin = kInf;
  for (int i = 0; i < x_samples; ++i) {
    Rng rng = linalg::rng_for(seed, static_cast<std::uint64_t>(i));
    const Point x = geometry::sample_point(s.manifold, s.box, rng);
    const Mat j = s.jac(x.coords);
    for (const Vec& g : c.generators()) {
      const Vec jg = j * g;
      for (const Vec& lambda : c.facet_normals()) {
        if (std::abs(lambda.dot(g)) >= 1e-12) continue;
        const double val = lambda.dot(jg);
        if (val < v.worst_margin) {
          v.worst_margin = val;
          v.witness = Witness{x.coords, g, 0.0, lambda};
        }
      }
    }
  }
  if (v.worst_margin == kInf) v.worst_margin = 0.0;
  v.worst_boundary_margin = v.worst_margin;
  v.status = v.worst_margin >= -tol ? DpStatus::kDp : DpStatus::kViolated;
  return v;
}

EquivalenceReport flat_equivalence(const flow::FlowSystem& s,
                                   const cones::Cone& c, int pairs, double T,
                                   std::uint64_t seed) {
  if (!s.manifold.is_flat()) {
    throw Unsupported("flat_equivalence: manifold is not flat");
  }
  if (pairs < 1 || !(T > 0.0)) throw InvalidArgument("flat_equivalence: bad arguments");
  const auto field = conefield::ConeField::constant(s.manifold, c);
  const DpVerdict dp = check_dp(s, field, 50, 8, {0.5 * T, T}, seed);
  const double dt = std::min(flow::kDefaultDt, 0.5 * T);

  EquivalenceReport rep;
  rep.pairs = pairs;
  rep.dp_status = dp.status;
  std::uniform_real_distribution<double> scale(0.1, 1.0);
  for (int k = 0; k < pairs; ++k) {
    Rng rng = linalg::rng_for(seed ^ 0x5eedULL, static_cast<std::uint64_t>(k));
    const Point x = geometry::sample_point(s.manifold, s.box, rng);
    Vec d;
    if (k % 2 == 0) {
      const auto rays = c.boundary_rays(1, rng);
      std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
      d = rays[pick(rng)];
    } else {
      d = c.random_interior(rng);
    }
    const Vec y = x.coords + scale(rng) * d;
    bool preserved = true;
    Vec fx = x.coords;
    Vec fy = y;
    for (int half = 0; half < 2 && preserved; ++half) {
      fx = flow::advance(s, fx, 0.5 * T, dt);
      fy = flow::advance(s, fy, 0.5 * T, dt);
      preserved = order::is_leq(order::leq_flat(c, Point{fx}, Point{fy}).relation);
    }
    if (preserved) ++rep.pairs_preserved;
  }
  rep.monotone = rep.pairs_preserved == rep.pairs;
  rep.agreement = rep.monotone == passes(dp.status) ? 1.0 : 0.0;
  return rep;
}

}  // namespace conedyn::positivity
