#include "conedyn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conedyn/error.hpp"
#include "conedyn/order.hpp"

namespace conedyn::experiments {

namespace {

// Limits closer than this are the same equilibrium.
constexpr double kSameLimit = 10.0 * flow::kClusterRadius;

geometry::Box box_for(const flow::FlowSystem& s, const Options& o) {
  return o.box ? *o.box : s.box;
}

const cones::Cone& flat_cone(const flow::FlowSystem& s,
                             const conefield::ConeField& f, const char* what) {
  if (!s.manifold.is_flat() || f.kind() != conefield::FieldKind::kConstant) {
    throw Unsupported(std::string(what) +
                      ": needs a flat manifold with a constant cone field");
  }
  if (!(s.manifold == f.manifold())) {
    throw InvalidArgument(std::string(what) + ": field and system dimensions differ");
  }
  return f.base_cone();
}

// x from the box, y = x + scale * d with d alternating between a boundary ray
// and an interior ray of the cone.
std::pair<Point, Point> ordered_pair(const flow::FlowSystem& s,
                                     const cones::Cone& c,
                                     const geometry::Box& box, Rng& rng,
                                     std::size_t k) {
  const Point x = geometry::sample_point(s.manifold, box, rng);
  std::uniform_real_distribution<double> scale(0.05, 1.0);
  Vec d;
  if (k % 2 == 0) {
    const auto rays = c.boundary_rays(1, rng);
    std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
    d = rays[pick(rng)];
  } else {
    d = c.random_interior(rng);
  }
  return {x, Point{x.coords + scale(rng) * d}};
}

bool same_limit(const Vec& a, const Vec& b) { return (a - b).norm() < kSameLimit; }

std::optional<flow::OmegaEstimate> try_omega(const flow::FlowSystem& s,
                                             const Point& x, double T,
                                             double dt) {
  try {
    return flow::omega_limit(s, x, T, dt);
  } catch (const NumericFailure&) {
    return std::nullopt;
  }
}

std::string describe(const Vec& v) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v(i);
  out << ")";
  return out.str();
}

}  // namespace

Interval wilson_interval(int successes, int total) {
  if (total <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = total;
  const double p = successes / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, centre - half)),
          std::min(1.0, std::max(p, centre + half))};
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kConverged:
      return "converged";
    case Outcome::kNonSingleton:
      return "non_singleton";
    case Outcome::kUndetermined:
      return "undetermined";
    case Outcome::kEscape:
      return "escape";
  }
  return "undetermined";
}

ConvergenceReport generic_convergence(const flow::FlowSystem& s,
                                      const conefield::ConeField& f, int N,
                                      double T, std::uint64_t seed,
                                      const Options& opts) {
  if (N < 1) throw InvalidArgument("generic_convergence: N must be >= 1");
  if (!(s.manifold == f.manifold())) {
    throw InvalidArgument("generic_convergence: field and system dimensions differ");
  }
  const geometry::Box box = box_for(s, opts);
  ConvergenceReport rep;
  rep.total = N;
  rep.T = T;
  rep.seed = seed;

  try {
    positivity::DpOptions dp_opts;
    dp_opts.dt = opts.dt;
    dp_opts.execution = opts.execution;
    rep.precondition =
        positivity::check_dp(s, f, 50, 8, {0.1, 1.0, 5.0}, seed, dp_opts).status;
  } catch (const NumericFailure&) {
    rep.precondition = positivity::DpStatus::kInconclusive;
  }
  rep.precondition_sdp = rep.precondition == positivity::DpStatus::kSdp;
  if (!rep.precondition_sdp) {
    rep.findings.push_back("precondition not met: check_dp returned " +
                           positivity::to_string(rep.precondition) +
                           ", generic convergence is only claimed for SDP systems");
  }

  rep.samples.resize(static_cast<std::size_t>(N));
  std::vector<flow::OmegaEstimate> omegas(rep.samples.size());
  for_each_index(rep.samples.size(), opts.execution, [&](std::size_t i) {
    Rng rng = linalg::rng_for(seed, i);
    SampleRecord& rec = rep.samples[i];
    rec.index = static_cast<int>(i);
    const Point x0 = geometry::sample_point(s.manifold, box, rng);
    rec.x0 = x0.coords;
    const auto om = try_omega(s, x0, T, opts.dt);
    if (!om) {
      rec.outcome = Outcome::kEscape;
      return;
    }
    omegas[i] = *om;
    rec.limit = om->points.front();
    rec.residual = om->residual;
    switch (om->kind) {
      case flow::OmegaKind::kSingletonEquilibrium:
        rec.outcome = Outcome::kConverged;
        break;
      case flow::OmegaKind::kNonSingleton:
        rec.outcome = Outcome::kNonSingleton;
        break;
      case flow::OmegaKind::kUndetermined:
        rec.outcome = Outcome::kUndetermined;
        break;
    }
  });

  const bool flat_order = s.manifold.is_flat() &&
                          f.kind() == conefield::FieldKind::kConstant;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    SampleRecord& rec = rep.samples[i];
    switch (rec.outcome) {
      case Outcome::kConverged: {
        ++rep.converged;
        auto it = std::find_if(rep.equilibria.begin(), rep.equilibria.end(),
                               [&](const EquilibriumCount& e) {
                                 return same_limit(e.point, rec.limit);
                               });
        if (it == rep.equilibria.end()) {
          rep.equilibria.push_back({rec.limit, 0});
          it = rep.equilibria.end() - 1;
        }
        ++it->count;
        rec.equilibrium = static_cast<int>(it - rep.equilibria.begin());
        break;
      }
      case Outcome::kNonSingleton: {
        ++rep.non_singleton;
        if (rep.precondition_sdp && flat_order) {
          // An omega-limit set of an SDP system holds no two ordered points.
          const auto& pts = omegas[i].points;
          bool ordered = false;
          for (std::size_t a = 0; a < pts.size() && !ordered; ++a)
            for (std::size_t b = 0; b < pts.size() && !ordered; ++b)
              ordered = a != b && (pts[a] - pts[b]).norm() > kSameLimit &&
                        order::is_leq(order::leq_flat(f.base_cone(), Point{pts[a]},
                                                      Point{pts[b]}).relation);
          if (ordered) {
            rep.findings.push_back("sample " + std::to_string(i) +
                                   ": non-singleton omega estimate contains two "
                                   "ordered points");
          }
        }
        break;
      }
      case Outcome::kUndetermined:
        ++rep.undetermined;
        break;
      case Outcome::kEscape:
        ++rep.escapes;
        break;
    }
  }
  // Equilibria that attract no sample (saddles, sources) are listed with a
  // zero count; Newton is seeded from the first sampled points.
  std::vector<Point> seeds;
  for (std::size_t i = 0; i < rep.samples.size() && seeds.size() < 256; ++i)
    seeds.push_back(Point{rep.samples[i].x0});
  for (const Point& e : flow::find_equilibria(s, seeds)) {
    const bool known = std::any_of(rep.equilibria.begin(), rep.equilibria.end(),
                                   [&](const EquilibriumCount& c) {
                                     return same_limit(c.point, e.coords);
                                   });
    if (!known) rep.equilibria.push_back({e.coords, 0});
  }

  rep.fraction = static_cast<double>(rep.converged) / rep.total;
  rep.interval = wilson_interval(rep.converged, rep.total);
  return rep;
}

BoundaryScan basin_boundary_scan(const flow::FlowSystem& s,
                                 const ConvergenceReport& report, int count,
                                 std::uint64_t seed, double width, double dt) {
  BoundaryScan scan;
  std::vector<const SampleRecord*> converged;
  for (const auto& rec : report.samples)
    if (rec.outcome == Outcome::kConverged) converged.push_back(&rec);

  for (int t = 0; t < count; ++t) {
    Rng rng = linalg::rng_for(seed ^ 0xb0a7ULL, static_cast<std::uint64_t>(t));
    Transect tr;
    const SampleRecord* a = nullptr;
    const SampleRecord* b = nullptr;
    if (converged.size() >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, converged.size() - 1);
      for (int attempt = 0; attempt < 10000 && a == nullptr; ++attempt) {
        const auto* p = converged[pick(rng)];
        const auto* q = converged[pick(rng)];
        if (p->equilibrium != q->equilibrium) {
          a = p;
          b = q;
        }
      }
    }
    if (a == nullptr) {
      scan.transects.push_back(tr);
      continue;
    }
    Vec lo = a->x0;
    Vec hi = b->x0;
    Vec lo_limit = a->limit;
    tr.a = lo;
    tr.b = hi;
    bool stalled = false;
    for (int it = 0; it < 200 && (hi - lo).norm() >= width; ++it) {
      const Vec mid = 0.5 * (lo + hi);
      const auto om = try_omega(s, Point{mid}, report.T, dt);
      if (!om || !om->is_singleton()) {
        stalled = true;
        break;
      }
      if (same_limit(om->limit(), lo_limit)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    tr.a = lo;
    tr.b = hi;
    tr.width = (hi - lo).norm();
    tr.resolved = !stalled && tr.width < width;
    scan.transects.push_back(tr);
  }
  scan.all_resolved = !scan.transects.empty();
  for (const auto& tr : scan.transects) {
    scan.max_width = std::max(scan.max_width, tr.width);
    scan.all_resolved = scan.all_resolved && tr.resolved;
  }
  return scan;
}

PairOutcome classify_pair(const flow::FlowSystem& s, const cones::Cone& c,
                          const Point& x, const Point& y, double T, double dt) {
  PairOutcome out;
  const auto ox = try_omega(s, x, T, dt);
  const auto oy = try_omega(s, y, T, dt);
  if (!ox || !oy) {
    out.detail = "escape";
    return out;
  }
  out.omega_x = *ox;
  out.omega_y = *oy;
  if (ox->kind == flow::OmegaKind::kNonSingleton &&
      oy->kind == flow::OmegaKind::kNonSingleton) {
    // Two omega-limit sets of an ordered pair may only share equilibria.
    for (const Vec& p : ox->points) {
      for (const Vec& q : oy->points) {
        if ((p - q).norm() < kSameLimit &&
            s.eval(p).norm() >= 10.0 * flow::kEqTol) {
          out.kind = PairCase::kViolation;
          out.detail = "non-singleton limit sets intersect outside equilibria";
          return out;
        }
      }
    }
    out.detail = "non-singleton";
    return out;
  }
  if (!ox->is_singleton() || !oy->is_singleton()) {
    out.detail = "undetermined";
    return out;
  }
  if (same_limit(ox->limit(), oy->limit())) {
    out.kind = PairCase::kEqualSingleton;
    return out;
  }
  const auto rel = order::leq_flat(c, Point{ox->limit()}, Point{oy->limit()});
  if (rel.relation == order::Relation::kLeqStrict) {
    out.kind = PairCase::kStrictOrder;
  } else {
    out.kind = PairCase::kViolation;
    out.detail = "distinct limits " + describe(ox->limit()) + " and " +
                 describe(oy->limit()) + " are " + order::to_string(rel.relation);
  }
  return out;
}

DichotomyReport dichotomy_check(const flow::FlowSystem& s,
                                const conefield::ConeField& f, int pairs,
                                double T, std::uint64_t seed,
                                const Options& opts) {
  const cones::Cone& c = flat_cone(s, f, "dichotomy_check");
  if (pairs < 1) throw InvalidArgument("dichotomy_check: pairs must be >= 1");
  const geometry::Box box = box_for(s, opts);
  std::vector<PairOutcome> outcomes(static_cast<std::size_t>(pairs));
  for_each_index(outcomes.size(), opts.execution, [&](std::size_t k) {
    Rng rng = linalg::rng_for(seed, k);
    const auto [x, y] = ordered_pair(s, c, box, rng, k);
    outcomes[k] = classify_pair(s, c, x, y, T, opts.dt);
  });
  DichotomyReport rep;
  rep.pairs = pairs;
  rep.seed = seed;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    switch (outcomes[k].kind) {
      case PairCase::kStrictOrder:
        ++rep.strict_order;
        break;
      case PairCase::kEqualSingleton:
        ++rep.equal_singleton;
        break;
      case PairCase::kViolation:
        ++rep.violations;
        rep.findings.push_back("pair " + std::to_string(k) + ": " + outcomes[k].detail);
        break;
      case PairCase::kExcluded:
        ++rep.excluded;
        break;
    }
  }
  return rep;
}

namespace {

struct CriterionOutcome {
  bool triggered = false;
  bool confirmed = false;
  std::string finding;
};

CriterionOutcome criterion_for(const flow::FlowSystem& s, const cones::Cone& c,
                               const Point& x, const std::vector<double>& scan,
                               double T, double dt) {
  CriterionOutcome out;
  try {
    for (double t : scan) {
      const Point y{flow::advance(s, x.coords, t, std::min(dt, t))};
      if (order::is_leq(order::leq_flat(c, x, y).relation) ||
          order::is_leq(order::leq_flat(c, y, x).relation)) {
        out.triggered = true;
        break;
      }
    }
  } catch (const NumericFailure& e) {
    out.finding = std::string("escape while scanning: ") + e.what();
    return out;
  }
  if (!out.triggered) return out;
  const auto om = try_omega(s, x, T, dt);
  out.confirmed = om && om->is_singleton();
  if (!out.confirmed) {
    out.finding = "triggered at " + describe(x.coords) + " but omega estimate is " +
                  (om ? flow::to_string(om->kind) : std::string("escape"));
  }
  return out;
}

CriterionReport tally(const std::vector<CriterionOutcome>& outcomes) {
  CriterionReport rep;
  rep.samples = static_cast<int>(outcomes.size());
  for (const auto& o : outcomes) {
    rep.triggered += o.triggered ? 1 : 0;
    rep.confirmed += o.confirmed ? 1 : 0;
    if (!o.finding.empty()) rep.findings.push_back(o.finding);
  }
  return rep;
}

std::vector<double> checked_scan(const std::vector<double>& T_scan) {
  if (T_scan.empty()) throw InvalidArgument("convergence criterion: empty T_scan");
  std::vector<double> scan = T_scan;
  std::sort(scan.begin(), scan.end());
  if (!(scan.front() > 0.0)) throw InvalidArgument("convergence criterion: T_scan must be > 0");
  return scan;
}

}  // namespace

CriterionReport convergence_criterion_check(const flow::FlowSystem& s,
                                            const conefield::ConeField& f,
                                            int x_samples,
                                            const std::vector<double>& T_scan,
                                            std::uint64_t seed, double T,
                                            const Options& opts) {
  const cones::Cone& c = flat_cone(s, f, "convergence_criterion_check");
  if (x_samples < 1) throw InvalidArgument("convergence_criterion_check: x_samples must be >= 1");
  const auto scan = checked_scan(T_scan);
  const geometry::Box box = box_for(s, opts);
  std::vector<CriterionOutcome> outcomes(static_cast<std::size_t>(x_samples));
  for_each_index(outcomes.size(), opts.execution, [&](std::size_t i) {
    Rng rng = linalg::rng_for(seed, i);
    const Point x = geometry::sample_point(s.manifold, box, rng);
    outcomes[i] = criterion_for(s, c, x, scan, T, opts.dt);
  });
  CriterionReport rep = tally(outcomes);
  rep.seed = seed;
  return rep;
}

CriterionReport convergence_criterion_at(const flow::FlowSystem& s,
                                         const conefield::ConeField& f,
                                         const std::vector<Point>& xs,
                                         const std::vector<double>& T_scan,
                                         double T, double dt) {
  const cones::Cone& c = flat_cone(s, f, "convergence_criterion_at");
  const auto scan = checked_scan(T_scan);
  std::vector<CriterionOutcome> outcomes;
  for (const Point& x : xs) outcomes.push_back(criterion_for(s, c, x, scan, T, dt));
  return tally(outcomes);
}

TrichotomyReport trichotomy_check(const flow::FlowSystem& s,
                                  const conefield::ConeField& f,
                                  const Point& x0, int n_seq, double T,
                                  double dt) {
  const cones::Cone& c = flat_cone(s, f, "trichotomy_check");
  if (n_seq < 1) throw InvalidArgument("trichotomy_check: n_seq must be >= 1");
  const Vec w = conefield::section(f, x0);
  std::vector<Point> seq;
  for (int n = 1; n <= n_seq; ++n) seq.push_back(Point{x0.coords - w / n});
  for (int n = 0; n < n_seq; ++n) {
    const Point& next = n + 1 < n_seq ? seq[n + 1] : x0;
    if (!order::is_leq(order::leq_flat(c, seq[n], next).relation) ||
        !order::is_leq(order::leq_flat(c, seq[n], x0).relation)) {
      throw InvalidArgument("trichotomy_check: approximating sequence is not ordered");
    }
  }

  TrichotomyReport rep;
  const auto o0 = try_omega(s, x0, T, dt);
  std::vector<flow::OmegaEstimate> on;
  bool all_singleton = o0 && o0->is_singleton();
  for (const Point& x : seq) {
    const auto o = try_omega(s, x, T, dt);
    all_singleton = all_singleton && o && o->is_singleton();
    if (o) on.push_back(*o);
  }
  if (!all_singleton) return rep;

  rep.omega_x0 = o0->limit();
  for (const auto& o : on) rep.omega_sequence.push_back(o.limit());
  const auto strict = [&](const Vec& a, const Vec& b) {
    return !same_limit(a, b) &&
           order::leq_flat(c, Point{a}, Point{b}).relation == order::Relation::kLeqStrict;
  };
  const auto& om = rep.omega_sequence;
  bool m1 = strict(om.back(), rep.omega_x0);
  bool m2 = true;
  bool m3 = strict(om.front(), rep.omega_x0);
  for (std::size_t n = 0; n < om.size(); ++n) {
    if (n + 1 < om.size()) m1 = m1 && strict(om[n], om[n + 1]);
    m2 = m2 && same_limit(om[n], rep.omega_x0);
    m3 = m3 && same_limit(om[n], om.front());
  }
  rep.matches = {m1, m2, m3};
  const int hits = static_cast<int>(m1) + static_cast<int>(m2) + static_cast<int>(m3);
  rep.consistent = hits == 1;
  if (rep.consistent) rep.branch = m1 ? 1 : (m2 ? 2 : 3);
  return rep;
}

ColimitReport colimit_check(const flow::FlowSystem& s,
                            const conefield::ConeField& f, int pairs, double T,
                            std::uint64_t seed, const Options& opts) {
  const cones::Cone& c = flat_cone(s, f, "colimit_check");
  if (pairs < 1) throw InvalidArgument("colimit_check: pairs must be >= 1");
  const geometry::Box box = box_for(s, opts);
  std::vector<PairOutcome> outcomes(static_cast<std::size_t>(pairs));
  for_each_index(outcomes.size(), opts.execution, [&](std::size_t k) {
    Rng rng = linalg::rng_for(seed, k);
    const auto [x, y] = ordered_pair(s, c, box, rng, k);
    outcomes[k] = classify_pair(s, c, x, y, T, opts.dt);
  });
  ColimitReport rep;
  rep.pairs = pairs;
  rep.seed = seed;
  for (const auto& o : outcomes) {
    if (o.kind != PairCase::kEqualSingleton) {
      ++rep.excluded;
      continue;
    }
    ++rep.checked;
    if (!(s.eval(o.omega_x.limit()).norm() < 10.0 * flow::kEqTol)) ++rep.violations;
  }
  return rep;
}

}  // namespace conedyn::experiments
