#include "weakframe/weak_limits.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "weakframe/parallel.hpp"
#include "weakframe/quadrature.hpp"

namespace weakframe {

namespace {

std::vector<double> uniform_fractions(std::size_t n) {
  std::vector<double> u(n + 1);
  for (std::size_t i = 0; i <= n; ++i) u[i] = static_cast<double>(i) / static_cast<double>(n);
  return u;
}

// Nested random fractions: a jittered base grid, then every interval split
// somewhere in its middle fifth on each further level.
std::vector<std::vector<double>> random_nested_fractions(std::size_t levels, std::size_t base_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::uniform_real_distribution<double> split(0.4, 0.6);
  std::vector<std::vector<double>> out;
  std::vector<double> u = uniform_fractions(base_n);
  for (std::size_t i = 1; i < base_n; ++i) u[i] = (static_cast<double>(i) + jitter(rng)) / static_cast<double>(base_n);
  out.push_back(u);
  for (std::size_t h = 1; h < levels; ++h) {
    std::vector<double> next;
    next.reserve(2 * u.size());
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      next.push_back(u[i]);
      next.push_back(u[i] + split(rng) * (u[i + 1] - u[i]));
    }
    next.push_back(u.back());
    u = std::move(next);
    out.push_back(u);
  }
  return out;
}

Level make_level(const Inscription& ins, const std::optional<ReturnPolicy>& policy, bool closed) {
  Level l;
  l.params = ins.params;
  l.mesh = ins.mesh;
  l.modulus = ins.modulus;
  if (closed) {
    std::vector<Vec3> v = ins.polygonal.vertices();
    v.pop_back();
    l.params.pop_back();
    l.polygonal = sanitize(Polygonal3(std::move(v), true));
  } else {
    l.polygonal = sanitize(ins.polygonal);
  }
  l.segments = l.polygonal.segment_count();
  const DiscreteFrenetData d = discrete_frenet(l.polygonal, policy);
  l.tc = d.tc;
  l.tat = d.tat;
  l.ct = d.ct;
  l.tantrix_velocity_variation = d.tc;
  for (const auto& t : d.torsion) l.tantrix_velocity_variation += 2.0 * std::sin(0.5 * t.complete);
  return l;
}

void check_options(const RefineOptions& o) {
  if (o.levels < 2) throw GeometryError(ErrorCode::InvalidArgument, "refinement needs at least 2 levels");
  if (o.base_n < 4) throw GeometryError(ErrorCode::InvalidArgument, "refinement needs base_n >= 4");
  if (o.levels > 24) throw GeometryError(ErrorCode::InvalidArgument, "too many refinement levels");
}

RefinementSequence refine_impl(const ParamCurve& c, const RefineOptions& options, bool closed) {
  check_options(options);
  std::vector<std::vector<double>> fractions;
  if (options.schedule == Schedule::RandomNested) {
    fractions = random_nested_fractions(options.levels, options.base_n, options.seed);
  } else {
    for (std::size_t h = 0; h < options.levels; ++h) fractions.push_back(uniform_fractions(options.base_n << h));
  }
  RefinementSequence seq;
  seq.curve_name = c.name;
  seq.policy = options.policy;
  for (const auto& u : fractions) {
    std::vector<double> params(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) params[i] = c.map_sample(u[i]);
    params.front() = c.a;
    params.back() = c.b;
    seq.levels.push_back(make_level(inscribe(c, params, options.with_modulus), options.policy, closed));
  }
  return seq;
}

}  // namespace

RefinementSequence refine(const ParamCurve& c, const RefineOptions& options) { return refine_impl(c, options, false); }

RefinementSequence refine_polygonal(const Polygonal3& p, const RefineOptions& options) {
  return refine_impl(polygonal_curve(p), options, p.closed());
}

RefinementSequence refine(const ParamCurve& c, std::size_t levels, std::size_t base_n) {
  RefineOptions o;
  o.levels = levels;
  o.base_n = base_n;
  return refine(c, o);
}

double reparameterized_gap(const GeodesicPolyline& a, const GeodesicPolyline& b, std::size_t grid) {
  if (grid < 2) throw GeometryError(ErrorCode::InvalidArgument, "gap grid needs at least 2 points");
  const bool projective = a.space() == Space::Projective;
  double gap = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(grid - 1);
    const UnitVec3 pa = a.at_fraction(u), pb = b.at_fraction(u);
    gap = std::max(gap, projective ? proj_distance(pa, pb) : sphere_distance(pa, pb));
  }
  return gap;
}

bool looks_divergent(const std::vector<double>& values) {
  if (values.size() < 3) return false;
  const std::size_t n = values.size();
  const double last = values[n - 1] - values[n - 2];
  const double prev = values[n - 2] - values[n - 3];
  return last > 1e-6 && last >= 0.7 * prev;
}

namespace {

enum class Kind { Tantrix, Binormal, Normal };

GeodesicPolyline level_curve(const Level& l, Kind kind, const std::optional<ReturnPolicy>& policy) {
  switch (kind) {
    case Kind::Tantrix: return tantrix(l.polygonal, policy);
    case Kind::Binormal: return polar_curve(l.polygonal, policy);
    case Kind::Normal: return normal_indicatrix(l.polygonal, policy).curve;
  }
  return {};
}

WeakIndicatrix compute_weak(const RefinementSequence& seq, const WeakOptions& options, Kind kind) {
  if (seq.levels.size() < 2) throw GeometryError(ErrorCode::InvalidArgument, "weak limits need at least 2 levels");
  const Level& fin = seq.final_level();
  if (kind == Kind::Tantrix && fin.tc <= 1e-12) {
    throw GeometryError(ErrorCode::ZeroCurvature, "final level has TC = 0");
  }
  if (kind == Kind::Binormal && fin.tat <= 1e-12) {
    throw GeometryError(ErrorCode::ZeroTorsion, "final level has TAT = 0");
  }
  const std::size_t n = seq.levels.size();
  std::vector<GeodesicPolyline> curves(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t h = begin; h < end; ++h) curves[h] = level_curve(seq.levels[h], kind, seq.policy);
  });

  WeakIndicatrix w;
  for (const auto& c : curves) w.level_lengths.push_back(c.length());
  w.level_gaps.assign(n - 1, 0.0);
  parallel_for(n - 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t h = begin; h < end; ++h) w.level_gaps[h] = reparameterized_gap(curves[h + 1], curves[h], options.grid);
  });
  w.cauchy_gap = w.level_gaps.back();
  w.converged = w.cauchy_gap <= options.tol;
  w.curve = std::move(curves.back());
  w.total_length = w.curve.length();

  std::vector<double> ct, tat, var;
  for (const auto& l : seq.levels) {
    ct.push_back(l.ct);
    tat.push_back(l.tat);
    var.push_back(l.tantrix_velocity_variation);
  }
  if (kind == Kind::Binormal && looks_divergent(tat)) {
    w.warnings.push_back("TAT levels keep growing: the values are a diverging lower bound");
  }
  if (kind == Kind::Normal && looks_divergent(ct)) {
    w.warnings.push_back("CT levels keep growing: complete torsion may be infinite, weak normal not guaranteed");
  }
  if (kind == Kind::Tantrix && looks_divergent(var)) {
    w.warnings.push_back("UnboundedVariation: variation of the tantrix velocity keeps growing");
  }
  if (kind == Kind::Normal) {
    const InterleavedPair pair = interleaved_pair(fin.polygonal, seq.policy);
    for (std::size_t j = 0; j < options.grid; ++j) {
      const double s = pair.length() * static_cast<double>(j) / static_cast<double>(options.grid - 1);
      const UnitVec3 nc = w.curve.at(s * w.total_length / pair.length());
      w.product_identity_gap = std::max(w.product_identity_gap, proj_distance(nc, pair.normal(s)));
    }
  }
  return w;
}

WeakIndicatrix require_converged(WeakIndicatrix w, const char* what, const WeakOptions& options) {
  if (!w.converged) {
    throw GeometryError(ErrorCode::NotConverged, std::string(what) + " cauchy gap " + std::to_string(w.cauchy_gap) +
                                                     " exceeds tolerance " + std::to_string(options.tol));
  }
  return w;
}

}  // namespace

WeakIndicatrix compute_weak_tantrix(const RefinementSequence& seq, const WeakOptions& options) {
  return compute_weak(seq, options, Kind::Tantrix);
}
WeakIndicatrix compute_weak_binormal(const RefinementSequence& seq, const WeakOptions& options) {
  return compute_weak(seq, options, Kind::Binormal);
}
WeakIndicatrix compute_weak_normal(const RefinementSequence& seq, const WeakOptions& options) {
  return compute_weak(seq, options, Kind::Normal);
}

WeakIndicatrix weak_tantrix(const RefinementSequence& seq, const WeakOptions& options) {
  return require_converged(compute_weak_tantrix(seq, options), "weak tantrix", options);
}
WeakIndicatrix weak_binormal(const RefinementSequence& seq, const WeakOptions& options) {
  return require_converged(compute_weak_binormal(seq, options), "weak binormal", options);
}
WeakIndicatrix weak_normal(const RefinementSequence& seq, const WeakOptions& options) {
  return require_converged(compute_weak_normal(seq, options), "weak normal", options);
}

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.applicable || c.pass; });
}

IdentityReport verify_reparam_identities(const ParamCurve& c, const RefinementSequence& seq,
                                         const IdentityOptions& options) {
  if (!c.has_analytic_frame()) {
    throw GeometryError(ErrorCode::InvalidArgument, c.name + ": identity checks need an analytic frame");
  }
  auto k = c.curvature;
  auto abs_tau = [tau = c.torsion](double s) { return std::abs(tau(s)); };
  const CumulativeIntegral K(k, c.a, c.b);
  const CumulativeIntegral T(abs_tau, c.a, c.b);

  std::vector<double> grid(options.grid);
  for (std::size_t j = 0; j < options.grid; ++j) {
    grid[j] = c.a + (c.b - c.a) * (static_cast<double>(j) + 0.5) / static_cast<double>(options.grid);
  }

  IdentityReport report;
  auto run = [&](const char* name, bool applicable, Kind kind, auto&& cumulative, auto&& exact_total, auto&& frame_vec) {
    IdentityCheck check;
    check.name = name;
    check.applicable = applicable;
    if (applicable) {
      const WeakIndicatrix w = compute_weak(seq, options.weak, kind);
      const double total = exact_total();
      const bool projective = w.curve.space() == Space::Projective;
      for (double s : grid) {
        const UnitVec3 limit = w.curve.at(cumulative(s) * w.total_length / total);
        const UnitVec3 smooth = frame_vec(c.frame(s));
        const double d = projective ? proj_distance(limit, smooth) : sphere_distance(limit, smooth);
        check.max_deviation = std::max(check.max_deviation, d);
      }
      check.pass = check.max_deviation < options.tol;
    }
    report.checks.push_back(check);
  };

  const bool has_k = K.total() > 1e-12;
  const bool has_tau = T.total() > 1e-12;
  run("binormal", has_tau, Kind::Binormal, [&](double s) { return T(s); }, [&] { return T.total(); },
      [](const FrenetFrame& f) { return f.b; });
  run("tantrix", has_k, Kind::Tantrix, [&](double s) { return K(s); }, [&] { return K.total(); },
      [](const FrenetFrame& f) { return f.t; });
  run("normal", has_k && has_tau, Kind::Normal, [&](double s) { return K(s) + T(s); },
      [&] { return K.total() + T.total(); }, [](const FrenetFrame& f) { return f.n; });
  return report;
}

}  // namespace weakframe
