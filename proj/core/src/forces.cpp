#include "weakframe/forces.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "weakframe/errors.hpp"
#include "weakframe/parallel.hpp"
#include "weakframe/quadrature.hpp"

namespace weakframe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroMass = 1e-12;

// Pairwise summation keeps the result independent of how work is split.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size()); }

Vec3 unit_or_zero(const Vec3& v) {
  const double n = v.norm();
  return n > 0.0 ? Vec3(v / n) : Vec3::Zero();
}

Atom make_atom(double param, const Vec3& in, const Vec3& out) {
  const double angle = std::atan2(in.cross(out).norm(), in.dot(out));
  return Atom{param, out - in, angle};
}

// Cumulative integral of |f| over the curve domain, shared by fields and measures.
std::shared_ptr<CumulativeIntegral> cumulative_abs(const std::function<double(double)>& f, const ParamCurve& c) {
  return std::make_shared<CumulativeIntegral>([f](double s) { return std::abs(f(s)); }, c.a, c.b, 512);
}

void require_frame(const ParamCurve& c, const char* what) {
  if (!c.has_analytic_frame()) throw GeometryError(ErrorCode::FrameUndefined, std::string(what) + " needs an analytic frame");
}

// Two Gauss nodes per cell, each carrying half of it.
std::vector<DensityCell> sample_density(double lo, double hi, std::size_t cells,
                                        const std::function<Vec3(double)>& value) {
  cells = std::max<std::size_t>(1, cells);
  const double h = (hi - lo) / static_cast<double>(cells);
  const double g = 0.5 / std::sqrt(3.0);
  std::vector<DensityCell> dens(2 * cells);
  parallel_for(cells, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const double mid = lo + (static_cast<double>(j) + 0.5) * h;
      for (int q = 0; q < 2; ++q) {
        const double x = mid + (q == 0 ? -g : g) * h;
        dens[2 * j + q] = DensityCell{x, value(x), 0.5 * h};
      }
    }
  });
  std::vector<DensityCell> out;
  out.reserve(dens.size());
  for (auto& d : dens)
    if (d.value.norm() > 0.0) out.push_back(d);
  return out;
}

}  // namespace

double VectorMeasure::atomic_variation() const {
  std::vector<double> v;
  v.reserve(atoms.size());
  for (const auto& a : atoms) v.push_back(a.weight.norm());
  return pairwise_sum(v);
}

double VectorMeasure::density_variation() const {
  std::vector<double> v;
  v.reserve(density.size());
  for (const auto& d : density) v.push_back(d.value.norm() * d.step);
  return pairwise_sum(v);
}

double VectorMeasure::pair(const std::function<Vec3(double)>& field) const {
  std::vector<double> v;
  v.reserve(atoms.size() + density.size());
  for (const auto& a : atoms) v.push_back(a.weight.dot(field(a.param)));
  for (const auto& d : density) v.push_back(d.value.dot(field(d.param)) * d.step);
  return pairwise_sum(v);
}

VectorMeasure curvature_force(const Polygonal3& p) {
  const Polygonal3 q = sanitize(p);
  VectorMeasure m;
  const std::size_t segs = q.segment_count();
  std::vector<Vec3> t(segs);
  std::vector<double> cum(segs + 1, 0.0);
  for (std::size_t k = 0; k < segs; ++k) {
    const Vec3 s = q.segment(k);
    t[k] = s.normalized();
    cum[k + 1] = cum[k] + s.norm();
  }
  m.end = cum.back();
  for (std::size_t i = 1; i < segs; ++i) m.atoms.push_back(make_atom(cum[i], t[i - 1], t[i]));
  if (q.closed()) m.atoms.push_back(make_atom(0.0, t[segs - 1], t[0]));
  return m;
}

VectorMeasure curvature_force(const ParamCurve& c, const ForceOptions& options) {
  VectorMeasure m;
  m.begin = c.a;
  m.end = c.b;
  const double span = c.b - c.a;
  const double delta = 1e-9 * span;
  for (double s : c.corners) {
    if (s <= c.a || s >= c.b) continue;
    const Vec3 in = unit_or_zero(c.derivative(1, s - delta));
    const Vec3 out = unit_or_zero(c.derivative(1, s + delta));
    m.atoms.push_back(make_atom(s, in, out));
  }
  const bool framed = c.has_analytic_frame();
  if (!framed && c.analytic_order < 2) return m;

  m.density = sample_density(c.a, c.b, options.cells, [&](double s) -> Vec3 {
    if (framed) return c.curvature(s) * c.frame(s).n.vec();
    return c.derivative(2, s);
  });
  return m;
}

TotalCurvature tc_star(const VectorMeasure& curvature) {
  std::vector<double> angles;
  for (const auto& a : curvature.atoms) angles.push_back(a.angle);
  const double dv = curvature.density_variation();
  return TotalCurvature{curvature.atomic_variation() + dv, pairwise_sum(angles) + dv};
}

VectorMeasure torsion_force(const ParamCurve& c, const WeakIndicatrix& t_c, const ForceOptions& options) {
  VectorMeasure m;
  m.warnings = t_c.warnings;
  const GeodesicPolyline& poly = t_c.curve;
  const bool framed = c.has_analytic_frame();
  double total = poly.length();
  std::shared_ptr<CumulativeIntegral> k_cum;
  if (framed) {
    k_cum = cumulative_abs(c.curvature, c);
    total = k_cum->total();
  }
  m.end = total;
  if (total <= kZeroMass) return m;

  const double scale = poly.length() > 0.0 ? total / poly.length() : 0.0;
  const auto cum = poly.cum_length();
  const double threshold = framed ? options.corner_threshold : 1e-12;
  for (std::size_t i = 1; i < poly.arc_count(); ++i) {
    const Vec3 in = poly.arc_end_tangent(i - 1);
    const Vec3 out = poly.arc_start_tangent(i);
    Atom a = make_atom(cum[i] * scale, in, out);
    if (a.angle > threshold) m.atoms.push_back(a);
  }
  if (!framed) return m;

  m.density = sample_density(0.0, total, options.cells, [&](double x) -> Vec3 {
    const double s = k_cum->inverse(x);
    const double k = c.curvature(s);
    if (k <= kZeroMass) return Vec3::Zero();
    return (c.torsion(s) / k) * c.frame(s).b.vec();
  });
  return m;
}

VectorMeasure binormal_variation(const ParamCurve& c, const WeakIndicatrix& b_c, const ForceOptions& options) {
  VectorMeasure m;
  m.warnings = b_c.warnings;
  const GeodesicPolyline& poly = b_c.curve;
  const bool framed = c.has_analytic_frame();
  double total = poly.length();
  std::shared_ptr<CumulativeIntegral> t_cum;
  if (framed) {
    t_cum = cumulative_abs(c.torsion, c);
    total = t_cum->total();
  }
  m.end = total;
  if (total <= kZeroMass) return m;

  const double scale = poly.length() > 0.0 ? total / poly.length() : 0.0;
  const auto cum = poly.cum_length();
  const double threshold = framed ? options.corner_threshold : 1e-12;
  for (std::size_t i = 1; i < poly.arc_count(); ++i) {
    Vec3 in = poly.arc_end_tangent(i - 1);
    const Vec3 out = poly.arc_start_tangent(i);
    // One-sided velocities compare as lines in RP².
    if (in.dot(out) < 0.0) in = -in;
    Atom a = make_atom(cum[i] * scale, in, out);
    if (a.angle > threshold) m.atoms.push_back(a);
  }
  if (!framed) return m;

  m.density = sample_density(0.0, total, options.cells, [&](double x) -> Vec3 {
    const double s = t_cum->inverse(x);
    const double tau = c.torsion(s);
    if (std::abs(tau) <= kZeroMass) return Vec3::Zero();
    return (c.curvature(s) / tau) * c.frame(s).t.vec();
  });
  // Where τ vanishes on a stretch, the inverse of the cumulative torsion jumps.
  const std::size_t probes = 1024;
  bool any_flat = false;
  double prev = c.a;
  for (std::size_t j = 1; j <= probes && !any_flat; ++j) {
    const double s = t_cum->inverse(total * static_cast<double>(j) / static_cast<double>(probes));
    any_flat = s - prev > 0.05 * (c.b - c.a);
    prev = s;
  }
  if (any_flat) m.warnings.push_back("ZeroTorsionDensity: torsion vanishes on a stretch of positive length");
  return m;
}

std::vector<DarbouxSample> darboux_curvatures(const GeodesicPolyline& curve, double step) {
  std::vector<DarbouxSample> out;
  const std::size_t n = curve.size();
  if (n < 5 || curve.length() <= 0.0) return out;
  const auto pts = curve.points();
  const auto cum = curve.cum_length();
  const double mean = curve.length() / static_cast<double>(n - 1);
  const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(step / mean)));
  if (4 * m >= n) return out;

  auto second = [&](std::size_t j, std::size_t r) {
    const Vec3& p = pts[j].vec();
    const Vec3& pm = pts[j - r].vec();
    const Vec3& pp = pts[j + r].vec();
    const double hm = cum[j] - cum[j - r];
    const double hp = cum[j + r] - cum[j];
    return Vec3(2.0 * ((pp - p) / hp - (p - pm) / hm) / (hp + hm));
  };
  for (std::size_t j = 2 * m; j + 2 * m < n; j += m) {
    const Vec3 K = (4.0 * second(j, m) - second(j, 2 * m)) / 3.0;
    const Vec3 N = pts[j].vec();
    const Vec3 T = (pts[j + m].vec() - pts[j - m].vec()).normalized();
    out.push_back(DarbouxSample{cum[j], K.dot(N.cross(T)), K.dot(N)});
  }
  return out;
}

namespace {

struct IndicatrixData {
  std::shared_ptr<CumulativeIntegral> cum;
  double total = 0.0;
};

IndicatrixData indicatrix_data(const ParamCurve& c, VariationKind kind) {
  require_frame(c, "tangential fields");
  IndicatrixData d;
  d.cum = cumulative_abs(kind == VariationKind::BinormalLength ? c.torsion : c.curvature, c);
  d.total = d.cum->total();
  return d;
}

// Position and unit-speed velocity of the smooth indicatrix at its own parameter x.
std::pair<Vec3, Vec3> indicatrix_point(const ParamCurve& c, VariationKind kind, const CumulativeIntegral& cum, double x) {
  const double s = cum.inverse(x);
  const FrenetFrame f = c.frame(s);
  if (kind == VariationKind::BinormalLength) {
    const double sg = c.torsion(s) >= 0.0 ? 1.0 : -1.0;
    return {f.b.vec(), -sg * f.n.vec()};
  }
  return {f.t.vec(), f.n.vec()};
}

}  // namespace

TestField tangential_bump(const ParamCurve& c, VariationKind kind, double x0, double x1, const Vec3& w) {
  if (kind == VariationKind::Length) throw GeometryError(ErrorCode::InvalidArgument, "tangential fields live on an indicatrix");
  if (!(x1 > x0)) throw GeometryError(ErrorCode::InvalidArgument, "bump support must be a nonempty interval");
  const auto data = std::make_shared<IndicatrixData>(indicatrix_data(c, kind));
  TestField f;
  const double width = x1 - x0;
  f.value = [=](double x) -> Vec3 {
    if (x <= x0 || x >= x1) return Vec3::Zero();
    const double sn = std::sin(kPi * (x - x0) / width);
    const Vec3 p = indicatrix_point(c, kind, *data->cum, x).first;
    return sn * sn * (w - w.dot(p) * p);
  };
  f.derivative = [=](double x) -> Vec3 {
    if (x <= x0 || x >= x1) return Vec3::Zero();
    const double arg = kPi * (x - x0) / width;
    const double phi = std::sin(arg) * std::sin(arg);
    const double dphi = kPi / width * std::sin(2.0 * arg);
    const auto [p, v] = indicatrix_point(c, kind, *data->cum, x);
    return dphi * (w - w.dot(p) * p) - phi * (w.dot(v) * p + w.dot(p) * v);
  };
  return f;
}

std::vector<VariationResult> first_variation_check(const ParamCurve& c, const VectorMeasure& measure,
                                                   const std::vector<TestField>& fields, VariationKind kind,
                                                   std::size_t cells) {
  cells = std::max<std::size_t>(1, cells);
  double lo = c.a, hi = c.b;
  std::shared_ptr<CumulativeIntegral> cum;
  if (kind != VariationKind::Length) {
    const IndicatrixData d = indicatrix_data(c, kind);
    cum = d.cum;
    lo = 0.0;
    hi = d.total;
  }

  // Gauss nodes and the velocity of the curve whose length is varied.
  const double g = 0.5 / std::sqrt(3.0);
  const double h = (hi - lo) / static_cast<double>(cells);
  std::vector<double> nodes(2 * cells);
  std::vector<Vec3> velocity(2 * cells);
  parallel_for(cells, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const double mid = lo + (static_cast<double>(j) + 0.5) * h;
      for (int q = 0; q < 2; ++q) {
        const double x = mid + (q == 0 ? -g : g) * h;
        nodes[2 * j + q] = x;
        if (kind == VariationKind::Length) {
          velocity[2 * j + q] = unit_or_zero(c.derivative(1, x));
        } else if (hi - lo <= kZeroMass) {
          velocity[2 * j + q] = Vec3::Zero();
        } else {
          velocity[2 * j + q] = indicatrix_point(c, kind, *cum, x).second;
        }
      }
    }
  });

  std::vector<VariationResult> out;
  out.reserve(fields.size());
  for (const TestField& f : fields) {
    std::vector<double> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = 0.5 * h * velocity[i].dot(f.derivative(nodes[i]));
    VariationResult r;
    r.lhs = pairwise_sum(terms);
    r.rhs = -measure.pair(f.value);
    r.abs_mismatch = std::abs(r.lhs - r.rhs);
    const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_mismatch = scale > 1e-14 ? r.abs_mismatch / scale : r.abs_mismatch;
    out.push_back(r);
  }
  return out;
}

}  // namespace weakframe
