#include "weakframe/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "weakframe/parallel.hpp"

namespace weakframe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

double ParamCurve::clamp_to_domain(double s) const {
  const double slack = 1e-12 * std::max(1.0, b - a);
  if (!(s >= a - slack && s <= b + slack)) {
    throw GeometryError(ErrorCode::EvalOutOfDomain,
                        name + ": parameter " + std::to_string(s) + " outside [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
  }
  return std::clamp(s, a, b);
}

Vec3 ParamCurve::eval(double s) const { return position(clamp_to_domain(s)); }

double ParamCurve::map_sample(double u) const {
  if (sampling_map) return std::clamp(sampling_map(u), a, b);
  if (u <= 0.0) return a;
  if (u >= 1.0) return b;
  return a + (b - a) * u;
}

ParamCurve helix(double R, double K) {
  if (!(R > 0.0) || !(K >= 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "helix needs R > 0 and K >= 0");
  const double c = K / (2.0 * kPi);
  const double v = std::hypot(R, c);
  ParamCurve h;
  h.name = K == 0.0 ? "circle" : "helix";
  h.a = -kPi * v;
  h.b = kPi * v;
  h.arclength = true;
  h.position = [=](double s) -> Vec3 { return Vec3(R * std::cos(s / v), R * std::sin(s / v), c * s / v); };
  h.analytic_order = kMaxDerivativeOrder;
  h.derivative = [=](int m, double s) -> Vec3 {
    const double ang = s / v + m * kPi / 2.0;
    const double scale = R * std::pow(v, -m);
    return Vec3(scale * std::cos(ang), scale * std::sin(ang), m == 1 ? c / v : 0.0);
  };
  const double k = R / (v * v);
  const double tau = c / (v * v);
  h.curvature = [=](double) { return k; };
  h.torsion = [=](double) { return tau; };
  h.frame = [=](double s) -> FrenetFrame {
    const double cs = std::cos(s / v), sn = std::sin(s / v);
    FrenetFrame f;
    f.t = UnitVec3(-R * sn, R * cs, c);
    f.n = UnitVec3(-cs, -sn, 0.0);
    f.b = UnitVec3(c * sn, -c * cs, R);
    f.curvature = k;
    f.torsion = tau;
    return f;
  };
  return h;
}

ParamCurve circle(double R) { return helix(R, 0.0); }

ParamCurve straight_line(double length) {
  if (!(length > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "line needs positive length");
  ParamCurve l;
  l.name = "line";
  l.a = 0.0;
  l.b = length;
  l.arclength = true;
  l.position = [](double s) -> Vec3 { return Vec3(s, 0.0, 0.0); };
  l.analytic_order = kMaxDerivativeOrder;
  l.derivative = [](int m, double) -> Vec3 { return m == 1 ? Vec3(1.0, 0.0, 0.0) : Vec3::Zero().eval(); };
  l.curvature = [](double) { return 0.0; };
  l.torsion = [](double) { return 0.0; };
  l.frame = [](double) -> FrenetFrame {
    FrenetFrame f;
    f.t = UnitVec3(1.0, 0.0, 0.0);
    f.n = UnitVec3(0.0, 1.0, 0.0);
    f.b = UnitVec3(0.0, 0.0, 1.0);
    return f;
  };
  return l;
}

double inflection_height(double x) {
  if (std::abs(x) > 1.0) throw GeometryError(ErrorCode::EvalOutOfDomain, "inflection height needs |x| <= 1");
  // ∫_0^x √(1−u⁴) du = (x√(1−x⁴) + √2 (K(1/√2) − F(arccos x, 1/√2))) / 3
  const double m = 1.0 / kSqrt2;
  const double full = std::comp_ellint_1(m);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  const double r = std::sqrt(std::max(0.0, (1.0 - ax * ax) * (1.0 + ax * ax)));
  return sign * (ax * r + kSqrt2 * (full - std::ellint_1(m, std::acos(ax)))) / 3.0;
}

ParamCurve inflection_curve() {
  ParamCurve c;
  c.name = "inflection";
  c.a = -1.0;
  c.b = 1.0;
  c.arclength = true;
  const double z0 = inflection_height(1.0);
  c.position = [z0](double s) -> Vec3 {
    return Vec3((s + 1.0) / kSqrt2, (s * s * s + 1.0) / (3.0 * kSqrt2), (z0 + inflection_height(s)) / kSqrt2);
  };
  c.analytic_order = 3;
  c.derivative = [](int m, double s) -> Vec3 {
    const double s2 = s * s;
    const double w = (1.0 - s) * (1.0 + s) * (1.0 + s2);
    switch (m) {
      case 1: return Vec3(1.0, s2, std::sqrt(std::max(0.0, w))) / kSqrt2;
      case 2: return Vec3(0.0, kSqrt2 * s, -kSqrt2 * s * s2 / std::sqrt(w));
      case 3: return Vec3(0.0, kSqrt2, kSqrt2 * s2 * (s2 * s2 - 3.0) / std::pow(w, 1.5));
      default: throw GeometryError(ErrorCode::InvalidArgument, "inflection curve has analytic derivatives up to order 3");
    }
  };
  c.curvature = [](double s) { return kSqrt2 * std::abs(s) / std::sqrt((1.0 - s) * (1.0 + s) * (1.0 + s * s)); };
  c.torsion = [](double s) { return -kSqrt2 * s / std::sqrt((1.0 - s) * (1.0 + s) * (1.0 + s * s)); };
  c.frame = [k = c.curvature, tau = c.torsion](double s) -> FrenetFrame {
    FrenetFrame f;
    const double s2 = s * s;
    const double r = std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s) * (1.0 + s2)));
    f.t = UnitVec3(1.0, s2, r);
    if (s == 0.0) {
      f.n = UnitVec3(0.0, 1.0, 0.0);
      f.b = UnitVec3(-1.0, 0.0, 1.0);
      f.inflection_order = 3;
      return f;
    }
    const double sg = s > 0.0 ? 1.0 : -1.0;
    f.n = UnitVec3(0.0, sg * r, -sg * s2);
    f.b = UnitVec3(-sg, sg * s2, sg * r);
    f.curvature = k(s);
    f.torsion = tau(s);
    return f;
  };
  // Graded sampling: k and τ blow up like (1 ∓ s)^(-1/2) at the ends.
  c.sampling_map = [](double u) { return std::sin(kPi * (std::clamp(u, 0.0, 1.0) - 0.5)); };
  return c;
}

namespace {

struct FrameState {
  Vec3 p, t, n, b;
};

struct OdeNodes {
  double a = 0.0, h = 0.0;
  std::vector<FrameState> states;
};

class FrenetIntegrator {
 public:
  FrenetIntegrator(std::function<double(double)> k, std::function<double(double)> tau)
      : k_(std::move(k)), tau_(std::move(tau)) {}

  FrameState step(const FrameState& y, double s, double h, double* drift = nullptr) const {
    const FrameState k1 = rhs(y, s);
    const FrameState k2 = rhs(axpy(y, k1, h / 2), s + h / 2);
    const FrameState k3 = rhs(axpy(y, k2, h / 2), s + h / 2);
    const FrameState k4 = rhs(axpy(y, k3, h), s + h);
    FrameState out;
    out.p = y.p + h / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
    out.t = y.t + h / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t);
    out.n = y.n + h / 6 * (k1.n + 2 * k2.n + 2 * k3.n + k4.n);
    out.b = y.b + h / 6 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b);
    if (drift) {
      *drift = std::max({*drift, std::abs(out.t.dot(out.n)), std::abs(out.t.dot(out.b)), std::abs(out.n.dot(out.b)),
                         std::abs(out.t.norm() - 1.0)});
    }
    out.t.normalize();
    out.n = (out.n - out.n.dot(out.t) * out.t).normalized();
    out.b = out.t.cross(out.n);
    return out;
  }

  double profile_k(double s) const { return checked(k_, s, "curvature"); }
  double profile_tau(double s) const { return checked(tau_, s, "torsion"); }

 private:
  static double checked(const std::function<double(double)>& f, double s, const char* what) {
    const double v = f(s);
    if (!std::isfinite(v)) {
      throw GeometryError(ErrorCode::BlowUp, std::string(what) + " profile is not finite at s = " + std::to_string(s) +
                                                 "; stop the integration earlier (s_max)");
    }
    return v;
  }

  FrameState rhs(const FrameState& y, double s) const {
    const double k = profile_k(s);
    const double tau = profile_tau(s);
    return {y.t, k * y.n, -k * y.t + tau * y.b, -tau * y.n};
  }

  static FrameState axpy(const FrameState& y, const FrameState& d, double h) {
    return {y.p + h * d.p, y.t + h * d.t, y.n + h * d.n, y.b + h * d.b};
  }

  std::function<double(double)> k_, tau_;
};

FrameState initial_state() {
  return {Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
}

}  // namespace

OdeCurve frenet_ode_curve(std::function<double(double)> k_profile, std::function<double(double)> tau_profile, double a,
                          double b, const OdeOptions& options) {
  if (!(b > a)) throw GeometryError(ErrorCode::InvalidArgument, "ODE curve needs a < b");
  OdeCurve out;
  double end = b;
  if (options.s_max && *options.s_max < b) {
    end = *options.s_max;
    out.truncated = true;
  }
  if (!(end > a)) throw GeometryError(ErrorCode::InvalidArgument, "s_max must exceed the domain start");

  auto integ = std::make_shared<FrenetIntegrator>(k_profile, tau_profile);
  auto endpoint = [&](std::size_t n) {
    const double h = (end - a) / static_cast<double>(n);
    FrameState y = initial_state();
    for (std::size_t j = 0; j < n; ++j) y = integ->step(y, a + h * static_cast<double>(j), h);
    return y.p;
  };

  std::size_t n = std::max<std::size_t>(options.initial_steps, 2);
  Vec3 prev = endpoint(n);
  bool settled = false;
  while (2 * n <= options.max_steps) {
    n *= 2;
    const Vec3 cur = endpoint(n);
    if ((cur - prev).norm() < options.endpoint_tol) {
      settled = true;
      break;
    }
    prev = cur;
  }
  if (!settled) {
    throw GeometryError(ErrorCode::BlowUp, "step doubling did not settle the endpoint within " +
                                               std::to_string(options.max_steps) + " steps; lower s_max");
  }

  auto nodes = std::make_shared<OdeNodes>();
  nodes->a = a;
  nodes->h = (end - a) / static_cast<double>(n);
  nodes->states.reserve(n + 1);
  nodes->states.push_back(initial_state());
  double drift = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    nodes->states.push_back(integ->step(nodes->states.back(), a + nodes->h * static_cast<double>(j), nodes->h, &drift));
  }
  out.steps = n;
  out.max_frame_drift = drift;

  auto state_at = [nodes, integ](double s) {
    const std::size_t last = nodes->states.size() - 1;
    const double x = (s - nodes->a) / nodes->h;
    std::size_t j = x <= 0.0 ? 0 : std::min(static_cast<std::size_t>(std::floor(x)), last);
    const double sj = nodes->a + nodes->h * static_cast<double>(j);
    const double ds = s - sj;
    if (std::abs(ds) <= 1e-14 * nodes->h) return nodes->states[j];
    return integ->step(nodes->states[j], sj, ds);
  };

  ParamCurve& c = out.curve;
  c.name = "frenet-ode";
  c.a = a;
  c.b = end;
  c.arclength = true;
  c.position = [state_at](double s) -> Vec3 { return state_at(s).p; };
  c.analytic_order = 2;
  c.derivative = [state_at, integ](int m, double s) -> Vec3 {
    const FrameState y = state_at(s);
    if (m == 1) return y.t;
    if (m == 2) return (integ->profile_k(s) * y.n).eval();
    throw GeometryError(ErrorCode::InvalidArgument, "ODE curve has analytic derivatives up to order 2");
  };
  c.curvature = [integ](double s) { return integ->profile_k(s); };
  c.torsion = [integ](double s) { return integ->profile_tau(s); };
  c.frame = [state_at, integ](double s) -> FrenetFrame {
    const FrameState y = state_at(s);
    FrenetFrame f;
    f.t = UnitVec3(y.t);
    f.n = UnitVec3(y.n);
    f.b = UnitVec3(y.b);
    f.curvature = integ->profile_k(s);
    f.torsion = integ->profile_tau(s);
    return f;
  };
  return out;
}

ParamCurve polygonal_curve(const Polygonal3& p) {
  auto cum = std::make_shared<std::vector<double>>();
  const std::size_t n = p.segment_count();
  cum->push_back(0.0);
  for (std::size_t k = 0; k < n; ++k) cum->push_back(cum->back() + p.segment(k).norm());
  auto poly = std::make_shared<Polygonal3>(p);

  auto segment_at = [cum, n](double s) {
    auto it = std::upper_bound(cum->begin(), cum->end(), s);
    std::size_t k = it == cum->begin() ? 0 : static_cast<std::size_t>(it - cum->begin()) - 1;
    return std::min(k, n - 1);
  };

  ParamCurve c;
  c.name = "polygonal";
  c.a = 0.0;
  c.b = cum->back();
  c.arclength = true;
  c.position = [poly, cum, segment_at](double s) -> Vec3 {
    const std::size_t k = segment_at(s);
    const double len = (*cum)[k + 1] - (*cum)[k];
    const Vec3& v0 = poly->vertices()[k];
    return (v0 + poly->segment(k) * ((s - (*cum)[k]) / len)).eval();
  };
  c.analytic_order = kMaxDerivativeOrder;
  c.derivative = [poly, segment_at](int m, double s) -> Vec3 {
    if (m == 1) return poly->segment(segment_at(s)).normalized().eval();
    return Vec3::Zero().eval();
  };
  for (std::size_t k = 1; k < n; ++k) c.corners.push_back((*cum)[k]);
  return c;
}

Vec3 curve_derivative(const ParamCurve& c, int m, double s, const FrameOptions& options) {
  if (m < 1 || m > kMaxDerivativeOrder) throw GeometryError(ErrorCode::InvalidArgument, "derivative order out of range");
  s = c.clamp_to_domain(s);
  const bool analytic = !options.numeric && c.derivative && c.analytic_order >= 1;
  if (analytic && m <= c.analytic_order) return c.derivative(m, s);
  if (!analytic && !options.numeric) {
    throw GeometryError(ErrorCode::FrameUndefined, c.name + ": no analytic derivatives and numeric ones not requested");
  }
  const int q = analytic ? c.analytic_order : 0;
  const int r = m - q;
  auto g = [&](double x) -> Vec3 { return q == 0 ? c.position(x) : c.derivative(q, x); };
  const double H = r <= 2 ? options.h : std::max(options.h, std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (r + 2)));
  const int half = (r + 1) / 2;
  const double lo = c.a + half * H, hi = c.b - half * H;
  const double x = lo <= hi ? std::clamp(s, lo, hi) : 0.5 * (c.a + c.b);
  switch (r) {
    case 1: return (g(x + H) - g(x - H)) / (2 * H);
    case 2: return (g(x + H) - 2 * g(x) + g(x - H)) / (H * H);
    case 3: return (g(x + 2 * H) - 2 * g(x + H) + 2 * g(x - H) - g(x - 2 * H)) / (2 * H * H * H);
    case 4: return (g(x + 2 * H) - 4 * g(x + H) + 6 * g(x) - 4 * g(x - H) + g(x - 2 * H)) / std::pow(H, 4);
    default:
      return (g(x + 3 * H) - 4 * g(x + 2 * H) + 5 * g(x + H) - 5 * g(x - H) + 4 * g(x - 2 * H) - g(x - 3 * H)) /
             (2 * std::pow(H, 5));
  }
}

FrenetFrame frame_at(const ParamCurve& c, double s, const FrameOptions& options) {
  const Vec3 d1 = curve_derivative(c, 1, s, options);
  const Vec3 d2 = curve_derivative(c, 2, s, options);
  const double speed = d1.norm();
  if (!(speed > 0.0)) throw GeometryError(ErrorCode::FrameUndefined, c.name + ": curve is not regular here");
  const UnitVec3 t(d1);
  FrenetFrame f;
  f.t = t;
  const Vec3 perp = d2 - d2.dot(t.vec()) * t.vec();
  if (perp.norm() / (speed * speed) > kInflectionTol) {
    const Vec3 d3 = curve_derivative(c, 3, s, options);
    const Vec3 cr = d1.cross(d2);
    f.n = UnitVec3(perp);
    f.b = UnitVec3(t.vec().cross(f.n.vec()));
    f.curvature = cr.norm() / (speed * speed * speed);
    f.torsion = cr.dot(d3) / cr.squaredNorm();
    return f;
  }
  for (int m = 3; m <= kMaxDerivativeOrder; ++m) {
    const Vec3 dm = curve_derivative(c, m, s, options);
    const Vec3 w = dm - dm.dot(t.vec()) * t.vec();
    if (w.norm() > kInflectionTol) {
      f.b = UnitVec3(t.vec().cross(w));
      f.n = UnitVec3(f.b.vec().cross(t.vec()));
      f.inflection_order = m;
      return f;
    }
  }
  throw GeometryError(ErrorCode::FrameUndefined,
                      c.name + ": derivatives up to order " + std::to_string(kMaxDerivativeOrder) + " are parallel to t");
}

double point_set_diameter(const std::vector<Vec3>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  }
  return std::sqrt(best);
}

Inscription inscribe(const ParamCurve& c, const std::vector<double>& params, bool with_modulus) {
  if (params.size() < 2) throw GeometryError(ErrorCode::InvalidArgument, "inscription needs at least two parameters");
  for (std::size_t i = 1; i < params.size(); ++i) {
    if (!(params[i] > params[i - 1])) {
      throw GeometryError(ErrorCode::InvalidArgument, "inscription parameters must be strictly increasing");
    }
  }
  for (double s : params) c.clamp_to_domain(s);
  const double slack = 1e-12 * std::max(1.0, c.b - c.a);
  if (std::abs(params.front() - c.a) > slack || std::abs(params.back() - c.b) > slack) {
    throw GeometryError(ErrorCode::InvalidArgument, "inscription parameters must include both domain endpoints");
  }

  const std::size_t n = params.size();
  std::vector<Vec3> v(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) v[i] = c.eval(params[i]);
  });

  Inscription out;
  out.params = params;
  std::vector<double> diam(n - 1, 0.0);
  if (with_modulus) {
    parallel_for(n - 1, [&](std::size_t begin, std::size_t end) {
      std::vector<Vec3> pts(kModulusSamples);
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = 0; j < kModulusSamples; ++j) {
          const double u = static_cast<double>(j) / static_cast<double>(kModulusSamples - 1);
          pts[j] = j == 0 ? v[i] : j + 1 == kModulusSamples ? v[i + 1] : c.eval(params[i] + u * (params[i + 1] - params[i]));
        }
        diam[i] = point_set_diameter(pts);
      }
    });
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.mesh = std::max(out.mesh, (v[i + 1] - v[i]).norm());
    out.modulus = std::max(out.modulus, diam[i]);
  }
  out.polygonal = Polygonal3(std::move(v), false);
  return out;
}

}  // namespace weakframe
