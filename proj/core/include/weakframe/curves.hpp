#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weakframe/polygonal.hpp"

namespace weakframe {

inline constexpr double kInflectionTol = 1e-8;
inline constexpr int kMaxDerivativeOrder = 5;

struct FrenetFrame {
  UnitVec3 t, n, b;
  double curvature = 0.0;
  double torsion = 0.0;
  int inflection_order = 2;  // order of the first derivative not parallel to t
};

struct ParamCurve {
  std::string name;
  double a = 0.0;
  double b = 1.0;
  std::function<Vec3(double)> position;
  // d^m c / ds^m for 1 <= m <= analytic_order.
  std::function<Vec3(int, double)> derivative;
  int analytic_order = 0;
  bool arclength = false;

  std::function<double(double)> curvature;
  std::function<double(double)> torsion;
  std::function<FrenetFrame(double)> frame;

  // Maps refinement parameters u in [0, 1] to the domain; linear when empty.
  std::function<double(double)> sampling_map;
  // Parameters where the tangent jumps.
  std::vector<double> corners;

  Vec3 eval(double s) const;
  double clamp_to_domain(double s) const;
  double map_sample(double u) const;
  bool has_analytic_frame() const { return curvature && torsion && frame; }
};

ParamCurve helix(double R, double K);
ParamCurve circle(double R);
ParamCurve straight_line(double length);
ParamCurve inflection_curve();

// ∫_0^x √(1 − u⁴) du for |x| <= 1.
double inflection_height(double x);

struct OdeOptions {
  std::size_t initial_steps = 1024;
  double endpoint_tol = 1e-8;
  std::size_t max_steps = std::size_t{1} << 22;
  std::optional<double> s_max;  // integration stops here when below the domain end
};

struct OdeCurve {
  ParamCurve curve;
  std::size_t steps = 0;
  double max_frame_drift = 0.0;
  bool truncated = false;
};

// Integrates ṫ = k n, ṅ = −k t + τ b, ḃ = −τ n, ċ = t from c(a) = 0 with the
// standard frame; positions between nodes come from one RK4 step.
OdeCurve frenet_ode_curve(std::function<double(double)> k_profile, std::function<double(double)> tau_profile, double a,
                          double b, const OdeOptions& options = {});

// Arc-length parameterization of a polygonal, with its vertices as corners.
ParamCurve polygonal_curve(const Polygonal3& p);

struct FrameOptions {
  bool numeric = false;
  double h = 1e-5;
};

FrenetFrame frame_at(const ParamCurve& c, double s, const FrameOptions& options = {});

// d^m c / ds^m, analytic when available (or numeric on top of the highest
// analytic order), central differences otherwise when allowed.
Vec3 curve_derivative(const ParamCurve& c, int m, double s, const FrameOptions& options = {});

struct Inscription {
  Polygonal3 polygonal;
  std::vector<double> params;
  double mesh = 0.0;
  double modulus = 0.0;
};

inline constexpr std::size_t kModulusSamples = 64;

Inscription inscribe(const ParamCurve& c, const std::vector<double>& params, bool with_modulus = true);

// Diameter of a point set.
double point_set_diameter(const std::vector<Vec3>& pts);

}  // namespace weakframe
