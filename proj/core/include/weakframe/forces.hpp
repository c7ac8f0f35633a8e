#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weakframe/curves.hpp"
#include "weakframe/weak_limits.hpp"

namespace weakframe {

struct Atom {
  double param;
  Vec3 weight;
  double angle;  // turning angle θ, so that ‖weight‖ = 2 sin(θ/2)
};

struct DensityCell {
  double param;  // cell midpoint
  Vec3 value;
  double step;
};

// Atoms plus a piecewise-constant density on a quadrature grid.
struct VectorMeasure {
  double begin = 0.0;
  double end = 0.0;
  std::vector<Atom> atoms;
  std::vector<DensityCell> density;
  std::vector<std::string> warnings;

  double atomic_variation() const;
  double density_variation() const;
  double total_variation() const { return atomic_variation() + density_variation(); }
  double pair(const std::function<Vec3(double)>& field) const;
};

struct ForceOptions {
  std::size_t cells = 4096;
  // Junctions of a weak indicatrix of a smooth curve turning more than this are corners.
  double corner_threshold = 0.1;
};

VectorMeasure curvature_force(const Polygonal3& p);
VectorMeasure curvature_force(const ParamCurve& c, const ForceOptions& options = {});

struct TotalCurvature {
  double tc_star = 0.0;
  double tc = 0.0;
};

TotalCurvature tc_star(const VectorMeasure& curvature);

VectorMeasure torsion_force(const ParamCurve& c, const WeakIndicatrix& t_c, const ForceOptions& options = {});
VectorMeasure binormal_variation(const ParamCurve& c, const WeakIndicatrix& b_c, const ForceOptions& options = {});

struct DarbouxSample {
  double param;
  double geodesic;
  double normal;
};

// Geodesic and normal curvature of a unit-speed spherical polyline from
// Richardson-extrapolated second differences at breakpoints spaced about `step` apart.
std::vector<DarbouxSample> darboux_curvatures(const GeodesicPolyline& curve, double step = 0.01);

struct TestField {
  std::function<Vec3(double)> value;
  std::function<Vec3(double)> derivative;
};

enum class VariationKind {
  Length,         // δ L(c) against curvature_force, fields on the arc-length domain
  TantrixLength,  // δ L(t_c) against torsion_force, fields on [0, TC]
  BinormalLength  // δ L(b_c) against binormal_variation, fields on [0, TAT]
};

struct VariationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_mismatch = 0.0;
  double rel_mismatch = 0.0;
};

// Left side by two-point Gauss quadrature on `cells` cells, right side as −⟨measure, ξ⟩.
std::vector<VariationResult> first_variation_check(const ParamCurve& c, const VectorMeasure& measure,
                                                   const std::vector<TestField>& fields, VariationKind kind,
                                                   std::size_t cells = 4096);

// Bump field φ(x)·(w − (w·p)p) supported on [x0, x1], tangent to S² along the
// smooth indicatrix p (tantrix for TantrixLength, lifted binormal for BinormalLength).
TestField tangential_bump(const ParamCurve& c, VariationKind kind, double x0, double x1, const Vec3& w);

}  // namespace weakframe
