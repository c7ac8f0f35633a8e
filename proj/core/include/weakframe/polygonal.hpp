#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "weakframe/sphere.hpp"

namespace weakframe {

inline constexpr double kAlignTol = 1e-12;

// Vertices of an open or closed polygonal. Closed polygonals do not repeat the
// first vertex; segment k joins vertex k to vertex k+1 (mod n when closed).
class Polygonal3 {
 public:
  Polygonal3() = default;
  Polygonal3(std::vector<Vec3> vertices, bool closed);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t segment_count() const;
  Vec3 segment(std::size_t k) const;
  double length() const;
  double mesh() const;

 private:
  std::vector<Vec3> vertices_;
  bool closed_ = false;
};

Polygonal3 sanitize(const Polygonal3& p);

// Vertices where consecutive segments are antiparallel.
std::vector<std::size_t> return_points(const Polygonal3& p);

// Geodesic choice at points of return: the arc between t and −t passes through
// the normalized component of `direction` orthogonal to t.
struct ReturnPolicy {
  Vec3 direction = Vec3::UnitZ();
};

struct TurningAngle {
  std::size_t vertex;
  double angle;
};

struct TorsionAngle {
  std::size_t segment;
  double angle;  // signed, in [−π/2, π/2]
  double complete;  // sphere distance between the two binormals, in [0, π]
};

struct DiscreteFrenetData {
  bool closed = false;
  std::vector<UnitVec3> tangents;            // one per segment
  std::vector<std::size_t> binormal_vertices;
  std::vector<UnitVec3> binormals;           // one per interior (or, if closed, every) vertex
  std::vector<TurningAngle> turning;         // aligned with binormal_vertices
  std::vector<TorsionAngle> torsion;         // segments between two binormal vertices
  std::vector<std::size_t> return_points;
  double tc = 0.0;
  double tat = 0.0;
  double ct = 0.0;
};

DiscreteFrenetData discrete_frenet(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);

GeodesicPolyline tantrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);
GeodesicPolyline polar_curve(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);
GeodesicPolyline binormal_indicatrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);

// Turning angles of a projective polyline at its interior breakpoints, with
// one-sided directions compared as unoriented lines.
std::vector<double> projective_turning_angles(const GeodesicPolyline& c);

struct CurvatureAtom {
  std::size_t vertex;
  double weight;
};

struct TorsionDensity {
  std::size_t segment;
  double density;
  double length;
};

struct PolygonalMeasures {
  std::vector<CurvatureAtom> curvature_atoms;
  std::vector<TorsionDensity> torsion_density;

  double curvature_variation() const;
  double torsion_variation() const;
};

PolygonalMeasures polygonal_measures(const Polygonal3& p);

}  // namespace weakframe
