#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "weakframe/errors.hpp"

namespace weakframe {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr double kUnitTol = 1e-12;
inline constexpr double kCanonTol = 1e-9;
inline constexpr double kAntipodalTol = 1e-9;

// Point of S². The constructor normalizes.
class UnitVec3 {
 public:
  UnitVec3() : v_(0.0, 0.0, 1.0) {}
  explicit UnitVec3(const Vec3& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const UnitVec3& o) const { return v_.dot(o.v_); }
  UnitVec3 operator-() const;

 private:
  struct Trusted {};
  UnitVec3(const Vec3& v, Trusted) : v_(v) {}
  Vec3 v_;
};

// Point of RP², stored by its canonical representative.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(const UnitVec3& v);
  explicit ProjPoint(const Vec3& v) : ProjPoint(UnitVec3(v)) {}

  const UnitVec3& rep() const { return rep_; }
  bool operator==(const ProjPoint& o) const { return rep_.vec() == o.rep_.vec(); }

 private:
  UnitVec3 rep_;
};

UnitVec3 canonical(const UnitVec3& v);

double sphere_distance(const UnitVec3& a, const UnitVec3& b);
double proj_distance(const ProjPoint& p, const ProjPoint& q);
double proj_distance(const UnitVec3& a, const UnitVec3& b);

UnitVec3 slerp(const UnitVec3& a, const UnitVec3& b, double lambda);

// Rotate a about the unit axis by angle (right-hand rule).
UnitVec3 rotate_about(const UnitVec3& a, const UnitVec3& axis, double angle);

// Unit tangent at `from` of the minimal geodesic towards `to`.
Vec3 geodesic_direction(const UnitVec3& from, const UnitVec3& to);

double arc_angle_at_junction(const UnitVec3& prev_start, const UnitVec3& mid, const UnitVec3& next_end);

// Turning angle of an unoriented junction: min(a, π − a).
inline double fold_angle(double a) { return a < 1.5707963267948966 ? a : 3.141592653589793 - a; }

Vec6 veronese(const UnitVec3& v);

enum class Space { Sphere, Projective };

// Constant-speed piecewise-geodesic curve. For the projective space the stored
// points are representatives in a lifted chart: consecutive ones have a
// nonnegative dot product, so every arc is the minimal sphere arc between them.
class GeodesicPolyline {
 public:
  GeodesicPolyline() = default;
  GeodesicPolyline(Space space, std::vector<UnitVec3> points);

  // Projective polyline through the classes of `points`; representatives are
  // flipped where needed so that each arc is minimal.
  static GeodesicPolyline projective_lifted(const std::vector<UnitVec3>& points);

  Space space() const { return space_; }
  std::span<const UnitVec3> points() const { return points_; }
  std::span<const double> cum_length() const { return cum_; }
  std::size_t size() const { return points_.size(); }
  std::size_t arc_count() const { return points_.empty() ? 0 : points_.size() - 1; }
  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }
  ProjPoint proj_point(std::size_t i) const { return ProjPoint(points_[i]); }

  // Evaluation by arc length, clamped to [0, length()]; representative in the stored chart.
  UnitVec3 at(double s) const;
  UnitVec3 at_fraction(double u) const { return at(u * length()); }
  std::size_t arc_index(double s) const;

  // Unit tangents of arc i at its start and end point.
  Vec3 arc_start_tangent(std::size_t i) const;
  Vec3 arc_end_tangent(std::size_t i) const;

 private:
  Space space_ = Space::Sphere;
  std::vector<UnitVec3> points_;
  std::vector<double> cum_;
};

struct Lift {
  GeodesicPolyline curve;  // on S²
  // 0 for open inputs; for closed ones +1 when the lift closes up, −1 when it ends at −seed.
  int closing_sign = 0;
};

Lift lift_projective_polyline(const GeodesicPolyline& c, const UnitVec3& seed);

}  // namespace weakframe
