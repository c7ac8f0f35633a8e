#include "weakframe/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakframe {

UnitVec3::UnitVec3(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError(ErrorCode::DegenerateVector, "cannot normalize a zero or non-finite vector");
  }
  v_ = v / n;
}

UnitVec3 UnitVec3::operator-() const { return UnitVec3(Vec3(-v_), Trusted{}); }

UnitVec3 canonical(const UnitVec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v.vec()[i]) > kCanonTol) {
      return v.vec()[i] > 0.0 ? v : -v;
    }
  }
  return v;
}

ProjPoint::ProjPoint(const UnitVec3& v) : rep_(canonical(v)) {}

double sphere_distance(const UnitVec3& a, const UnitVec3& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), a.dot(b));
}

double proj_distance(const UnitVec3& a, const UnitVec3& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), std::abs(a.dot(b)));
}

double proj_distance(const ProjPoint& p, const ProjPoint& q) { return proj_distance(p.rep(), q.rep()); }

UnitVec3 slerp(const UnitVec3& a, const UnitVec3& b, double lambda) {
  const double d = sphere_distance(a, b);
  if (d > std::numbers::pi - kAntipodalTol) {
    throw GeometryError(ErrorCode::AntipodalPair, "slerp between antipodal points");
  }
  if (d == 0.0) return a;
  const double s = std::sin(d);
  return UnitVec3(a.vec() * (std::sin((1.0 - lambda) * d) / s) + b.vec() * (std::sin(lambda * d) / s));
}

UnitVec3 rotate_about(const UnitVec3& a, const UnitVec3& axis, double angle) {
  const Vec3& k = axis.vec();
  const Vec3& v = a.vec();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return UnitVec3(v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c)));
}

Vec3 geodesic_direction(const UnitVec3& from, const UnitVec3& to) {
  const Vec3 w = to.vec() - to.dot(from) * from.vec();
  const double n = w.norm();
  if (n <= 1e-14) {
    throw GeometryError(ErrorCode::DegenerateArc, "geodesic direction undefined for coincident or antipodal points");
  }
  return w / n;
}

double arc_angle_at_junction(const UnitVec3& prev_start, const UnitVec3& mid, const UnitVec3& next_end) {
  const Vec3 in = -geodesic_direction(mid, prev_start);
  const Vec3 out = geodesic_direction(mid, next_end);
  return std::atan2(in.cross(out).norm(), in.dot(out));
}

Vec6 veronese(const UnitVec3& v) {
  const double h = std::numbers::sqrt2 / 2.0;
  const double x = v.x(), y = v.y(), z = v.z();
  Vec6 g;
  g << h * x * x, h * y * y, h * z * z, x * y, y * z, z * x;
  return g;
}

GeodesicPolyline::GeodesicPolyline(Space space, std::vector<UnitVec3> points)
    : space_(space), points_(std::move(points)) {
  cum_.reserve(points_.size());
  if (points_.empty()) return;
  cum_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const UnitVec3& a = points_[i - 1];
    const UnitVec3& b = points_[i];
    const double d = sphere_distance(a, b);
    if (space_ == Space::Sphere && d > std::numbers::pi - kAntipodalTol) {
      throw GeometryError(ErrorCode::AntipodalPair, "consecutive breakpoints " + std::to_string(i - 1) + " and " +
                                                        std::to_string(i) + " are antipodal");
    }
    if (space_ == Space::Projective && a.dot(b) < -kUnitTol) {
      throw GeometryError(ErrorCode::InvalidArgument, "projective breakpoints are not in a lifted chart");
    }
    cum_.push_back(cum_.back() + d);
  }
}

GeodesicPolyline GeodesicPolyline::projective_lifted(const std::vector<UnitVec3>& points) {
  std::vector<UnitVec3> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) {
    if (lifted.empty() || lifted.back().dot(p) >= 0.0) {
      lifted.push_back(p);
    } else {
      lifted.push_back(-p);
    }
  }
  return GeodesicPolyline(Space::Projective, std::move(lifted));
}

std::size_t GeodesicPolyline::arc_index(double s) const {
  if (points_.size() < 2) return 0;
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
  return std::min(i, points_.size() - 2);
}

UnitVec3 GeodesicPolyline::at(double s) const {
  if (points_.empty()) throw GeometryError(ErrorCode::InvalidArgument, "empty polyline");
  if (points_.size() == 1) return points_.front();
  s = std::clamp(s, 0.0, length());
  const std::size_t i = arc_index(s);
  const double len = cum_[i + 1] - cum_[i];
  if (len <= 0.0) return points_[i];
  return slerp(points_[i], points_[i + 1], std::clamp((s - cum_[i]) / len, 0.0, 1.0));
}

Vec3 GeodesicPolyline::arc_start_tangent(std::size_t i) const { return geodesic_direction(points_[i], points_[i + 1]); }

Vec3 GeodesicPolyline::arc_end_tangent(std::size_t i) const {
  return -geodesic_direction(points_[i + 1], points_[i]);
}

Lift lift_projective_polyline(const GeodesicPolyline& c, const UnitVec3& seed) {
  if (c.size() == 0) throw GeometryError(ErrorCode::InvalidArgument, "empty polyline");
  auto pts = c.points();
  if (proj_distance(seed, pts[0]) > kCanonTol) {
    throw GeometryError(ErrorCode::InvalidArgument, "seed does not represent the first breakpoint");
  }
  std::vector<UnitVec3> out;
  out.reserve(pts.size());
  out.push_back(seed.dot(pts[0]) >= 0.0 ? pts[0] : -pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = out.back().dot(pts[i]);
    if (std::abs(d) < std::sin(kCanonTol)) {
      throw GeometryError(ErrorCode::AmbiguousLift,
                          "breakpoints " + std::to_string(i - 1) + " and " + std::to_string(i) + " are at distance π/2");
    }
    out.push_back(d > 0.0 ? pts[i] : -pts[i]);
  }
  Lift lift;
  if (proj_distance(out.front(), out.back()) <= kUnitTol) {
    lift.closing_sign = out.front().dot(out.back()) > 0.0 ? 1 : -1;
  }
  lift.curve = GeodesicPolyline(Space::Sphere, std::move(out));
  return lift;
}

}  // namespace weakframe
