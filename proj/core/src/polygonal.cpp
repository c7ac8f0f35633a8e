#include "weakframe/polygonal.hpp"

#include <cmath>
#include <numbers>

namespace weakframe {

namespace {

bool aligned(const Vec3& a, const Vec3& b) {
  return a.cross(b).norm() <= kAlignTol * a.norm() * b.norm();
}

double bbox_diagonal(const std::vector<Vec3>& v) {
  Vec3 lo = v.front(), hi = v.front();
  for (const auto& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

UnitVec3 any_perpendicular(const UnitVec3& t) {
  Eigen::Index axis;
  t.vec().cwiseAbs().minCoeff(&axis);
  return UnitVec3(t.vec().cross(Vec3::Unit(axis)));
}

}  // namespace

Polygonal3::Polygonal3(std::vector<Vec3> vertices, bool closed) : vertices_(std::move(vertices)), closed_(closed) {
  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw GeometryError(ErrorCode::InvalidArgument, "non-finite vertex coordinate");
  }
  const std::size_t need = closed_ ? 3 : 2;
  if (vertices_.size() < need) {
    throw GeometryError(ErrorCode::DegeneratePolygonal, std::string(closed_ ? "closed" : "open") +
                                                            " polygonal needs at least " + std::to_string(need) +
                                                            " vertices, got " + std::to_string(vertices_.size()));
  }
}

std::size_t Polygonal3::segment_count() const {
  if (vertices_.empty()) return 0;
  return closed_ ? vertices_.size() : vertices_.size() - 1;
}

Vec3 Polygonal3::segment(std::size_t k) const {
  const std::size_t n = vertices_.size();
  return vertices_[(k + 1) % n] - vertices_[k % n];
}

double Polygonal3::length() const {
  double l = 0.0;
  for (std::size_t k = 0; k < segment_count(); ++k) l += segment(k).norm();
  return l;
}

double Polygonal3::mesh() const {
  double m = 0.0;
  for (std::size_t k = 0; k < segment_count(); ++k) m = std::max(m, segment(k).norm());
  return m;
}

Polygonal3 sanitize(const Polygonal3& p) {
  const auto& in = p.vertices();
  const double zero_tol = 1e-14 * bbox_diagonal(in);
  std::vector<Vec3> out;
  out.reserve(in.size());
  for (const auto& v : in) {
    if (!out.empty() && (v - out.back()).norm() <= zero_tol) continue;
    while (out.size() >= 2) {
      const Vec3 a = out.back() - out[out.size() - 2];
      const Vec3 b = v - out.back();
      if (aligned(a, b) && a.dot(b) > 0.0) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(v);
  }
  if (p.closed()) {
    while (out.size() >= 2 && (out.back() - out.front()).norm() <= zero_tol) out.pop_back();
    bool changed = true;
    while (changed && out.size() >= 3) {
      changed = false;
      const std::size_t n = out.size();
      Vec3 a = out[0] - out[n - 1];
      Vec3 b = out[1] - out[0];
      if (aligned(a, b) && a.dot(b) > 0.0) {
        out.erase(out.begin());
        changed = true;
        continue;
      }
      a = out[n - 1] - out[n - 2];
      b = out[0] - out[n - 1];
      if (aligned(a, b) && a.dot(b) > 0.0) {
        out.pop_back();
        changed = true;
      }
    }
  }
  const std::size_t need = p.closed() ? 3 : 2;
  if (out.size() < need) {
    throw GeometryError(ErrorCode::DegeneratePolygonal,
                        "only " + std::to_string(out.size()) + " distinct vertices survive sanitization");
  }
  return Polygonal3(std::move(out), p.closed());
}

std::vector<std::size_t> return_points(const Polygonal3& p) {
  std::vector<std::size_t> r;
  const std::size_t n = p.vertex_count();
  const std::size_t first = p.closed() ? 0 : 1;
  const std::size_t last = p.closed() ? n : n - 1;
  for (std::size_t j = first; j < last; ++j) {
    const Vec3 a = p.segment((j + n - 1) % n);
    const Vec3 b = p.segment(j);
    if (aligned(a, b) && a.dot(b) < 0.0) r.push_back(j);
  }
  return r;
}

DiscreteFrenetData discrete_frenet(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  const std::size_t n = p.segment_count();
  const std::size_t nv = p.vertex_count();
  DiscreteFrenetData d;
  d.closed = p.closed();
  d.tangents.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 s = p.segment(k);
    if (s.norm() == 0.0) {
      throw GeometryError(ErrorCode::DegeneratePolygonal, "segment " + std::to_string(k) + " has zero length");
    }
    d.tangents.emplace_back(s);
  }

  const std::size_t first = p.closed() ? 0 : 1;
  const std::size_t last = p.closed() ? nv : nv - 1;
  std::vector<std::optional<UnitVec3>> b;
  for (std::size_t j = first; j < last; ++j) {
    const std::size_t kp = (j + n - 1) % n;
    const Vec3 a = p.segment(kp);
    const Vec3 c = p.segment(j % n);
    const Vec3 x = a.cross(c);
    d.binormal_vertices.push_back(j);
    d.turning.push_back({j, sphere_distance(d.tangents[kp], d.tangents[j % n])});
    if (x.norm() > kAlignTol * a.norm() * c.norm()) {
      b.emplace_back(UnitVec3(x));
    } else if (a.dot(c) > 0.0) {
      b.emplace_back(std::nullopt);
    } else {
      d.return_points.push_back(j);
      if (!policy) {
        throw GeometryError(ErrorCode::AmbiguousReturnPoint,
                            "point of return at vertex " + std::to_string(j) + " and no geodesic choice given");
      }
      const Vec3& t = d.tangents[kp].vec();
      const Vec3 m = policy->direction - policy->direction.dot(t) * t;
      if (m.norm() < 1e-9) {
        throw GeometryError(ErrorCode::AmbiguousReturnPoint, "return direction is parallel to the tangent at vertex " +
                                                                 std::to_string(j));
      }
      b.emplace_back(UnitVec3(t.cross(m)));
    }
  }

  // Aligned pairs inherit the previous binormal; a leading run takes the first defined one.
  std::size_t m = b.size();
  std::optional<std::size_t> f;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i]) {
      f = i;
      break;
    }
  }
  if (!f) {
    const UnitVec3 q = any_perpendicular(d.tangents.front());
    for (auto& x : b) x = q;
  } else if (p.closed()) {
    for (std::size_t i = 1; i < m; ++i) {
      auto& cur = b[(*f + i) % m];
      if (!cur) cur = b[(*f + i - 1) % m];
    }
  } else {
    for (std::size_t i = 0; i < *f; ++i) b[i] = b[*f];
    for (std::size_t i = *f + 1; i < m; ++i) {
      if (!b[i]) b[i] = b[i - 1];
    }
  }
  d.binormals.reserve(m);
  for (auto& x : b) d.binormals.push_back(*x);

  auto add_torsion = [&](std::size_t segment, const UnitVec3& b0, const UnitVec3& b1) {
    const double complete = sphere_distance(b0, b1);
    const double folded = fold_angle(complete);
    double theta = 0.0;
    if (folded > 0.0) {
      const double s = b0.vec().cross(b1.vec()).dot(p.segment(segment));
      theta = s < 0.0 ? -folded : folded;
    }
    d.torsion.push_back({segment, theta, complete});
  };
  if (p.closed()) {
    for (std::size_t k = 0; k < n; ++k) add_torsion(k, d.binormals[k], d.binormals[(k + 1) % n]);
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) add_torsion(k, d.binormals[k - 1], d.binormals[k]);
  }

  for (const auto& a : d.turning) d.tc += a.angle;
  for (const auto& t : d.torsion) {
    d.tat += std::abs(t.angle);
    d.ct += t.complete;
  }
  return d;
}

GeodesicPolyline tantrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  const DiscreteFrenetData d = discrete_frenet(p, policy);
  const std::size_t n = d.tangents.size();
  std::vector<bool> is_return(p.vertex_count(), false);
  for (std::size_t j : d.return_points) is_return[j] = true;
  std::vector<UnitVec3> pts;
  pts.reserve(n + d.return_points.size() + 1);
  auto push_vertex = [&](std::size_t j, const UnitVec3& next) {
    if (is_return[j]) {
      const Vec3& t = pts.back().vec();
      pts.emplace_back(policy->direction - policy->direction.dot(t) * t);
    }
    pts.push_back(next);
  };
  pts.push_back(d.tangents[0]);
  for (std::size_t k = 1; k < n; ++k) push_vertex(k, d.tangents[k]);
  if (p.closed()) push_vertex(0, d.tangents[0]);
  return GeodesicPolyline(Space::Sphere, std::move(pts));
}

namespace {

GeodesicPolyline polar_from(const DiscreteFrenetData& d) {
  std::vector<UnitVec3> pts(d.binormals.begin(), d.binormals.end());
  if (d.closed) pts.push_back(d.binormals.front());
  std::vector<UnitVec3> kept;
  kept.reserve(pts.size());
  for (const auto& b : pts) {
    if (!kept.empty()) {
      const UnitVec3 lifted = kept.back().dot(b) >= 0.0 ? b : -b;
      if (sphere_distance(kept.back(), lifted) < 1e-14) continue;
      kept.push_back(lifted);
    } else {
      kept.push_back(b);
    }
  }
  return GeodesicPolyline(Space::Projective, std::move(kept));
}

}  // namespace

GeodesicPolyline polar_curve(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  if (!p.closed() && p.segment_count() < 3) {
    throw GeometryError(ErrorCode::DegeneratePolygonal, "polar curve needs at least 3 segments");
  }
  return polar_from(discrete_frenet(p, policy));
}

GeodesicPolyline binormal_indicatrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  GeodesicPolyline c = polar_curve(p, policy);
  if (c.length() == 0.0) throw GeometryError(ErrorCode::ZeroTorsion, "polygonal is planar (TAT = 0)");
  return c;
}

std::vector<double> projective_turning_angles(const GeodesicPolyline& c) {
  std::vector<double> out;
  auto pts = c.points();
  const std::size_t n = pts.size();
  for (std::size_t i = 1; i + 1 < n; ++i) out.push_back(fold_angle(arc_angle_at_junction(pts[i - 1], pts[i], pts[i + 1])));
  if (n >= 3 && proj_distance(pts.front(), pts.back()) < kUnitTol) {
    const UnitVec3 next = pts.back().dot(pts.front()) > 0.0 ? pts[1] : -pts[1];
    out.push_back(fold_angle(arc_angle_at_junction(pts[n - 2], pts[n - 1], next)));
  }
  return out;
}

double PolygonalMeasures::curvature_variation() const {
  double s = 0.0;
  for (const auto& a : curvature_atoms) s += std::abs(a.weight);
  return s;
}

double PolygonalMeasures::torsion_variation() const {
  double s = 0.0;
  for (const auto& t : torsion_density) s += std::abs(t.density) * t.length;
  return s;
}

PolygonalMeasures polygonal_measures(const Polygonal3& p) {
  const DiscreteFrenetData d = discrete_frenet(p);
  PolygonalMeasures m;
  for (const auto& a : d.turning) {
    if (a.angle > 0.0) m.curvature_atoms.push_back({a.vertex, a.angle});
  }
  for (const auto& t : d.torsion) {
    if (t.angle != 0.0) {
      const double len = p.segment(t.segment).norm();
      m.torsion_density.push_back({t.segment, t.angle / len, len});
    }
  }
  return m;
}

}  // namespace weakframe
