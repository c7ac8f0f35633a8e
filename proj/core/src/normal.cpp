#include "weakframe/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakframe {

namespace {

struct Arcs {
  std::size_t count;  // tantrix arcs γ_1..γ_count
  // γ_i joins tangents[from(i)] to tangents[to(i)] around binormals[pole(i)].
  std::size_t from(std::size_t i) const { return i - 1; }
  std::size_t to(std::size_t i) const { return closed ? i % count : i; }
  std::size_t pole(std::size_t i) const { return closed ? i % count : i - 1; }
  bool closed;
};

Arcs arcs_of(const DiscreteFrenetData& d) {
  return Arcs{d.closed ? d.tangents.size() : d.tangents.size() - 1, d.closed};
}

// |θ| of the polar arc between the poles of γ_{i−1} and γ_i.
double polar_step(const DiscreteFrenetData& d, std::size_t i) {
  return std::abs(d.torsion[d.closed ? i - 1 : i - 2].angle);
}

}  // namespace

ScheduleTable normal_schedule(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  const DiscreteFrenetData d = discrete_frenet(p, policy);
  const Arcs a = arcs_of(d);
  ScheduleTable s;
  s.closed = d.closed;
  s.C.assign(a.count + 1, 0.0);
  s.T.assign(a.count + 1, 0.0);
  for (std::size_t i = 1; i <= a.count; ++i) {
    s.C[i] = s.C[i - 1] + d.turning[a.pole(i)].angle;
    if (i >= 2) s.T[i] = s.T[i - 1] + polar_step(d, i);
  }
  if (d.closed) s.closing_torsion = std::abs(d.torsion[0].angle);
  return s;
}

InterleavedPair::InterleavedPair(std::vector<InterleavedPiece> pieces) : pieces_(std::move(pieces)) {}

double InterleavedPair::tangent_length() const {
  double l = 0.0;
  for (const auto& p : pieces_) {
    if (p.kind == PieceKind::Tangent) l += p.s1 - p.s0;
  }
  return l;
}

double InterleavedPair::binormal_length() const { return length() - tangent_length(); }

std::size_t InterleavedPair::piece_index(double s) const {
  if (pieces_.empty()) throw GeometryError(ErrorCode::DegeneratePolygonal, "empty interleaved pair");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                             [](double v, const InterleavedPiece& p) { return v < p.s0; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

UnitVec3 InterleavedPair::tangent(double s) const {
  const auto& p = pieces_[piece_index(s)];
  if (p.kind == PieceKind::Binormal) return p.t0;
  return rotate_about(p.t0, p.axis, std::clamp(s, p.s0, p.s1) - p.s0);
}

UnitVec3 InterleavedPair::binormal(double s) const {
  const auto& p = pieces_[piece_index(s)];
  if (p.kind == PieceKind::Tangent) return p.b0;
  return rotate_about(p.b0, p.axis, std::clamp(s, p.s0, p.s1) - p.s0);
}

UnitVec3 InterleavedPair::normal(double s) const { return UnitVec3(binormal(s).vec().cross(tangent(s).vec())); }

InterleavedPair interleaved_pair(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  const DiscreteFrenetData d = discrete_frenet(p, policy);
  const Arcs a = arcs_of(d);
  std::vector<InterleavedPiece> pieces;
  double s = 0.0;
  UnitVec3 b_hat = d.binormals[a.pole(1)];

  auto add_binormal_piece = [&](const UnitVec3& t, const UnitVec3& next_pole) {
    const UnitVec3 b1 = b_hat.dot(next_pole) >= 0.0 ? next_pole : -next_pole;
    const double len = sphere_distance(b_hat, b1);
    if (len > 0.0) {
      pieces.push_back({PieceKind::Binormal, s, s + len, t, b_hat, UnitVec3(b_hat.vec().cross(b1.vec()))});
      s += len;
    }
    b_hat = b1;
  };

  for (std::size_t i = 1; i <= a.count; ++i) {
    const UnitVec3& t_start = d.tangents[a.from(i)];
    if (i >= 2) add_binormal_piece(t_start, d.binormals[a.pole(i)]);
    const double len = d.turning[a.pole(i)].angle;
    if (len > 0.0) {
      pieces.push_back({PieceKind::Tangent, s, s + len, t_start, b_hat, d.binormals[a.pole(i)]});
      s += len;
    }
  }
  if (d.closed) add_binormal_piece(d.tangents[0], d.binormals[a.pole(1)]);
  if (pieces.empty()) {
    throw GeometryError(ErrorCode::DegeneratePolygonal, "interleaved pair needs TC + TAT > 0");
  }
  return InterleavedPair(std::move(pieces));
}

NormalIndicatrix normal_indicatrix(const InterleavedPair& pair) {
  constexpr double kMaxArc = std::numbers::pi / 2 - 1e-6;
  NormalIndicatrix out;
  std::vector<UnitVec3> pts;
  const auto& pieces = pair.pieces();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    const double len = p.s1 - p.s0;
    const auto parts = static_cast<std::size_t>(std::floor(len / kMaxArc)) + 1;
    for (std::size_t j = 0; j < parts; ++j) {
      const double s = p.s0 + len * static_cast<double>(j) / static_cast<double>(parts);
      const UnitVec3 t = p.kind == PieceKind::Tangent ? rotate_about(p.t0, p.axis, s - p.s0) : p.t0;
      const UnitVec3 b = p.kind == PieceKind::Binormal ? rotate_about(p.b0, p.axis, s - p.s0) : p.b0;
      pts.emplace_back(b.vec().cross(t.vec()));
      out.is_junction.push_back(j == 0 && k > 0);
      out.arc_kinds.push_back(p.kind);
    }
  }
  const auto& last = pieces.back();
  const UnitVec3 t_end = last.kind == PieceKind::Tangent ? rotate_about(last.t0, last.axis, last.s1 - last.s0) : last.t0;
  const UnitVec3 b_end = last.kind == PieceKind::Binormal ? rotate_about(last.b0, last.axis, last.s1 - last.s0) : last.b0;
  pts.emplace_back(b_end.vec().cross(t_end.vec()));
  out.is_junction.push_back(false);
  out.curve = GeodesicPolyline(Space::Projective, std::move(pts));
  return out;
}

NormalIndicatrix normal_indicatrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy) {
  return normal_indicatrix(interleaved_pair(p, policy));
}

std::vector<JunctionAngle> mixed_junction_angles(const NormalIndicatrix& n) {
  std::vector<JunctionAngle> out;
  auto pts = n.curve.points();
  const std::size_t m = pts.size();
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (n.is_junction[i] && n.arc_kinds[i - 1] != n.arc_kinds[i]) {
      out.push_back({i, arc_angle_at_junction(pts[i - 1], pts[i], pts[i + 1])});
    }
  }
  if (m >= 3 && n.arc_kinds.front() != n.arc_kinds.back() && proj_distance(pts.front(), pts.back()) < kUnitTol) {
    const UnitVec3 next = pts.back().dot(pts.front()) > 0.0 ? pts[1] : -pts[1];
    out.push_back({m - 1, arc_angle_at_junction(pts[m - 2], pts[m - 1], next)});
  }
  return out;
}

}  // namespace weakframe
