#pragma once

#include <optional>
#include <vector>

#include "weakframe/polygonal.hpp"

namespace weakframe {

// Cumulative tantrix and polar lengths. C[i] sums the first i tantrix arcs,
// T[i] the polar arcs Γ_2..Γ_i, so T[0] = T[1] = 0. For closed polygonals the
// schedule starts at segment 0 and the closing polar arc is kept apart.
struct ScheduleTable {
  std::vector<double> C;
  std::vector<double> T;
  double closing_torsion = 0.0;
  bool closed = false;

  double total() const { return C.back() + T.back() + closing_torsion; }
};

ScheduleTable normal_schedule(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);

enum class PieceKind { Tangent, Binormal };

// One interval on which exactly one of t̃, b̃ moves, rotating about `axis`.
struct InterleavedPiece {
  PieceKind kind;
  double s0, s1;
  UnitVec3 t0, b0;  // representatives at s0, b in the lifted chart
  UnitVec3 axis;
};

class InterleavedPair {
 public:
  explicit InterleavedPair(std::vector<InterleavedPiece> pieces);

  const std::vector<InterleavedPiece>& pieces() const { return pieces_; }
  double length() const { return pieces_.empty() ? 0.0 : pieces_.back().s1; }
  double tangent_length() const;
  double binormal_length() const;

  UnitVec3 tangent(double s) const;
  UnitVec3 binormal(double s) const;
  UnitVec3 normal(double s) const;

 private:
  std::size_t piece_index(double s) const;
  std::vector<InterleavedPiece> pieces_;
};

InterleavedPair interleaved_pair(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);

struct NormalIndicatrix {
  GeodesicPolyline curve;            // projective, arc-length parameterized
  std::vector<PieceKind> arc_kinds;  // per arc of `curve`
  std::vector<bool> is_junction;     // per breakpoint: boundary between pieces
};

NormalIndicatrix normal_indicatrix(const Polygonal3& p, const std::optional<ReturnPolicy>& policy = std::nullopt);
NormalIndicatrix normal_indicatrix(const InterleavedPair& pair);

struct JunctionAngle {
  std::size_t breakpoint;
  double angle;
};

// Turning angles at junctions where a tangent piece meets a binormal piece.
std::vector<JunctionAngle> mixed_junction_angles(const NormalIndicatrix& n);

}  // namespace weakframe
