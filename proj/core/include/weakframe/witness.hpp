#pragma once

#include <cstdint>
#include <vector>

#include "weakframe/polygonal.hpp"

namespace weakframe {

struct WitnessOptions {
  std::uint64_t seed = 20240611;
  std::size_t budget = 60000;  // objective evaluations
  double min_gap = 1e-3;
};

// A six-segment polygonal P whose first three segments lie in one plane and
// last three in another, and P′ obtained by dropping the vertex shared by the
// planes, with TAT(P′) > TAT(P).
struct Witness {
  Polygonal3 p;
  Polygonal3 p_prime;
  std::vector<std::size_t> kept;  // indices into p's vertices forming p_prime
  double tat_p = 0.0, tat_p_prime = 0.0;
  double tc_p = 0.0, tc_p_prime = 0.0;
  double length_p = 0.0, length_p_prime = 0.0;
  double dihedral = 0.0;
  std::size_t evaluations = 0;

  double gap() const { return tat_p_prime - tat_p; }
};

Witness nonmonotonicity_witness(const WitnessOptions& options = {});

}  // namespace weakframe
