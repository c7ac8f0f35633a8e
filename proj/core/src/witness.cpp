#include "weakframe/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "weakframe/parallel.hpp"

namespace weakframe {

namespace {

constexpr std::size_t kCells = 16;
constexpr double kPhiMargin = 0.15;

// Three vertices in the plane z = 0, the shared vertex at the origin, and three
// vertices in the plane through the x-axis at dihedral angle phi.
struct Config {
  double phi = 1.0;
  std::array<double, 12> xy{};
};

std::vector<Vec3> vertices_of(const Config& c) {
  std::vector<Vec3> v;
  for (int i = 0; i < 3; ++i) v.emplace_back(c.xy[2 * i], c.xy[2 * i + 1], 0.0);
  v.emplace_back(0.0, 0.0, 0.0);
  const double cs = std::cos(c.phi), sn = std::sin(c.phi);
  for (int i = 3; i < 6; ++i) v.emplace_back(c.xy[2 * i], c.xy[2 * i + 1] * cs, c.xy[2 * i + 1] * sn);
  return v;
}

constexpr double kMinSegment = 5e-2;
constexpr double kMinTurn = 5e-2;

// Rejects short segments and turning angles near 0 or π, where the torsion
// angles are ill-conditioned.
bool well_separated(const std::vector<Vec3>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if ((v[i + 1] - v[i]).norm() < kMinSegment) return false;
  }
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Vec3 a = v[i] - v[i - 1], b = v[i + 1] - v[i];
    const double turn = std::atan2(a.cross(b).norm(), a.dot(b));
    if (turn < kMinTurn || turn > std::numbers::pi - kMinTurn) return false;
  }
  return true;
}

std::optional<Witness> evaluate(const Config& c) {
  std::vector<Vec3> v = vertices_of(c);
  std::vector<std::size_t> kept{0, 1, 2, 4, 5, 6};
  std::vector<Vec3> vp;
  for (std::size_t i : kept) vp.push_back(v[i]);
  if (!well_separated(v) || !well_separated(vp)) return std::nullopt;
  Witness w;
  w.p = Polygonal3(std::move(v), false);
  w.p_prime = Polygonal3(std::move(vp), false);
  w.kept = std::move(kept);
  const DiscreteFrenetData d = discrete_frenet(w.p);
  const DiscreteFrenetData dp = discrete_frenet(w.p_prime);
  w.tat_p = d.tat;
  w.tat_p_prime = dp.tat;
  w.tc_p = d.tc;
  w.tc_p_prime = dp.tc;
  w.length_p = w.p.length();
  w.length_p_prime = w.p_prime.length();
  w.dihedral = c.phi;
  if (w.tc_p_prime > w.tc_p || w.length_p_prime > w.length_p) return std::nullopt;
  return w;
}

double objective(const std::optional<Witness>& w) { return w ? w->gap() : -1e300; }

}  // namespace

Witness nonmonotonicity_witness(const WitnessOptions& options) {
  if (options.budget < 2 * kCells) throw GeometryError(ErrorCode::InvalidArgument, "witness budget too small");
  const std::size_t per_cell = options.budget / 2 / kCells;
  const double phi_span = (std::numbers::pi - 2 * kPhiMargin) / kCells;

  struct Best {
    Config config;
    std::optional<Witness> witness;
  };
  std::vector<Best> cell_best(kCells);
  parallel_for(kCells, [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      std::mt19937_64 rng(options.seed + 0x9E3779B97F4A7C15ULL * (cell + 1));
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> phi(kPhiMargin + phi_span * cell, kPhiMargin + phi_span * (cell + 1));
      Best best;
      for (std::size_t k = 0; k < per_cell; ++k) {
        Config c;
        c.phi = phi(rng);
        for (double& x : c.xy) x = unit(rng);
        auto w = evaluate(c);
        if (objective(w) > objective(best.witness)) best = {c, std::move(w)};
      }
      cell_best[cell] = std::move(best);
    }
  });

  Best best;
  for (auto& b : cell_best) {
    if (objective(b.witness) > objective(best.witness)) best = std::move(b);
  }

  // Local perturbation around the best grid sample.
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t steps = options.budget - per_cell * kCells;
  for (std::size_t k = 0; k < steps && best.witness; ++k) {
    const double scale = 0.1 * (1.0 - static_cast<double>(k) / static_cast<double>(steps)) + 1e-3;
    Config c = best.config;
    c.phi = std::clamp(c.phi + scale * noise(rng), kPhiMargin, std::numbers::pi - kPhiMargin);
    for (double& x : c.xy) x = std::clamp(x + scale * noise(rng), -1.0, 1.0);
    auto w = evaluate(c);
    if (objective(w) > objective(best.witness)) best = {c, std::move(w)};
  }

  if (!best.witness || best.witness->gap() <= options.min_gap) {
    throw GeometryError(ErrorCode::SearchFailed, "no witness with TAT(P') - TAT(P) > " + std::to_string(options.min_gap) +
                                                     " within " + std::to_string(options.budget) + " evaluations");
  }
  best.witness->evaluations = options.budget;
  return *best.witness;
}

}  // namespace weakframe
