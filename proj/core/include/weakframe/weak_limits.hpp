#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakframe/curves.hpp"
#include "weakframe/normal.hpp"

namespace weakframe {

enum class Schedule { Uniform, RandomNested };

struct RefineOptions {
  std::size_t levels = 8;
  std::size_t base_n = 64;
  Schedule schedule = Schedule::Uniform;
  std::uint64_t seed = 1;
  bool with_modulus = true;
  std::optional<ReturnPolicy> policy;
};

struct Level {
  std::vector<double> params;
  Polygonal3 polygonal;  // sanitized
  std::size_t segments = 0;
  double mesh = 0.0;
  double modulus = 0.0;
  double tc = 0.0;
  double tat = 0.0;
  double ct = 0.0;
  double tantrix_velocity_variation = 0.0;
};

struct RefinementSequence {
  std::string curve_name;
  std::vector<Level> levels;
  std::optional<ReturnPolicy> policy;

  const Level& final_level() const { return levels.back(); }
};

RefinementSequence refine(const ParamCurve& c, const RefineOptions& options);
RefinementSequence refine(const ParamCurve& c, std::size_t levels, std::size_t base_n);

// Refines a polygonal viewed as a curve parameterized by arc length; closed
// inputs give closed levels.
RefinementSequence refine_polygonal(const Polygonal3& p, const RefineOptions& options);

struct WeakOptions {
  double tol = 1e-3;
  std::size_t grid = 1024;
};

struct WeakIndicatrix {
  GeodesicPolyline curve;
  double total_length = 0.0;
  double cauchy_gap = 0.0;
  std::vector<double> level_lengths;
  std::vector<double> level_gaps;  // gap between level h and h−1, h >= 1
  bool converged = false;
  double product_identity_gap = 0.0;  // weak normal only
  std::vector<std::string> warnings;
};

// Sup distance over a uniform grid between the constant-speed
// reparameterizations of two curves onto a common interval.
double reparameterized_gap(const GeodesicPolyline& a, const GeodesicPolyline& b, std::size_t grid = 1024);

// True when the last increments of a level sequence stop shrinking.
bool looks_divergent(const std::vector<double>& values);

// These report non-convergence through WeakIndicatrix::converged.
WeakIndicatrix compute_weak_tantrix(const RefinementSequence& seq, const WeakOptions& options = {});
WeakIndicatrix compute_weak_binormal(const RefinementSequence& seq, const WeakOptions& options = {});
WeakIndicatrix compute_weak_normal(const RefinementSequence& seq, const WeakOptions& options = {});

// These throw NotConverged instead.
WeakIndicatrix weak_tantrix(const RefinementSequence& seq, const WeakOptions& options = {});
WeakIndicatrix weak_binormal(const RefinementSequence& seq, const WeakOptions& options = {});
WeakIndicatrix weak_normal(const RefinementSequence& seq, const WeakOptions& options = {});

struct IdentityCheck {
  std::string name;
  bool applicable = false;
  double max_deviation = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

struct IdentityOptions {
  std::size_t grid = 64;
  double tol = 1e-2;
  WeakOptions weak;
};

IdentityReport verify_reparam_identities(const ParamCurve& c, const RefinementSequence& seq,
                                         const IdentityOptions& options = {});

}  // namespace weakframe
