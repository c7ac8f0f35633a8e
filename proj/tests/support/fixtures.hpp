#pragma once

#include <Eigen/Geometry>
#include <numbers>
#include <random>

#include "weakframe/polygonal.hpp"

namespace weakframe::testing {

inline constexpr double kPi = std::numbers::pi;
inline const double kSqrt2 = std::sqrt(2.0);

inline Polygonal3 staircase() {
  return Polygonal3({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}, false);
}

inline Polygonal3 planar_zigzag() {
  return Polygonal3({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {2, 1, 0}, {2, 2, 0}}, false);
}

inline Polygonal3 unit_square() {
  return Polygonal3({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, true);
}

// Gaussian vertices, sanitized; 4 to 14 vertices before sanitizing.
inline Polygonal3 random_polygonal(std::mt19937_64& rng, bool closed = false) {
  std::uniform_int_distribution<int> count(4, 14);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> v(static_cast<std::size_t>(count(rng)));
  for (auto& p : v) p = Vec3(g(rng), g(rng), g(rng));
  return sanitize(Polygonal3(v, closed));
}

inline UnitVec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return UnitVec3(g(rng), g(rng), g(rng));
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  return q.normalized().toRotationMatrix();
}

template <typename F>
Polygonal3 transform(const Polygonal3& p, F&& f) {
  std::vector<Vec3> v;
  for (const Vec3& x : p.vertices()) v.push_back(f(x));
  return Polygonal3(v, p.closed());
}

}  // namespace weakframe::testing
