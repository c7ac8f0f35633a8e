#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace weakframe;
using namespace weakframe::testing;

namespace {

const UnitVec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);

TEST(SphereDistance, Basics) {
  EXPECT_DOUBLE_EQ(sphere_distance(e1, e1), 0.0);
  EXPECT_DOUBLE_EQ(sphere_distance(e1, e2), kPi / 2);
  EXPECT_DOUBLE_EQ(sphere_distance(e1, -e1), kPi);
}

TEST(SphereDistance, AccurateForTinyAngles) {
  const double a = 1e-10;
  EXPECT_NEAR(sphere_distance(e1, UnitVec3(std::cos(a), std::sin(a), 0)), a, 1e-22);
}

TEST(ProjDistance, Basics) {
  EXPECT_DOUBLE_EQ(proj_distance(e1, e1), 0.0);
  EXPECT_DOUBLE_EQ(proj_distance(e1, -e1), 0.0);
  EXPECT_DOUBLE_EQ(proj_distance(e1, e2), kPi / 2);
  EXPECT_EQ(ProjPoint(e1), ProjPoint(-e1));
}

TEST(ProjDistance, FoldsSphereDistance) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const UnitVec3 a = random_unit(rng), b = random_unit(rng);
    const double d = sphere_distance(a, b);
    EXPECT_NEAR(proj_distance(a, b), std::min(d, kPi - d), 1e-14);
    EXPECT_NEAR(proj_distance(ProjPoint(a), ProjPoint(b)), std::min(d, kPi - d), 1e-14);
  }
}

TEST(UnitVec3, RejectsZero) {
  EXPECT_THROW(UnitVec3(0, 0, 0), GeometryError);
}

TEST(Canonical, PicksOneRepresentative) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const UnitVec3 v = random_unit(rng);
    EXPECT_EQ(canonical(v).vec(), canonical(-v).vec());
  }
}

TEST(Slerp, Examples) {
  const UnitVec3 m = slerp(e1, e2, 0.5);
  EXPECT_NEAR((m.vec() - Vec3(1, 1, 0) / kSqrt2).norm(), 0.0, 1e-15);
  const UnitVec3 third = slerp(e1, e2, 1.0 / 3.0);
  const Vec3 oracle = Eigen::AngleAxisd(kPi / 6, Vec3::UnitZ()) * Vec3::UnitX();
  EXPECT_NEAR((third.vec() - oracle).norm(), 0.0, 1e-15);
  EXPECT_NEAR((slerp(e3, e3, 0.7).vec() - e3.vec()).norm(), 0.0, 0.0);
}

TEST(Slerp, SplitsTheArcProportionally) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const UnitVec3 a = random_unit(rng), b = random_unit(rng);
    if (sphere_distance(a, b) > kPi - 1e-3) continue;
    const double l = u(rng);
    const UnitVec3 m = slerp(a, b, l);
    const double d = sphere_distance(a, b);
    EXPECT_NEAR(sphere_distance(a, m), l * d, 1e-12);
    EXPECT_NEAR(sphere_distance(m, b), (1 - l) * d, 1e-12);
  }
}

TEST(Slerp, AntipodalIsAnError) {
  EXPECT_THROW(slerp(e1, -e1, 0.5), GeometryError);
}

TEST(RotateAbout, QuarterTurn) {
  EXPECT_NEAR((rotate_about(e1, e3, kPi / 2).vec() - e2.vec()).norm(), 0.0, 1e-15);
}

TEST(JunctionAngle, Examples) {
  EXPECT_NEAR(arc_angle_at_junction(e1, e2, UnitVec3(-1, 0, 0)), 0.0, 1e-12);
  const Vec3 in = -geodesic_direction(e2, e1);
  const Vec3 out = geodesic_direction(e2, e3);
  EXPECT_NEAR(arc_angle_at_junction(e1, e2, e3), std::acos(in.dot(out)), 1e-15);
  EXPECT_NEAR(arc_angle_at_junction(e1, e2, e3), kPi / 2, 1e-15);
  EXPECT_NEAR(arc_angle_at_junction(e1, e2, e1), kPi, 1e-15);
}

TEST(Veronese, ConstantNormAndEven) {
  const Vec6 g = veronese(e1);
  EXPECT_NEAR(g.norm(), kSqrt2 / 2, 1e-15);
  EXPECT_NEAR(g(0), kSqrt2 / 2, 1e-15);
  const UnitVec3 v(0.6, 0.8, 0);
  EXPECT_EQ(veronese(v), veronese(-v));
}

TEST(Veronese, IsometricUpToChord) {
  // |g(a) − g(b)| = sin d with d the projective distance.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const UnitVec3 a = random_unit(rng), b = random_unit(rng);
    EXPECT_NEAR(veronese(a).norm(), kSqrt2 / 2, 1e-14);
    EXPECT_NEAR((veronese(a) - veronese(b)).norm(), std::sin(proj_distance(a, b)), 1e-13);
  }
}

TEST(Veronese, EquatorImageLength) {
  // Fine polygonal image of the equator, traversed once on S²: twice a circle of radius 1/2.
  const int n = 20000;
  double len = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n, b = 2 * kPi * (i + 1) / n;
    len += (veronese(UnitVec3(std::cos(a), std::sin(a), 0)) - veronese(UnitVec3(std::cos(b), std::sin(b), 0))).norm();
  }
  EXPECT_NEAR(len, 2 * kPi * 0.5 * 2, 1e-6);
}

TEST(GeodesicPolyline, LengthAndEvaluation) {
  const GeodesicPolyline c(Space::Sphere, {e1, e2, e3});
  EXPECT_NEAR(c.length(), kPi, 1e-15);
  EXPECT_NEAR((c.at(kPi / 4).vec() - Vec3(1, 1, 0) / kSqrt2).norm(), 0.0, 1e-15);
  EXPECT_EQ(c.arc_index(3 * kPi / 4), 1u);
  EXPECT_NEAR((c.at(10.0).vec() - e3.vec()).norm(), 0.0, 0.0);
}

TEST(GeodesicPolyline, ProjectiveFlipsRepresentatives) {
  const auto c = GeodesicPolyline::projective_lifted({e1, UnitVec3(-1, -1, 0)});
  EXPECT_NEAR(c.length(), kPi / 4, 1e-15);
  EXPECT_GE(c.points()[0].dot(c.points()[1]), 0.0);
}

TEST(Lift, OrthogonalBreakpointsAreAmbiguous) {
  try {
    lift_projective_polyline(GeodesicPolyline::projective_lifted({e1, e2}), e1);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::AmbiguousLift);
  }
}

TEST(Lift, SinglePoint) {
  const Lift l = lift_projective_polyline(GeodesicPolyline::projective_lifted({e3}), -e3);
  ASSERT_EQ(l.curve.size(), 1u);
  EXPECT_EQ(l.curve.points()[0].vec(), -e3.vec());
}

TEST(Lift, NearestChoiceForced) {
  const UnitVec3 m(1, 1, 0);
  const Lift l = lift_projective_polyline(GeodesicPolyline::projective_lifted({e1, m}), e1);
  EXPECT_NEAR((l.curve.points()[1].vec() - m.vec()).norm(), 0.0, 1e-15);
  EXPECT_EQ(l.closing_sign, 0);
}

TEST(Lift, ClosedHalfTurnEndsAtMinusSeed) {
  std::vector<UnitVec3> pts;
  for (int i = 0; i <= 8; ++i) pts.emplace_back(std::cos(kPi * i / 8), std::sin(kPi * i / 8), 0);
  const Lift l = lift_projective_polyline(GeodesicPolyline::projective_lifted(pts), e1);
  EXPECT_EQ(l.closing_sign, -1);
  EXPECT_NEAR(l.curve.length(), kPi, 1e-14);
}

TEST(Lift, ClosedPolarOfPlanarSquareIsConstant) {
  const GeodesicPolyline b = polar_curve(unit_square());
  const Lift l = lift_projective_polyline(b, e3);
  EXPECT_NEAR(l.curve.length(), 0.0, 1e-15);
  EXPECT_EQ(std::abs(l.closing_sign), 1);
}

TEST(Lift, SeedMustRepresentTheFirstPoint) {
  EXPECT_THROW(lift_projective_polyline(GeodesicPolyline::projective_lifted({e1, UnitVec3(1, 1, 0)}), e2),
               GeometryError);
}

}  // namespace
