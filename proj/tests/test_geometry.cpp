#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "collide/analytic.hpp"
#include "collide/errors.hpp"
#include "collide/geometry.hpp"
#include "collide/random.hpp"
#include "collide/sampling.hpp"
#include "collide/stats.hpp"

using namespace collide;
using namespace collide::geometry;

namespace {

// Residual of |w|^2 s^2 + 2 w.(X1 - X2) s + |X1 - X2|^2 - 4 r^2 at s.
double quadratic_residual(const VelocityPair& p, double r, double s)
{
  double w_sq = 0.0;
  for (std::size_t k = 0; k < p.v1.size(); ++k)
    w_sq += (p.v1[k] - p.v2[k]) * (p.v1[k] - p.v2[k]);
  const double w1 = p.v1[0] - p.v2[0];
  return w_sq * s * s - 4.0 * w1 * s + 4.0 - 4.0 * r * r;
}

// Distance between the two centres at time s.
double centre_gap(const VelocityPair& p, double s)
{
  double g = 0.0;
  for (std::size_t k = 0; k < p.v1.size(); ++k) {
    const double a = (k == 0 ? -1.0 : 0.0) + s * p.v1[k];
    const double b = (k == 0 ? 1.0 : 0.0) + s * p.v2[k];
    g += (a - b) * (a - b);
  }
  return std::sqrt(g);
}

}  // namespace

TEST(ComSplit, Examples)
{
  auto s = com_split({{1, 0}, {-1, 0}});
  EXPECT_EQ(s.v_bar, (Vector{0, 0}));
  EXPECT_EQ(s.v_c, (Vector{1, 0}));

  s = com_split({{1, 0}, {0, 0}});
  EXPECT_EQ(s.v_bar, (Vector{0.5, 0}));
  EXPECT_EQ(s.v_c, (Vector{0.5, 0}));

  s = com_split({{0.3, -2.0}, {0.3, -2.0}});
  EXPECT_EQ(s.v_c, (Vector{0, 0}));
  EXPECT_FALSE(collision_criterion({{0.3, -2.0}, {0.3, -2.0}}, 0.5));
  EXPECT_FALSE(collision_time({{0.3, -2.0}, {0.3, -2.0}}, 0.5));
}

TEST(ComSplit, ReconstructsPair)
{
  auto rng = random::trial_stream(5, 0);
  for (int i = 0; i < 100; ++i) {
    const auto pair = sampling::sample_velocity_pair(rng, 4);
    const auto s = com_split(pair);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(s.v_bar[k] + s.v_c[k], pair.v1[k], 1e-15);
      EXPECT_NEAR(s.v_bar[k] - s.v_c[k], pair.v2[k], 1e-15);
    }
  }
}

TEST(VelocityPair, RejectsMismatchedDimensions)
{
  EXPECT_THROW(com_split({{1, 0}, {1}}), DomainError);
  EXPECT_THROW(collision_time({{}, {}}, 0.5), DomainError);
}

TEST(CollisionCriterion, Examples)
{
  EXPECT_TRUE(collision_criterion({{1, 0}, {-1, 0}}, 0.5));
  EXPECT_FALSE(collision_criterion({{0, 1}, {0, -1}}, 0.5));
  EXPECT_TRUE(collision_criterion({{2}, {1}}, 0.1));
  EXPECT_FALSE(collision_criterion({{1}, {2}}, 0.1));
  EXPECT_THROW(collision_criterion({{1}, {2}}, 1.0), DomainError);
}

TEST(CollisionCriterion, OneDimensionIsVelocityOrdering)
{
  auto rng = random::trial_stream(17, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto pair = sampling::sample_velocity_pair(rng, 1);
    EXPECT_EQ(collision_criterion(pair, 0.3), pair.v1[0] > pair.v2[0]);
  }
}

TEST(CollisionTime, Examples)
{
  // 4t^2 - 8t + 3 = 0 -> {0.5, 1.5}
  auto t = collision_time({{1, 0}, {-1, 0}}, 0.5);
  ASSERT_TRUE(t);
  EXPECT_NEAR(*t, 0.5, 1e-15);
  // t^2 - 4t + 3 = 0 -> {1, 3}
  t = collision_time({{1, 0}, {0, 0}}, 0.5);
  ASSERT_TRUE(t);
  EXPECT_NEAR(*t, 1.0, 1e-15);
  EXPECT_FALSE(collision_time({{0, 1}, {0, -1}}, 0.5));
}

TEST(CollisionTime, ConsistentWithCriterionAndSmallerRoot)
{
  for (int d : {1, 2, 3, 5}) {
    const double r = 0.3;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < 100'000; ++i) {
      auto rng = random::trial_stream(99 + d, i);
      const auto pair = sampling::sample_velocity_pair(rng, d);
      const auto t = collision_time(pair, r);
      ASSERT_EQ(t.has_value(), collision_criterion(pair, r));
      if (!t)
        continue;
      ++hits;
      EXPECT_GT(*t, 0.0);
      const double scale = std::max(1.0, *t * *t);
      EXPECT_LE(std::fabs(quadratic_residual(pair, r, *t)), 1e-9 * scale);
      // Product of roots gives the other root, which is no smaller.
      double w_sq = 0.0;
      for (int k = 0; k < d; ++k)
        w_sq += (pair.v1[k] - pair.v2[k]) * (pair.v1[k] - pair.v2[k]);
      const double other = 4.0 * (1.0 - r * r) / (w_sq * *t);
      EXPECT_GE(other, *t * (1.0 - 1e-12));
      // Physically: the balls touch at T and are apart just before.
      EXPECT_NEAR(centre_gap(pair, *t), 2.0 * r, 1e-9 * std::max(1.0, *t));
      EXPECT_GT(centre_gap(pair, 0.999 * *t), 2.0 * r);
    }
    EXPECT_GT(hits, 0u);
  }
}

TEST(CollisionTime, GrazingDirectionIsHandled)
{
  // w along the cap boundary: w1/|w| = sqrt(1 - r^2).
  const double r = 0.6;
  const double c = std::sqrt(1.0 - r * r);
  const VelocityPair tangent{{c, r}, {0.0, 0.0}};
  const auto t = collision_time(tangent, r);
  EXPECT_EQ(t.has_value(), collision_criterion(tangent, r));
  const VelocityPair outside{{c * 0.999, std::sqrt(1.0 - c * c * 0.999 * 0.999)}, {0.0, 0.0}};
  EXPECT_FALSE(collision_time(outside, r));
}

TEST(ContactPoint, Examples)
{
  EXPECT_EQ(contact_point({{1, 0}, {-1, 0}}, 0.5), (Vector{0, 0}));
  EXPECT_EQ(contact_point({{1, 0}, {0, 0}}, 1.0), (Vector{0.5, 0}));
  EXPECT_EQ(contact_point({{1, 2}, {-1, -2}}, 3.0), (Vector{0, 0}));
  EXPECT_EQ(centre_midpoint({{1, 0}, {0, 0}}, 1.0), (Vector{0.5, 0}));
}

TEST(ContactPoint, EqualsMidpointOfCentres)
{
  for (std::uint64_t i = 0; i < 20'000; ++i) {
    auto rng = random::trial_stream(3, i);
    const auto pair = sampling::sample_velocity_pair(rng, 3);
    const auto t = collision_time(pair, 0.4);
    if (!t)
      continue;
    const auto a = contact_point(pair, *t);
    const auto b = centre_midpoint(pair, *t);
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(a[k], b[k], 1e-12);
  }
}

TEST(Rho, BallExamples)
{
  const auto ball = ShapeOracle::ball(2, 0.5);
  auto rho = ball.rho(Vector{1.0, 0.0});
  ASSERT_TRUE(rho);
  EXPECT_NEAR(*rho, 0.5, 1e-15);
  EXPECT_FALSE(ball.rho(Vector{0.0, 1.0}));
  EXPECT_FALSE(ball.rho(Vector{-1.0, 0.0}));

  for (double r : {0.2, 0.6, 0.9}) {
    const auto b = ShapeOracle::ball(2, r);
    const double z1 = std::sqrt(1.0 - r * r);
    const Vector grazing{z1, std::sqrt(1.0 - z1 * z1)};
    const auto g = b.rho(grazing);
    ASSERT_TRUE(g) << "r=" << r;
    EXPECT_NEAR(*g, z1, 1e-7);
  }
}

TEST(Rho, OneDimensionalBall)
{
  const auto ball = ShapeOracle::ball(1, 0.3);
  EXPECT_NEAR(*ball.rho(Vector{1.0}), 0.7, 1e-15);
  EXPECT_FALSE(ball.rho(Vector{-1.0}));
}

TEST(Rho, RejectsNonUnitOrWrongDimension)
{
  const auto ball = ShapeOracle::ball(2, 0.5);
  EXPECT_THROW(ball.rho(Vector{1.0, 0.1}), DomainError);
  EXPECT_THROW(ball.rho(Vector{1.0}), DomainError);
}

TEST(Rho, BallRangeAndSmallRadiusLimit)
{
  for (double r : {0.5, 0.1, 0.01}) {
    const auto ball = ShapeOracle::ball(3, r);
    double worst = 0.0;
    int hits = 0;
    for (std::uint64_t i = 0; i < 20'000; ++i) {
      auto rng = random::trial_stream(11, i);
      const auto z = sampling::sample_cap_direction(rng, 3, std::sqrt(1.0 - r * r));
      const auto rho = ball.rho(z);
      ASSERT_TRUE(rho);
      ++hits;
      EXPECT_GE(*rho, 1.0 - r - 1e-12);
      EXPECT_LE(*rho, std::sqrt(1.0 - r * r) + 1e-12);
      worst = std::max(worst, std::fabs(*rho - 1.0));
    }
    EXPECT_LE(worst, r) << "r=" << r;
    EXPECT_EQ(hits, 20'000);
  }
}

TEST(Rho, MatchesCollisionTimeScaledBySpeed)
{
  const double r = 0.3;
  for (int d : {2, 3}) {
    const auto ball = ShapeOracle::ball(d, r);
    int checked = 0;
    for (std::uint64_t i = 0; checked < 10'000; ++i) {
      auto rng = random::trial_stream(1234 + d, i);
      const auto pair = sampling::sample_velocity_pair(rng, d);
      const auto t = collision_time(pair, r);
      if (!t)
        continue;
      ++checked;
      const auto split = com_split(pair);
      const double speed = norm(split.v_c);
      Vector z = split.v_c;
      for (auto& x : z)
        x /= speed;
      const auto rho = ball.rho(z);
      ASSERT_TRUE(rho);
      EXPECT_NEAR(*t, *rho / speed, 1e-9);
    }
  }
}

TEST(Ellipsoid, ValidatesInvariants)
{
  EXPECT_NO_THROW(Ellipsoid::axis_aligned({-1.0, 0.0}, std::vector<double>{0.3, 0.6}));
  // origin inside
  EXPECT_THROW(Ellipsoid::axis_aligned({-0.5, 0.0}, std::vector<double>{0.6, 0.6}), DomainError);
  // not positive definite
  EXPECT_THROW(Ellipsoid({-2.0, 0.0}, {1.0, 0.0, 0.0, -1.0}), DomainError);
  // not symmetric
  EXPECT_THROW(Ellipsoid({-2.0, 0.0}, {1.0, 0.5, 0.0, 1.0}), DomainError);
  EXPECT_THROW(Ellipsoid({-2.0, 0.0}, {1.0, 0.0, 0.0}), DomainError);
}

TEST(Ellipsoid, UnitQMatchesBallOracle)
{
  // Ball of radius r at (-1, 0, 0) written as an ellipsoid.
  const double r = 0.4;
  const auto as_ball = ShapeOracle::ball(3, r);
  const auto as_ellipsoid = ShapeOracle::ellipsoid(
      Ellipsoid::axis_aligned({-1.0, 0.0, 0.0}, std::vector<double>{r, r, r}));
  for (std::uint64_t i = 0; i < 5000; ++i) {
    auto rng = random::trial_stream(77, i);
    const auto z = sampling::sample_unit_sphere(rng, 3);
    const auto a = as_ball.rho(z);
    const auto b = as_ellipsoid.rho(z);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a)
      EXPECT_NEAR(*a, *b, 1e-12);
  }
}

TEST(Ellipsoid, RhoPointLiesOnBoundary)
{
  const auto e = Ellipsoid::axis_aligned({-1.0, 0.0}, std::vector<double>{0.3, 0.6});
  const auto shape = ShapeOracle::ellipsoid(e);
  int hits = 0;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    auto rng = random::trial_stream(8, i);
    const auto z = sampling::sample_unit_sphere(rng, 2);
    const auto rho = shape.rho(z);
    if (!rho)
      continue;
    ++hits;
    const Vector p{*rho * z[0] - 1.0, *rho * z[1]};  // rho z + x0
    EXPECT_NEAR(e.form(p, p), 1.0, 1e-9);
  }
  EXPECT_GT(hits, 0);
}

TEST(HitFraction, BallMatchesCollisionProbability)
{
  const double r = 0.5;
  const auto est = hit_fraction_mc(ShapeOracle::ball(2, r), 1'000'000, 2024, 4);
  const double p = analytic::collision_prob_exact(analytic::ModelParams(2, r));
  EXPECT_LE(std::fabs(est.estimate - p), 4.0 * std::sqrt(p * (1 - p) / 1e6));
  EXPECT_LE(est.ci.lo, est.estimate);
  EXPECT_GE(est.ci.hi, est.estimate);
}

TEST(HitFraction, NearUnitRadiusApproachesHalf)
{
  const auto est = hit_fraction_mc(ShapeOracle::ball(3, 0.999999), 200'000, 1, 2);
  EXPECT_NEAR(est.estimate, 0.5, 4.0 * std::sqrt(0.25 / 2e5) + 1e-3);
}

TEST(HitFraction, FarEllipsoidSubtendsSmallCap)
{
  const auto shape = ShapeOracle::ellipsoid(
      Ellipsoid::axis_aligned({-10.0, 0.0}, std::vector<double>{1.0, 1.0}));
  const std::uint64_t n = 1'000'000;
  const auto est = hit_fraction_mc(shape, n, 3, 4);
  // Angular half-width arcsin(1/10) on the circle.
  const double expected = std::asin(0.1) / std::numbers::pi;
  EXPECT_NEAR(est.estimate, expected, 4.0 * std::sqrt(expected * (1 - expected) / n));
}
