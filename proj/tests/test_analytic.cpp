#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "collide/analytic.hpp"
#include "collide/errors.hpp"
#include "collide/quadrature.hpp"

using namespace collide;
using namespace collide::analytic;
using std::numbers::pi;

namespace {

// Integrand of the collision probability written directly as the F(d-1, 1)
// density, integrated numerically; independent of the incomplete beta path.
double prob_by_quadrature(int d, double r)
{
  const double upper = r * r / ((d - 1) * (1.0 - r * r));
  const double norm = std::tgamma(0.5 * d) / (std::tgamma(0.5 * (d - 1)) * std::sqrt(pi)) *
                      std::pow(d - 1.0, 0.5 * (d - 1));
  // x = u^2 removes the x^{-1/2} singularity at d = 2.
  // dx x^{(d-3)/2} = 2 u^{d-2} du
  auto integrand = [&](double u) {
    return 2.0 * norm * std::pow(u, d - 2) * std::pow(1.0 + (d - 1) * u * u, -0.5 * d);
  };
  return 0.5 * quadrature::integrate(integrand, 0.0, std::sqrt(upper), 1e-13);
}

}  // namespace

TEST(ModelParams, Validation)
{
  EXPECT_NO_THROW(ModelParams(1, 0.5));
  EXPECT_THROW(ModelParams(0, 0.5), DomainError);
  EXPECT_THROW(ModelParams(2, 0.0), DomainError);
  EXPECT_THROW(ModelParams(2, 1.0), DomainError);
  EXPECT_THROW(ModelParams(2, std::nan("")), DomainError);
}

TEST(CollisionProbExact, Examples)
{
  EXPECT_EQ(collision_prob_exact(ModelParams(1, 0.37)), 0.5);
  EXPECT_NEAR(collision_prob_exact(ModelParams(2, 0.5)), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(collision_prob_exact(ModelParams(3, 0.6)), 0.1, 1e-14);
}

TEST(CollisionProbExact, MatchesQuadratureOfDensity)
{
  EXPECT_NEAR(prob_by_quadrature(2, 0.5), 1.0 / 6.0, 1e-10);
  for (int d : {2, 3, 4, 7})
    for (double r : {0.05, 0.3, 0.8})
      EXPECT_NEAR(collision_prob_exact(ModelParams(d, r)), prob_by_quadrature(d, r), 1e-10)
          << "d=" << d << " r=" << r;
}

TEST(CollisionProbExact, IncreasingInRadiusAndApproachesHalf)
{
  for (int d = 2; d <= 8; ++d) {
    double prev = 0.0;
    for (int k = 1; k <= 999; ++k) {
      const double p = collision_prob_exact(ModelParams(d, k / 1000.0));
      EXPECT_GT(p, prev) << "d=" << d << " r=" << k / 1000.0;
      prev = p;
    }
    EXPECT_NEAR(collision_prob_exact(ModelParams(d, 1.0 - 1e-12)), 0.5, 1e-4);
  }
}

TEST(CollisionProbClosed, AgreesWithExactOnGrid)
{
  for (int d : {1, 2, 3})
    for (int k = 1; k <= 99; ++k) {
      const ModelParams p(d, k / 100.0);
      EXPECT_NEAR(collision_prob_closed(p), collision_prob_exact(p), 1e-10);
    }
}

TEST(CollisionProbClosed, SmallRadiusLimitInTwoDimensions)
{
  for (double r : {1e-2, 5e-3, 1e-3, 1e-5})
    EXPECT_LE(std::fabs(collision_prob_closed(ModelParams(2, r)) * pi / r - 1.0), r);
}

TEST(CollisionProbClosed, ExamplesAndUnsupported)
{
  EXPECT_NEAR(collision_prob_closed(ModelParams(3, 0.6)), 0.1, 1e-15);
  EXPECT_NEAR(collision_prob_closed(ModelParams(2, 0.5)), 1.0 / 6.0, 1e-15);
  EXPECT_THROW(collision_prob_closed(ModelParams(4, 0.5)), UnsupportedDimension);
}

TEST(AsymptoticCoefficient, Values)
{
  EXPECT_NEAR(asymptotic_prob_coefficient(2), 1.0 / pi, 1e-15);
  EXPECT_NEAR(asymptotic_prob_coefficient(3), 0.25, 1e-15);
  EXPECT_NEAR(asymptotic_prob_coefficient(5), 3.0 / 16.0, 1e-15);
  EXPECT_THROW(asymptotic_prob_coefficient(1), DomainError);
}

TEST(AsymptoticCoefficient, IsTheSmallRadiusLimit)
{
  const double r = 1e-3;
  for (int d = 2; d <= 6; ++d) {
    const double ratio = collision_prob_exact(ModelParams(d, r)) / std::pow(r, d - 1);
    EXPECT_NEAR(ratio / asymptotic_prob_coefficient(d), 1.0, 1e-3) << "d=" << d;
  }
}

TEST(LocationCoefficient, ReferenceTable)
{
  const std::vector<double> expected = {
      1 / std::pow(pi, 2),    1 / std::pow(pi, 2),    4 / std::pow(pi, 3),
      6 / std::pow(pi, 3),    32 / std::pow(pi, 4),   60 / std::pow(pi, 4),
      384 / std::pow(pi, 5),  840 / std::pow(pi, 5),  6144 / std::pow(pi, 6),
      15120 / std::pow(pi, 6)};
  for (int d = 2; d <= 11; ++d)
    EXPECT_NEAR(location_coefficient(d) / expected[d - 2], 1.0, 1e-12) << "d=" << d;
}

TEST(LocationCoefficient, ExactFormsMatchDecimals)
{
  EXPECT_EQ(location_coefficient_exact(2).str(), "1/pi^2");
  EXPECT_EQ(location_coefficient_exact(6).str(), "32/pi^4");
  EXPECT_EQ(location_coefficient_exact(9).str(), "840/pi^5");
  EXPECT_EQ(location_coefficient_exact(11).str(), "15120/pi^6");
  EXPECT_EQ(location_coefficient_exact(1).str(), "1/(2*pi^1)");
  for (int d = 1; d <= 20; ++d)
    EXPECT_NEAR(location_coefficient_exact(d).value() / location_coefficient(d), 1.0, 1e-12)
        << "d=" << d;
  EXPECT_THROW(location_coefficient_exact(21), DomainError);
}

TEST(LocationDensityLimit, OriginAndMass)
{
  const std::vector<double> origin = {0.0, 0.0};
  EXPECT_NEAR(location_density_limit(origin), 1.0 / (pi * pi), 1e-15);

  auto mass = [](int d) {
    return quadrature::integrate_radial(
        [d](double s) { return location_density_limit(s, d); }, d, unit_sphere_area(d));
  };
  EXPECT_NEAR(mass(2), 1.0 / pi, 1e-9);
  EXPECT_NEAR(mass(3), 0.25, 1e-9);
  // Total defective mass equals the r^{d-1} coefficient of the probability.
  for (int d = 2; d <= 8; ++d)
    EXPECT_NEAR(mass(d) / asymptotic_prob_coefficient(d), 1.0, 1e-8) << "d=" << d;
}

TEST(ConditionalDensity, ValuesAndRelationToLimit)
{
  EXPECT_NEAR(conditional_location_density(std::vector<double>{0.0, 0.0}), 1.0 / pi, 1e-15);
  EXPECT_NEAR(conditional_location_density(std::vector<double>{0.0}), 1.0 / pi, 1e-15);
  for (int d = 2; d <= 7; ++d)
    for (double s : {0.0, 0.4, 1.0, 3.0}) {
      EXPECT_NEAR(conditional_location_density(s, d),
                  location_density_limit(s, d) / asymptotic_prob_coefficient(d),
                  1e-13 * conditional_location_density(s, d));
    }
}

TEST(ConditionalDensity, RotationInvariantUnderSignsAndPermutations)
{
  const std::vector<double> x = {0.3, -1.2, 0.7};
  const double ref = conditional_location_density(x);
  const std::vector<std::vector<double>> images = {
      {-1.2, 0.3, 0.7}, {0.7, 0.3, -1.2}, {-0.3, 1.2, -0.7}, {1.2, 0.7, 0.3}};
  for (const auto& y : images)
    EXPECT_EQ(conditional_location_density(y), ref);
}

TEST(ConditionalDensity, NormalizedInDimensionsOneToSix)
{
  for (int d = 1; d <= 6; ++d) {
    const double total = quadrature::integrate_radial(
        [d](double s) { return conditional_location_density(s, d); }, d, unit_sphere_area(d));
    EXPECT_NEAR(total, 1.0, 1e-8) << "d=" << d;
  }
}

TEST(RadialCdfConditional, Values)
{
  for (int d = 1; d <= 6; ++d) {
    EXPECT_EQ(radial_cdf_conditional(0.0, d), 0.0);
    EXPECT_NEAR(radial_cdf_conditional(1.0, d), 0.5, 1e-13);
  }
  EXPECT_NEAR(radial_cdf_conditional(2.0, 1), 2.0 / pi * std::atan(2.0), 1e-13);
  EXPECT_THROW(radial_cdf_conditional(-0.1, 2), DomainError);
}

TEST(RadialCdfConditional, MatchesRadialIntegralOfDensity)
{
  for (int d = 2; d <= 4; ++d)
    for (double a : {0.3, 1.0, 2.5}) {
      const double by_density =
          unit_sphere_area(d) *
          quadrature::integrate(
              [d](double s) { return std::pow(s, d - 1) * conditional_location_density(s, d); },
              0.0, a, 1e-12);
      EXPECT_NEAR(radial_cdf_conditional(a, d), by_density, 1e-9) << "d=" << d << " a=" << a;
    }
}

TEST(CauchyCdf1d, Values)
{
  for (double r : {0.1, 0.3, 0.9}) {
    EXPECT_NEAR(cauchy_cdf_1d(INFINITY, r), 0.5, 1e-15);
    EXPECT_NEAR(cauchy_cdf_1d(0.0, r), 0.25, 1e-15);
    EXPECT_NEAR(cauchy_cdf_1d(1.0 - r, r), 0.375, 1e-15);
    EXPECT_NEAR(cauchy_cdf_1d(-INFINITY, r), 0.0, 1e-15);
  }
}

TEST(CauchyCdf1d, MatchesIntegralOfDefectiveDensity)
{
  const double r = 0.3;
  auto density = [r](double u) {
    return (1.0 - r) / (2.0 * pi * (u * u + (1.0 - r) * (1.0 - r)));
  };
  for (double x : {-3.0, -0.5, 0.2, 4.0}) {
    const double integral = quadrature::integrate(density, 0.0, x, 1e-13);
    EXPECT_NEAR(cauchy_cdf_1d(x, r), 0.25 + integral, 1e-12);
  }
}

TEST(UnitSphereArea, LowDimensions)
{
  EXPECT_NEAR(unit_sphere_area(1), 2.0, 1e-14);
  EXPECT_NEAR(unit_sphere_area(2), 2.0 * pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(3), 4.0 * pi, 1e-13);
}
