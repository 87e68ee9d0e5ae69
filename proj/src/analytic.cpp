#include "collide/analytic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "collide/errors.hpp"
#include "collide/specfun.hpp"

namespace collide::analytic {

using std::numbers::pi;

ModelParams::ModelParams(int d, double r) : d_(d), r_(r)
{
  if (d < 1)
    throw DomainError("dimension must be at least 1");
  if (!(r > 0.0 && r < 1.0))
    throw DomainError("radius must lie in (0, 1)");
}

double collision_prob_exact(const ModelParams& params)
{
  const int d = params.d();
  if (d == 1)
    return 0.5;
  const double r2 = params.r() * params.r();
  const double x = r2 / ((d - 1) * (1.0 - r2));
  return 0.5 * specfun::f_cdf(x, d - 1, 1);
}

double collision_prob_closed(const ModelParams& params)
{
  const double r = params.r();
  switch (params.d()) {
    case 1:
      return 0.5;
    case 2:
      return std::atan(r / std::sqrt(1.0 - r * r)) / pi;
    case 3:
      // (1 - sqrt(1 - r^2)) / 2 without cancellation at small r
      return 0.5 * r * r / (1.0 + std::sqrt(1.0 - r * r));
    default:
      throw UnsupportedDimension("closed-form collision probability exists only for d <= 3");
  }
}

double asymptotic_prob_coefficient(int d)
{
  if (d < 2)
    throw DomainError("asymptotic coefficient requires d >= 2");
  const double gamma_ratio =
      std::exp(specfun::log_gamma(0.5 * d) - specfun::log_gamma(0.5 * (d - 1)));
  return gamma_ratio / ((d - 1) * std::sqrt(pi));
}

double location_coefficient(int d)
{
  if (d < 1)
    throw DomainError("dimension must be at least 1");
  const double log_value = -0.5 * (d + 1) * std::log(pi) +
                           specfun::log_gamma(d) -
                           specfun::log_gamma(0.5 * (d + 1));
  return 0.5 * std::exp(log_value);
}

double PiRational::value() const
{
  return static_cast<double>(numerator) /
         (static_cast<double>(denominator) * std::pow(pi, pi_power));
}

std::string PiRational::str() const
{
  const std::string pi_part = "pi^" + std::to_string(pi_power);
  if (denominator == 1)
    return std::to_string(numerator) + "/" + pi_part;
  return std::to_string(numerator) + "/(" + std::to_string(denominator) + "*" +
         pi_part + ")";
}

PiRational location_coefficient_exact(int d)
{
  if (d < 1 || d > 20)
    throw DomainError("exact coefficient available for 1 <= d <= 20");

  auto factorial = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
      f *= static_cast<std::uint64_t>(i);
    return f;
  };

  PiRational out;
  if (d % 2 == 1) {
    // Gamma((d+1)/2) = (k-1)! with k = (d+1)/2
    const int k = (d + 1) / 2;
    out.numerator = factorial(d - 1) / factorial(k - 1);
    out.denominator = 2;
    out.pi_power = k;
  } else {
    // Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!) with m = d/2; (d-1)!/d! = 1/d
    const int m = d / 2;
    out.numerator = (std::uint64_t{1} << (2 * m)) * factorial(m);
    out.denominator = 2 * static_cast<std::uint64_t>(d);
    out.pi_power = m + 1;
  }
  const std::uint64_t g = std::gcd(out.numerator, out.denominator);
  out.numerator /= g;
  out.denominator /= g;
  return out;
}

double unit_sphere_area(int d)
{
  if (d < 1)
    throw DomainError("dimension must be at least 1");
  return 2.0 * std::exp(0.5 * d * std::log(pi) - specfun::log_gamma(0.5 * d));
}

namespace {

double squared_norm(std::span<const double> x)
{
  double s = 0.0;
  for (double v : x)
    s += v * v;
  return s;
}

double conditional_prefactor(int d)
{
  return std::exp(specfun::log_gamma(d) - 0.5 * d * std::log(pi) -
                  specfun::log_gamma(0.5 * d));
}

void require_dimension(int d)
{
  if (d < 1)
    throw DomainError("dimension must be at least 1");
}

}  // namespace

double location_density_limit(double x_norm, int d)
{
  require_dimension(d);
  return location_coefficient(d) / std::pow(1.0 + x_norm * x_norm, d);
}

double location_density_limit(std::span<const double> x)
{
  const int d = static_cast<int>(x.size());
  require_dimension(d);
  return location_coefficient(d) / std::pow(1.0 + squared_norm(x), d);
}

double conditional_location_density(double x_norm, int d)
{
  require_dimension(d);
  return conditional_prefactor(d) / std::pow(1.0 + x_norm * x_norm, d);
}

double conditional_location_density(std::span<const double> x)
{
  const int d = static_cast<int>(x.size());
  require_dimension(d);
  return conditional_prefactor(d) / std::pow(1.0 + squared_norm(x), d);
}

double radial_cdf_conditional(double a, int d)
{
  if (!(a >= 0.0))
    throw DomainError("radial_cdf_conditional: radius must be nonnegative");
  require_dimension(d);
  return specfun::f_cdf(a * a, d, d);
}

double cauchy_cdf_1d(double x, double r)
{
  if (!(r > 0.0 && r < 1.0))
    throw DomainError("radius must lie in (0, 1)");
  if (std::isnan(x))
    throw DomainError("cauchy_cdf_1d: x is NaN");
  return 0.25 + std::atan(x / (1.0 - r)) / (2.0 * pi);
}

}  // namespace collide::analytic
