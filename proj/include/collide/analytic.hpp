#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace collide::analytic {

/// Two balls of radius r centred at (-1, 0, ..., 0) and (1, 0, ..., 0) in R^d.
class ModelParams
{
public:
  /// Throws DomainError unless d >= 1 and 0 < r < 1.
  ModelParams(int d, double r);

  int d() const noexcept { return d_; }
  double r() const noexcept { return r_; }

private:
  int d_;
  double r_;
};

/// Probability that the two balls ever collide. Exactly 1/2 in d = 1,
/// otherwise (1/2) F(r^2 / ((d-1)(1-r^2)); d-1, 1).
double collision_prob_exact(const ModelParams& params);

/// Elementary closed forms for d in {1, 2, 3}; UnsupportedDimension otherwise.
double collision_prob_closed(const ModelParams& params);

/// Leading coefficient of p ~ coeff * r^(d-1) as r -> 0. Requires d >= 2.
double asymptotic_prob_coefficient(int d);

/// (1/2) pi^(-(d+1)/2) Gamma(d) / Gamma((d+1)/2), the prefactor of the
/// limiting collision-location density.
double location_coefficient(int d);

/// location_coefficient(d) written exactly as numerator / (denominator * pi^k).
struct PiRational
{
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  int pi_power = 0;

  double value() const;
  /// "1/pi^2", "15120/pi^6", "1/(2*pi^1)".
  std::string str() const;
};

/// Exact form of location_coefficient for 1 <= d <= 20.
PiRational location_coefficient_exact(int d);

/// Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double unit_sphere_area(int d);

/// Defective limit density lim_{r->0} P(C in dx) r^{1-d}; dimension is x.size().
double location_density_limit(std::span<const double> x);
double location_density_limit(double x_norm, int d);

/// Limit density of C given a collision: Gamma(d)/(pi^{d/2} Gamma(d/2)) (1+|x|^2)^{-d}.
/// Integrates to one over R^d.
double conditional_location_density(std::span<const double> x);
double conditional_location_density(double x_norm, int d);

/// Limit CDF of |C| given a collision: |C|^2 follows F(d, d).
double radial_cdf_conditional(double a, int d);

/// Exact defective CDF of the collision location in d = 1 (total mass 1/2).
double cauchy_cdf_1d(double x, double r);

}  // namespace collide::analytic
