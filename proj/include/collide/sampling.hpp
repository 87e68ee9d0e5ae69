#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "collide/errors.hpp"
#include "collide/geometry.hpp"
#include "collide/random.hpp"

namespace collide::sampling {

using geometry::Vector;

template <class Rng>
Vector standard_normal_vector(Rng& rng, int d, double sigma = 1.0)
{
  std::normal_distribution<double> normal(0.0, sigma);
  Vector v(static_cast<std::size_t>(d));
  for (auto& x : v)
    x = normal(rng);
  return v;
}

/// Two independent N(0, I_d) velocities.
template <class Rng>
geometry::VelocityPair sample_velocity_pair(Rng& rng, int d)
{
  std::normal_distribution<double> normal;
  geometry::VelocityPair pair{Vector(d), Vector(d)};
  for (auto& x : pair.v1)
    x = normal(rng);
  for (auto& x : pair.v2)
    x = normal(rng);
  return pair;
}

/// Uniform point on S^{d-1} (normalised Gaussian).
template <class Rng>
Vector sample_unit_sphere(Rng& rng, int d)
{
  std::normal_distribution<double> normal;
  Vector z(static_cast<std::size_t>(d));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : z) {
      x = normal(rng);
      n2 += x * x;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& x : z)
    x *= inv;
  return z;
}

/// Exactly uniform point on the cap {z in S^{d-1} : z_1 >= c}, d >= 2.
///
/// The first coordinate has density proportional to (1 - z_1^2)^{(d-3)/2} on
/// [c, 1]; the rest is a uniform direction on S^{d-2} scaled by
/// sqrt(1 - z_1^2).
template <class Rng>
Vector sample_cap_direction(Rng& rng, int d, double c)
{
  if (d < 2)
    throw DomainError("sample_cap_direction: dimension must be at least 2");
  if (!(c > 0.0 && c < 1.0))
    throw DomainError("sample_cap_direction: c must lie in (0, 1)");

  if (d == 2) {
    const double half_angle = std::acos(c);
    const double phi = half_angle * (2.0 * random::uniform01(rng) - 1.0);
    return {std::cos(phi), std::sin(phi)};
  }

  double z1 = 0.0;
  if (d == 3) {
    z1 = c + (1.0 - c) * random::uniform01(rng);
  } else {
    // The density is decreasing on [c, 1], so a uniform proposal accepted
    // with ratio f(z1)/f(c) is exact.
    const double exponent = 0.5 * (d - 3);
    const double base = 1.0 - c * c;
    for (;;) {
      z1 = c + (1.0 - c) * random::uniform01(rng);
      const double ratio = std::pow((1.0 - z1 * z1) / base, exponent);
      if (random::uniform01(rng) < ratio)
        break;
    }
  }

  const double radial = std::sqrt(std::max(0.0, 1.0 - z1 * z1));
  Vector rest = sample_unit_sphere(rng, d - 1);
  Vector z(static_cast<std::size_t>(d));
  z[0] = z1;
  for (int k = 1; k < d; ++k)
    z[k] = radial * rest[k - 1];
  return z;
}

/// |V^c| for V^c with independent N(0, 1/2) components, i.e. sqrt(S/2) with
/// S ~ chi^2_d.
template <class Rng>
double sample_relative_speed(Rng& rng, int d)
{
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double x = normal(rng);
    s += x * x;
  }
  return std::sqrt(s);
}

}  // namespace collide::sampling
