#include "collide/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "collide/errors.hpp"
#include "collide/specfun.hpp"

namespace collide {

void to_json(nlohmann::json& j, const StatTestResult& r)
{
  j = nlohmann::json{{"name", r.name},         {"statistic", r.statistic},
                     {"p_value", r.p_value},   {"n", r.n},
                     {"alpha", r.alpha},       {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const Interval& ci)
{
  j = nlohmann::json::array({ci.lo, ci.hi});
}

void to_json(nlohmann::json& j, const EstimateReport& r)
{
  j = nlohmann::json{{"sampler", r.sampler},   {"seed", r.seed},
                     {"n", r.n},               {"count", r.count},
                     {"estimate", r.estimate}, {"std_error", r.std_error},
                     {"level", r.level},       {"ci", r.ci}};
}

}  // namespace collide

namespace collide::stats {

StatTestResult ks_test(std::span<const double> samples,
                       const std::function<double(double)>& cdf, double alpha,
                       std::string name)
{
  if (samples.size() < 10)
    throw DomainError("ks_test: at least 10 samples are required");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }

  StatTestResult out;
  out.name = std::move(name);
  out.statistic = d;
  out.p_value = specfun::kolmogorov_sf(std::sqrt(n) * d);
  out.n = sorted.size();
  out.alpha = alpha;
  out.pass = out.p_value >= alpha;
  return out;
}

double sphere_coord_cdf(double t, int d)
{
  if (!(t >= -1.0 && t <= 1.0))
    throw DomainError("sphere_coord_cdf: t must lie in [-1, 1]");
  if (d < 2)
    throw DomainError("sphere_coord_cdf: dimension must be at least 2");
  const double shape = 0.5 * (d - 1);
  return specfun::reg_inc_beta(0.5 * (t + 1.0), shape, shape);
}

std::vector<StatTestResult> angular_uniformity_test(
    std::span<const geometry::Vector> points, double alpha)
{
  if (points.empty())
    throw DomainError("angular_uniformity_test: no points");
  const std::size_t d = points.front().size();
  if (d < 2)
    throw DomainError("angular_uniformity_test: dimension must be at least 2");

  std::vector<std::vector<double>> coords(d);
  for (auto& c : coords)
    c.reserve(points.size());
  for (const auto& x : points) {
    if (x.size() != d)
      throw DomainError("angular_uniformity_test: mixed dimensions");
    const double len = geometry::norm(x);
    if (!(len > 0.0))
      throw DomainError("angular_uniformity_test: zero vector");
    for (std::size_t k = 0; k < d; ++k)
      coords[k].push_back(std::clamp(x[k] / len, -1.0, 1.0));
  }

  const int dim = static_cast<int>(d);
  const double per_axis = alpha / static_cast<double>(d);
  std::vector<StatTestResult> results;
  results.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    results.push_back(ks_test(
        coords[k], [dim](double t) { return sphere_coord_cdf(t, dim); },
        per_axis, "axis_" + std::to_string(k + 1)));
  }
  return results;
}

bool all_pass(std::span<const StatTestResult> results)
{
  return std::all_of(results.begin(), results.end(),
                     [](const StatTestResult& r) { return r.pass; });
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

Interval binomial_ci(std::uint64_t k, std::uint64_t n, double level)
{
  if (n == 0 || k > n)
    throw DomainError("binomial_ci: need 0 <= k <= n and n >= 1");
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("binomial_ci: level must lie in (0, 1)");

  const double z = normal_quantile(0.5 + 0.5 * level);
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));

  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (k == 0)
    ci.lo = 0.0;
  if (k == n)
    ci.hi = 1.0;
  return ci;
}

EstimateReport make_estimate(std::uint64_t count, std::uint64_t n,
                             std::uint64_t seed, std::string sampler,
                             double level)
{
  EstimateReport r;
  r.sampler = std::move(sampler);
  r.seed = seed;
  r.n = n;
  r.count = count;
  r.level = level;
  r.estimate = static_cast<double>(count) / static_cast<double>(n);
  r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
  r.ci = binomial_ci(count, n, level);
  return r;
}

}  // namespace collide::stats
