#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "collide/geometry.hpp"

namespace collide {

/// Outcome of a goodness-of-fit test. pass == (p_value >= alpha).
struct StatTestResult
{
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  std::uint64_t n = 0;
  double alpha = 0.01;
  bool pass = false;
};

struct Interval
{
  double lo = 0.0;
  double hi = 0.0;
};

/// Monte Carlo proportion estimate.
struct EstimateReport
{
  std::string sampler;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double level = 0.9999;
  Interval ci;
};

void to_json(nlohmann::json& j, const StatTestResult& r);
void to_json(nlohmann::json& j, const Interval& ci);
void to_json(nlohmann::json& j, const EstimateReport& r);

}  // namespace collide

namespace collide::stats {

constexpr double kDefaultAlpha = 0.01;

/// One-sample Kolmogorov-Smirnov test against a continuous CDF using the
/// asymptotic Kolmogorov law. Requires at least 10 samples.
StatTestResult ks_test(std::span<const double> samples,
                       const std::function<double(double)>& cdf,
                       double alpha = kDefaultAlpha, std::string name = "ks");

/// P(u_1 <= t) for u uniform on S^{d-1}.
double sphere_coord_cdf(double t, int d);

/// KS-tests each coordinate of x/|x| against sphere_coord_cdf, one result per
/// axis, each at the Bonferroni level alpha/d.
std::vector<StatTestResult> angular_uniformity_test(
    std::span<const geometry::Vector> points, double alpha = kDefaultAlpha);

bool all_pass(std::span<const StatTestResult> results);

/// Standard normal quantile.
double normal_quantile(double p);

/// Wilson score interval for k successes in n trials at confidence `level`.
Interval binomial_ci(std::uint64_t k, std::uint64_t n, double level = 0.9999);

EstimateReport make_estimate(std::uint64_t count, std::uint64_t n,
                             std::uint64_t seed, std::string sampler,
                             double level = 0.9999);

}  // namespace collide::stats
