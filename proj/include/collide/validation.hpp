#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "collide/analytic.hpp"
#include "collide/montecarlo.hpp"

namespace collide::validation {

enum class Suite
{
  analytic,
  mc,
  location,
  rotation,
  all,
};

std::optional<Suite> parse_suite(const std::string& s);
std::string to_string(Suite s);

struct CriterionResult
{
  int id = 0;
  std::string name;
  bool pass = false;
  nlohmann::json details;
};

void to_json(nlohmann::json& j, const CriterionResult& r);

struct Options
{
  double alpha = 0.01;
  std::uint64_t seed = 42;
  int workers = 1;
  /// Coefficient under test; replaced by tests to check that a wrong value
  /// is caught.
  std::function<double(int)> location_coefficient = analytic::location_coefficient;
};

/// Criterion ids (1..12) belonging to a suite.
std::vector<int> criteria_in(Suite suite);

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_suite(Suite suite, const Options& options);

// Individual criteria.
CriterionResult check_closed_form_agreement();
CriterionResult check_coefficient_table(const Options& options);
CriterionResult check_asymptotic_law();
CriterionResult check_naive_probability(const Options& options);
CriterionResult check_solver_equivalence(const Options& options);
CriterionResult check_cauchy_location(const Options& options);
CriterionResult check_limit_radial_law(const Options& options);
CriterionResult check_rotation_invariance_ball(const Options& options);
CriterionResult check_rotation_invariance_ellipsoid(const Options& options);
CriterionResult check_estimator_consistency(const Options& options);
CriterionResult check_reproducibility(const Options& options);
CriterionResult check_normalization(const Options& options);

/// Sample CSV for a run, as written by `collide simulate`.
std::string samples_csv(const montecarlo::SimConfig& config);

}  // namespace collide::validation
