#include "collide/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "collide/geometry.hpp"
#include "collide/quadrature.hpp"
#include "collide/random.hpp"
#include "collide/sampling.hpp"
#include "collide/specfun.hpp"
#include "collide/stats.hpp"

namespace collide::validation {

using nlohmann::json;
using std::numbers::pi;

std::optional<Suite> parse_suite(const std::string& s)
{
  if (s == "analytic")
    return Suite::analytic;
  if (s == "mc")
    return Suite::mc;
  if (s == "location")
    return Suite::location;
  if (s == "rotation")
    return Suite::rotation;
  if (s == "all")
    return Suite::all;
  return std::nullopt;
}

std::string to_string(Suite s)
{
  switch (s) {
    case Suite::analytic:
      return "analytic";
    case Suite::mc:
      return "mc";
    case Suite::location:
      return "location";
    case Suite::rotation:
      return "rotation";
    case Suite::all:
      return "all";
  }
  return "unknown";
}

void to_json(json& j, const CriterionResult& r)
{
  j = json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}};
}

std::vector<int> criteria_in(Suite suite)
{
  switch (suite) {
    case Suite::analytic:
      return {1, 2, 3, 12};
    case Suite::mc:
      return {4, 5, 10, 11};
    case Suite::location:
      return {6, 7};
    case Suite::rotation:
      return {8, 9};
    case Suite::all:
      return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  }
  return {};
}

CriterionResult run_criterion(int id, const Options& options)
{
  switch (id) {
    case 1:
      return check_closed_form_agreement();
    case 2:
      return check_coefficient_table(options);
    case 3:
      return check_asymptotic_law();
    case 4:
      return check_naive_probability(options);
    case 5:
      return check_solver_equivalence(options);
    case 6:
      return check_cauchy_location(options);
    case 7:
      return check_limit_radial_law(options);
    case 8:
      return check_rotation_invariance_ball(options);
    case 9:
      return check_rotation_invariance_ellipsoid(options);
    case 10:
      return check_estimator_consistency(options);
    case 11:
      return check_reproducibility(options);
    case 12:
      return check_normalization(options);
    default:
      throw std::out_of_range("unknown criterion id " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_suite(Suite suite, const Options& options)
{
  std::vector<CriterionResult> out;
  for (int id : criteria_in(suite))
    out.push_back(run_criterion(id, options));
  return out;
}

namespace {

montecarlo::SimConfig ball_config(int d, double r, std::uint64_t n,
                                  std::uint64_t seed, montecarlo::Sampler sampler,
                                  int workers)
{
  montecarlo::SimConfig cfg{.shape = geometry::ShapeOracle::ball(d, r)};
  cfg.n = n;
  cfg.seed = seed;
  cfg.sampler = sampler;
  cfg.workers = workers;
  cfg.sample_cap = std::max<std::size_t>(montecarlo::kDefaultSampleCap, n);
  return cfg;
}

json tests_json(const std::vector<StatTestResult>& tests)
{
  json arr = json::array();
  for (const auto& t : tests)
    arr.push_back(t);
  return arr;
}

}  // namespace

// 1 --------------------------------------------------------------------------
CriterionResult check_closed_form_agreement()
{
  constexpr double tol = 1e-10;
  CriterionResult res{1, "closed_form_agreement", true, json::object()};
  for (int d : {2, 3}) {
    double worst = 0.0;
    double worst_r = 0.0;
    for (int k = 1; k <= 99; ++k) {
      const double r = k / 100.0;
      const analytic::ModelParams params(d, r);
      const double diff = std::fabs(analytic::collision_prob_exact(params) -
                                    analytic::collision_prob_closed(params));
      if (diff > worst) {
        worst = diff;
        worst_r = r;
      }
    }
    res.details["d" + std::to_string(d)] = {{"max_abs_diff", worst}, {"at_r", worst_r}};
    res.pass = res.pass && worst <= tol;
  }
  res.details["tolerance"] = tol;
  return res;
}

// 2 --------------------------------------------------------------------------
CriterionResult check_coefficient_table(const Options& options)
{
  constexpr double tol = 1e-12;
  // Reference values for d = 2..11: numerator / pi^power.
  constexpr std::array<std::pair<double, int>, 10> reference = {{
      {1, 2}, {1, 2}, {4, 3}, {6, 3}, {32, 4},
      {60, 4}, {384, 5}, {840, 5}, {6144, 6}, {15120, 6}}};

  CriterionResult res{2, "coefficient_table", true, json::array()};
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const int d = static_cast<int>(i) + 2;
    const double expected = reference[i].first / std::pow(pi, reference[i].second);
    const double got = options.location_coefficient(d);
    const double rel = std::fabs(got / expected - 1.0);
    const bool ok = rel <= tol;
    res.details.push_back({{"d", d}, {"expected", expected}, {"value", got},
                           {"rel_err", rel}, {"pass", ok}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 3 --------------------------------------------------------------------------
CriterionResult check_asymptotic_law()
{
  constexpr double r = 1e-3;
  constexpr double tol = 1e-3;
  CriterionResult res{3, "asymptotic_probability_law", true, json::array()};
  for (int d = 2; d <= 6; ++d) {
    const double p = analytic::collision_prob_exact(analytic::ModelParams(d, r));
    const double coeff = analytic::asymptotic_prob_coefficient(d);
    const double dev = std::fabs(p * std::pow(r, 1 - d) / coeff - 1.0);
    const bool ok = dev <= tol;
    res.details.push_back({{"d", d}, {"p_exact", p}, {"coefficient", coeff},
                           {"rel_dev", dev}, {"pass", ok}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 4 --------------------------------------------------------------------------
CriterionResult check_naive_probability(const Options& options)
{
  struct Case
  {
    int d;
    double r;
    double tol;  // < 0: use 4 sigma of the exact p
  };
  constexpr std::uint64_t n = 1'000'000;
  const std::array<Case, 3> cases = {{{2, 0.5, -1.0}, {3, 0.6, 1.2e-3}, {1, 0.3, 2e-3}}};

  CriterionResult res{4, "naive_mc_probability", true, json::array()};
  std::uint64_t offset = 0;
  for (const Case& c : cases) {
    auto cfg = ball_config(c.d, c.r, n, options.seed + offset++,
                           montecarlo::Sampler::naive, options.workers);
    cfg.sample_cap = 0;
    const auto acc = montecarlo::run_naive(cfg);
    const double p = analytic::collision_prob_exact(analytic::ModelParams(c.d, c.r));
    const double tol = c.tol > 0.0 ? c.tol : 4.0 * std::sqrt(p * (1.0 - p) / n);
    const auto est = stats::make_estimate(acc.collisions(), acc.trials(), cfg.seed, "naive");
    const double err = std::fabs(est.estimate - p);
    const bool ok = err <= tol;
    res.details.push_back({{"d", c.d}, {"r", c.r}, {"n", n}, {"seed", cfg.seed},
                           {"p_exact", p}, {"p_hat", est.estimate}, {"abs_err", err},
                           {"tolerance", tol}, {"pass", ok}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 5 --------------------------------------------------------------------------
CriterionResult check_solver_equivalence(const Options& options)
{
  constexpr double r = 0.3;
  constexpr std::size_t wanted = 10'000;
  constexpr double time_tol = 1e-9;
  constexpr double point_tol = 1e-12;

  CriterionResult res{5, "solver_decomposition_equivalence", true, json::array()};
  std::uint64_t offset = 0;
  for (int d : {2, 3}) {
    const auto shape = geometry::ShapeOracle::ball(d, r);
    const std::uint64_t seed = options.seed + offset++;
    std::size_t found = 0;
    double worst_t = 0.0;
    double worst_c = 0.0;
    std::uint64_t drawn = 0;
    while (found < wanted) {
      auto rng = random::trial_stream(seed, drawn++);
      const auto pair = sampling::sample_velocity_pair(rng, d);
      const auto t = geometry::collision_time(pair, r);
      if (!t)
        continue;
      ++found;
      const auto split = geometry::com_split(pair);
      const double speed = geometry::norm(split.v_c);
      geometry::Vector z = split.v_c;
      for (auto& x : z)
        x /= speed;
      const auto rho = shape.rho(z);
      const double t_rho = rho ? *rho / speed : std::numeric_limits<double>::infinity();
      worst_t = std::max(worst_t, std::fabs(*t - t_rho));

      const auto via_com = geometry::contact_point(pair, *t);
      const auto via_mid = geometry::centre_midpoint(pair, *t);
      for (int k = 0; k < d; ++k)
        worst_c = std::max(worst_c, std::fabs(via_com[k] - via_mid[k]));
    }
    const bool ok = worst_t <= time_tol && worst_c <= point_tol;
    res.details.push_back({{"d", d}, {"r", r}, {"pairs", found}, {"drawn", drawn},
                           {"max_time_diff", worst_t}, {"max_point_diff", worst_c},
                           {"time_tolerance", time_tol}, {"point_tolerance", point_tol},
                           {"pass", ok}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 6 --------------------------------------------------------------------------
CriterionResult check_cauchy_location(const Options& options)
{
  constexpr double r = 0.3;
  constexpr std::uint64_t n = 100'000;
  auto cfg = ball_config(1, r, n, options.seed, montecarlo::Sampler::conditional,
                         options.workers);
  const auto acc = montecarlo::run_conditional(cfg);
  std::vector<double> xs;
  xs.reserve(acc.size());
  for (const auto& c : acc.locations())
    xs.push_back(c[0]);

  // Conditional law = defective CDF / total mass 1/2 = Cauchy(0, 1 - r).
  const auto test = stats::ks_test(
      xs, [](double x) { return 2.0 * analytic::cauchy_cdf_1d(x, r); }, options.alpha,
      "cauchy_location_d1");
  CriterionResult res{6, "exact_1d_location_law", test.pass, json::object()};
  res.details = {{"r", r}, {"scale", 1.0 - r}, {"seed", cfg.seed}, {"test", test}};
  return res;
}

// 7 --------------------------------------------------------------------------
CriterionResult check_limit_radial_law(const Options& options)
{
  constexpr double r = 0.01;
  constexpr std::uint64_t n = 100'000;
  CriterionResult res{7, "limit_radial_law", true, json::array()};
  std::uint64_t offset = 0;
  for (int d : {2, 3}) {
    auto cfg = ball_config(d, r, n, options.seed + offset++,
                           montecarlo::Sampler::conditional, options.workers);
    const auto acc = montecarlo::run_conditional(cfg);
    std::vector<double> sq;
    sq.reserve(acc.size());
    for (const auto& c : acc.locations())
      sq.push_back(geometry::dot(c, c));
    const auto test = stats::ks_test(
        sq, [d](double x) { return specfun::f_cdf(std::max(0.0, x), d, d); },
        options.alpha, "radial_F_d" + std::to_string(d));
    res.details.push_back({{"d", d}, {"r", r}, {"seed", cfg.seed}, {"test", test}});
    res.pass = res.pass && test.pass;
  }
  return res;
}

// 8 --------------------------------------------------------------------------
CriterionResult check_rotation_invariance_ball(const Options& options)
{
  constexpr double r = 0.5;
  constexpr std::uint64_t n = 100'000;
  CriterionResult res{8, "rotation_invariance_ball", true, json::array()};
  std::uint64_t offset = 0;
  for (int d : {2, 3}) {
    auto cfg = ball_config(d, r, n, options.seed + offset++,
                           montecarlo::Sampler::conditional, options.workers);
    const auto acc = montecarlo::run_conditional(cfg);
    const auto points = acc.locations();
    const auto tests = stats::angular_uniformity_test(points, options.alpha);
    const bool ok = stats::all_pass(tests);
    res.details.push_back({{"d", d}, {"r", r}, {"seed", cfg.seed}, {"pass", ok},
                           {"axes", tests_json(tests)}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 9 --------------------------------------------------------------------------
CriterionResult check_rotation_invariance_ellipsoid(const Options& options)
{
  constexpr std::uint64_t n = 100'000;
  const std::array<double, 2> semi_axes = {0.3, 0.6};
  auto ellipsoid = geometry::Ellipsoid::axis_aligned({-1.0, 0.0}, semi_axes);

  montecarlo::SimConfig cfg{.shape = geometry::ShapeOracle::ellipsoid(ellipsoid)};
  cfg.n = n;
  cfg.seed = options.seed;
  cfg.sampler = montecarlo::Sampler::conditional;
  cfg.workers = options.workers;

  const auto acc = montecarlo::run_conditional(cfg);
  const auto points = acc.locations();
  const auto tests = stats::angular_uniformity_test(points, options.alpha);
  CriterionResult res{9, "rotation_invariance_ellipsoid", stats::all_pass(tests),
                      json::object()};
  res.details = {{"shape", cfg.shape.describe()},
                 {"semi_axes", semi_axes},
                 {"seed", cfg.seed},
                 {"acceptance_rate", static_cast<double>(acc.accepted()) /
                                         static_cast<double>(acc.proposals())},
                 {"axes", tests_json(tests)}};
  return res;
}

// 10 -------------------------------------------------------------------------
CriterionResult check_estimator_consistency(const Options& options)
{
  constexpr int d = 2;
  constexpr double r = 0.3;
  constexpr std::uint64_t n_naive = 1'000'000;
  constexpr std::uint64_t n_cond = 100'000;

  auto naive_cfg = ball_config(d, r, n_naive, options.seed, montecarlo::Sampler::naive,
                               options.workers);
  auto cond_cfg = ball_config(d, r, n_cond, options.seed + 1,
                              montecarlo::Sampler::conditional, options.workers);
  const auto naive = montecarlo::run_naive(naive_cfg);
  const auto cond = montecarlo::run_conditional(cond_cfg);

  auto inside = [](const std::vector<geometry::Vector>& pts) {
    return static_cast<double>(std::count_if(pts.begin(), pts.end(), [](const auto& c) {
      return geometry::dot(c, c) <= 1.0;
    }));
  };
  const auto naive_pts = naive.locations();
  const double s_hat = inside(naive_pts) / static_cast<double>(n_naive);
  const double q_hat = inside(cond.locations()) / static_cast<double>(n_cond);
  const double p = analytic::collision_prob_exact(analytic::ModelParams(d, r));

  const double sigma = std::sqrt(p * p * q_hat * (1.0 - q_hat) / n_cond +
                                 s_hat * (1.0 - s_hat) / n_naive);
  const double diff = std::fabs(p * q_hat - s_hat);
  CriterionResult res{10, "estimator_consistency", diff <= 4.0 * sigma, json::object()};
  res.details = {{"d", d},
                 {"r", r},
                 {"p_exact", p},
                 {"conditional_fraction", q_hat},
                 {"conditional_based", p * q_hat},
                 {"naive_based", s_hat},
                 {"abs_diff", diff},
                 {"joint_sigma", sigma},
                 {"tolerance", 4.0 * sigma},
                 {"naive_records_retained", naive_pts.size() == naive.collisions()}};
  res.pass = res.pass && naive_pts.size() == naive.collisions();
  return res;
}

// 11 -------------------------------------------------------------------------
std::string samples_csv(const montecarlo::SimConfig& config)
{
  std::ostringstream os;
  montecarlo::write_samples_csv(os, montecarlo::run(config));
  return os.str();
}

CriterionResult check_reproducibility(const Options& options)
{
  constexpr std::uint64_t n = 100'000;
  CriterionResult res{11, "reproducibility", true, json::array()};
  for (auto sampler : {montecarlo::Sampler::naive, montecarlo::Sampler::conditional}) {
    auto cfg = ball_config(2, 0.5, n, options.seed, sampler, 1);
    cfg.record_misses = sampler == montecarlo::Sampler::naive;
    const std::string first = samples_csv(cfg);
    const std::string again = samples_csv(cfg);
    cfg.workers = 8;
    const std::string eight = samples_csv(cfg);
    const std::string eight_again = samples_csv(cfg);
    const bool ok = first == again && first == eight && eight == eight_again;
    res.details.push_back({{"sampler", montecarlo::to_string(sampler)},
                           {"bytes", first.size()},
                           {"repeat_identical", first == again && eight == eight_again},
                           {"workers_1_vs_8_identical", first == eight},
                           {"pass", ok}});
    res.pass = res.pass && ok;
  }
  return res;
}

// 12 -------------------------------------------------------------------------
CriterionResult check_normalization(const Options& options)
{
  constexpr double tol = 1e-6;
  CriterionResult res{12, "density_normalization", true, json::object()};
  json cond = json::array();
  for (int d = 1; d <= 6; ++d) {
    const double total = quadrature::integrate_radial(
        [d](double s) { return analytic::conditional_location_density(s, d); }, d,
        analytic::unit_sphere_area(d));
    const bool ok = std::fabs(total - 1.0) <= tol;
    cond.push_back({{"d", d}, {"integral", total}, {"pass", ok}});
    res.pass = res.pass && ok;
  }
  res.details["conditional_density"] = cond;

  // Defective limit density: total mass equals the r^{d-1} coefficient.
  json limit = json::array();
  for (auto [d, expected] : {std::pair{2, 1.0 / pi}, std::pair{3, 0.25}}) {
    const double coeff = options.location_coefficient(d);
    const double total = quadrature::integrate_radial(
        [d, coeff](double s) { return coeff / std::pow(1.0 + s * s, d); }, d,
        analytic::unit_sphere_area(d));
    const bool ok = std::fabs(total / expected - 1.0) <= tol;
    limit.push_back({{"d", d}, {"integral", total}, {"expected", expected}, {"pass", ok}});
    res.pass = res.pass && ok;
  }
  res.details["limit_density_mass"] = limit;
  res.details["tolerance"] = tol;
  return res;
}

}  // namespace collide::validation
