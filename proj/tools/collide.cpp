// collide: collision probabilities and collision-location laws for two
// randomly moving convex bodies, with Monte Carlo validation.
//
// Exit codes: 0 success, 1 validation failure, 2 bad arguments, 3 I/O error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "collide/analytic.hpp"
#include "collide/errors.hpp"
#include "collide/geometry.hpp"
#include "collide/montecarlo.hpp"
#include "collide/parallel.hpp"
#include "collide/stats.hpp"
#include "collide/validation.hpp"

namespace {

using nlohmann::json;
using namespace collide;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

class Report
{
public:
  explicit Report(std::string command) : start_(std::chrono::steady_clock::now())
  {
    body_["command"] = std::move(command);
    body_["params"] = json::object();
    body_["results"] = json::object();
    body_["seed"] = nullptr;
    body_["version"] = COLLIDE_VERSION;
  }

  json& params() { return body_["params"]; }
  json& results() { return body_["results"]; }
  void seed(std::uint64_t s) { body_["seed"] = s; }

  void print(std::ostream& os)
  {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    body_["elapsed_s"] = std::chrono::duration<double>(elapsed).count();
    os << body_.dump(2) << '\n';
  }

private:
  std::chrono::steady_clock::time_point start_;
  json body_;
};

std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path)
{
  out.flush();
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// prob

struct ProbArgs
{
  int d = 0;
  double r = 0.0;
  std::string method = "exact";
};

int cmd_prob(const ProbArgs& a)
{
  const analytic::ModelParams params(a.d, a.r);
  double p = 0.0;
  if (a.method == "exact") {
    p = analytic::collision_prob_exact(params);
  } else if (a.method == "closed") {
    p = analytic::collision_prob_closed(params);
  } else {
    p = analytic::asymptotic_prob_coefficient(a.d) * std::pow(a.r, a.d - 1);
  }

  Report report("prob");
  report.params() = {{"d", a.d}, {"r", a.r}, {"method", a.method}};
  report.results() = {{"p", p}, {"method", a.method}, {"d", a.d}, {"r", a.r}};
  report.print(std::cout);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs
{
  int d = 0;
  std::optional<double> r;
  std::uint64_t n = 100'000;
  std::string sampler = "naive";
  std::uint64_t seed = 42;
  int workers = 0;
  std::string out;
  std::string shape = "ball";
  std::vector<double> center;
  std::vector<double> semi_axes;
  std::size_t sample_cap = montecarlo::kDefaultSampleCap;
  std::uint64_t mass_trials = 1'000'000;
};

geometry::ShapeOracle make_shape(const SimulateArgs& a)
{
  if (a.shape == "ball") {
    if (!a.r)
      throw DomainError("--r is required for a ball");
    return geometry::ShapeOracle::ball(a.d, *a.r);
  }
  if (static_cast<int>(a.center.size()) != a.d || static_cast<int>(a.semi_axes.size()) != a.d)
    throw DomainError("--center and --semi-axes need exactly d values each");
  return geometry::ShapeOracle::ellipsoid(geometry::Ellipsoid::axis_aligned(a.center, a.semi_axes));
}

int cmd_simulate(const SimulateArgs& a)
{
  const auto sampler = montecarlo::parse_sampler(a.sampler);
  if (!sampler)
    throw DomainError("unknown sampler '" + a.sampler + "'");
  if (a.n == 0)
    throw DomainError("--n must be positive");

  montecarlo::SimConfig cfg{.shape = make_shape(a)};
  cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.sampler = *sampler;
  cfg.workers = resolve_workers(a.workers);
  cfg.sample_cap = a.sample_cap;
  cfg.record_misses = *sampler == montecarlo::Sampler::naive;

  // Open before running so a bad path fails fast.
  std::optional<std::ofstream> out;
  if (!a.out.empty())
    out = open_output(a.out);

  const montecarlo::Accumulator acc = montecarlo::run(cfg);

  if (out) {
    montecarlo::write_samples_csv(*out, acc);
    finish_output(*out, a.out);
  }

  Report report("simulate");
  report.seed(a.seed);
  report.params() = {{"d", a.d},           {"shape", cfg.shape.describe()},
                     {"n", a.n},           {"sampler", a.sampler},
                     {"workers", cfg.workers}, {"out", a.out.empty() ? json(nullptr) : json(a.out)},
                     {"sample_cap", a.sample_cap}};
  json& res = report.results();
  res["trials"] = acc.trials();
  res["collisions"] = acc.collisions();
  res["retained_samples"] = acc.size();

  if (*sampler == montecarlo::Sampler::naive) {
    const auto est = stats::make_estimate(acc.collisions(), acc.trials(), a.seed, "naive");
    res["p_hat"] = est.estimate;
    res["std_error"] = est.std_error;
    res["ci"] = est.ci;
    res["ci_level"] = est.level;
  } else {
    const double mass = montecarlo::collision_mass(cfg.shape, a.mass_trials, a.seed + 1,
                                                   cfg.workers);
    res["collision_mass"] = mass;
    res["collision_mass_source"] = cfg.shape.is_ball() ? "exact" : "hit_fraction_mc";
    res["proposals"] = acc.proposals();
  }
  if (cfg.shape.is_ball())
    res["p_exact"] = analytic::collision_prob_exact(
        analytic::ModelParams(a.d, cfg.shape.ball_radius()));

  report.print(std::cout);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs
{
  std::string suite = "all";
  double alpha = 0.01;
  std::uint64_t seed = 42;
  int workers = 0;
};

int cmd_validate(const ValidateArgs& a)
{
  const auto suite = validation::parse_suite(a.suite);
  if (!suite)
    throw DomainError("unknown suite '" + a.suite + "'");
  if (!(a.alpha > 0.0 && a.alpha < 1.0))
    throw DomainError("--alpha must lie in (0, 1)");

  validation::Options opts;
  opts.alpha = a.alpha;
  opts.seed = a.seed;
  opts.workers = resolve_workers(a.workers);

  const auto results = validation::run_suite(*suite, opts);
  bool all = true;
  json tests = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    tests.push_back(r);
  }

  Report report("validate");
  report.seed(a.seed);
  report.params() = {{"suite", a.suite}, {"alpha", a.alpha}, {"workers", opts.workers}};
  report.results() = {{"pass", all}, {"tests", tests}};
  report.print(std::cout);
  return all ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// density

struct DensityArgs
{
  int d = 0;
  std::string mode = "conditional";
  double max_norm = 5.0;
  std::size_t points = 101;
  std::string out;
};

int cmd_density(const DensityArgs& a)
{
  if (a.d < 1)
    throw DomainError("--d must be at least 1");
  if (!(a.max_norm > 0.0) || a.points < 2)
    throw DomainError("grid needs --max > 0 and --points >= 2");
  const bool conditional = a.mode == "conditional";
  if (!conditional && a.mode != "limit")
    throw DomainError("unknown mode '" + a.mode + "'");

  std::vector<double> xs(a.points);
  std::vector<double> ys(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    xs[i] = a.max_norm * static_cast<double>(i) / static_cast<double>(a.points - 1);
    ys[i] = conditional ? analytic::conditional_location_density(xs[i], a.d)
                        : analytic::location_density_limit(xs[i], a.d);
  }

  // Mass within the grid radius, trapezoid rule on area * s^{d-1} * f(s).
  const double area = analytic::unit_sphere_area(a.d);
  double mass = 0.0;
  for (std::size_t i = 1; i < a.points; ++i) {
    const double f0 = area * std::pow(xs[i - 1], a.d - 1) * ys[i - 1];
    const double f1 = area * std::pow(xs[i], a.d - 1) * ys[i];
    mass += 0.5 * (f0 + f1) * (xs[i] - xs[i - 1]);
  }

  auto write_csv = [&](std::ostream& os) {
    os << "x_norm,density\n";
    for (std::size_t i = 0; i < a.points; ++i)
      os << montecarlo::format_double(xs[i]) << ',' << montecarlo::format_double(ys[i])
         << '\n';
  };

  if (a.out.empty()) {
    write_csv(std::cout);
    return kExitOk;
  }
  auto out = open_output(a.out);
  write_csv(out);
  finish_output(out, a.out);

  Report report("density");
  report.params() = {{"d", a.d}, {"mode", a.mode}, {"max", a.max_norm},
                     {"points", a.points}, {"out", a.out}};
  report.results() = {{"density_at_origin", ys.front()}, {"trapezoid_mass", mass}};
  report.print(std::cout);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// table

int cmd_table()
{
  json rows = json::array();
  for (int d = 2; d <= 11; ++d) {
    const auto exact = analytic::location_coefficient_exact(d);
    rows.push_back({{"d", d}, {"exact", exact.str()},
                    {"value", analytic::location_coefficient(d)}});
  }
  Report report("table");
  report.results() = {{"rows", rows}};
  report.print(std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Collision probabilities and collision-location laws for two "
               "randomly moving convex bodies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COLLIDE_VERSION));

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("prob", "Collision probability p_{r,d}");
  prob_cmd->add_option("--d", prob.d, "Dimension (>= 1)")->required();
  prob_cmd->add_option("--r", prob.r, "Ball radius in (0, 1)")->required();
  prob_cmd->add_option("--method", prob.method, "exact | closed | asymptotic")
      ->check(CLI::IsMember({"exact", "closed", "asymptotic"}));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo simulation");
  sim_cmd->add_option("--d", sim.d, "Dimension (>= 1)")->required();
  sim_cmd->add_option("--r", sim.r, "Ball radius in (0, 1)");
  sim_cmd->add_option("--n", sim.n, "Number of trials");
  sim_cmd->add_option("--sampler", sim.sampler, "naive | conditional")
      ->check(CLI::IsMember({"naive", "conditional"}));
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--workers", sim.workers,
                      "Worker threads (default: all cores; $COLLIDE_THREADS overrides)");
  sim_cmd->add_option("--out", sim.out, "Sample CSV output path");
  sim_cmd->add_option("--shape", sim.shape, "ball | ellipsoid")
      ->check(CLI::IsMember({"ball", "ellipsoid"}));
  sim_cmd->add_option("--center", sim.center, "Ellipsoid centre of M1")->delimiter(',');
  sim_cmd->add_option("--semi-axes", sim.semi_axes, "Ellipsoid semi-axes")->delimiter(',');
  sim_cmd->add_option("--sample-cap", sim.sample_cap, "Maximum retained samples");
  sim_cmd->add_option("--mass-trials", sim.mass_trials,
                      "Directions used to estimate the collision mass of non-ball shapes");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Run the validation suites");
  val_cmd->add_option("--suite", val.suite, "analytic | mc | location | rotation | all")
      ->check(CLI::IsMember({"analytic", "mc", "location", "rotation", "all"}));
  val_cmd->add_option("--alpha", val.alpha, "Significance level");
  val_cmd->add_option("--seed", val.seed, "Master seed");
  val_cmd->add_option("--workers", val.workers, "Worker threads");

  DensityArgs dens;
  auto* dens_cmd = app.add_subcommand("density", "Radial collision-location density");
  dens_cmd->add_option("--d", dens.d, "Dimension (>= 1)")->required();
  dens_cmd->add_option("--mode", dens.mode, "limit | conditional")
      ->check(CLI::IsMember({"limit", "conditional"}));
  dens_cmd->add_option("--max", dens.max_norm, "Largest |x| on the grid");
  dens_cmd->add_option("--points", dens.points, "Grid points");
  dens_cmd->add_option("--out", dens.out, "CSV output path (default: stdout)");

  auto* table_cmd = app.add_subcommand("table", "Location coefficients for d = 2..11");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*prob_cmd)
      return cmd_prob(prob);
    if (*sim_cmd)
      return cmd_simulate(sim);
    if (*val_cmd)
      return cmd_validate(val);
    if (*dens_cmd)
      return cmd_density(dens);
    if (*table_cmd)
      return cmd_table();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
