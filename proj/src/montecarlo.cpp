#include "collide/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

#include "collide/analytic.hpp"
#include "collide/errors.hpp"
#include "collide/parallel.hpp"
#include "collide/random.hpp"
#include "collide/sampling.hpp"

namespace collide {

int resolve_workers(int requested)
{
  if (const char* env = std::getenv("COLLIDE_THREADS")) {
    int value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0)
      return value;
  }
  if (requested > 0)
    return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace collide

namespace collide::montecarlo {

namespace {

constexpr std::uint64_t kPrioritySalt = 0x6a09e667f3bcc909ULL;

std::uint64_t retention_priority(std::uint64_t seed, std::uint64_t trial)
{
  return random::stream_key(seed ^ kPrioritySalt, trial);
}

}  // namespace

std::string to_string(Sampler s)
{
  return s == Sampler::naive ? "naive" : "conditional";
}

std::optional<Sampler> parse_sampler(const std::string& s)
{
  if (s == "naive")
    return Sampler::naive;
  if (s == "conditional")
    return Sampler::conditional;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Accumulator

Accumulator::Accumulator(int dim, std::uint64_t seed, std::size_t cap)
    : dim_(dim), seed_(seed), cap_(cap)
{
}

void Accumulator::count_trial(bool collided) noexcept
{
  ++trials_;
  if (collided)
    ++collisions_;
}

void Accumulator::record(const TrialRecord& rec)
{
  if (cap_ == 0)
    return;
  trial_ids_.push_back(rec.trial);
  collided_.push_back(rec.collided ? 1 : 0);
  times_.push_back(rec.t);
  if (rec.collided) {
    coords_.insert(coords_.end(), rec.c.begin(), rec.c.end());
  } else {
    coords_.insert(coords_.end(), static_cast<std::size_t>(dim_), 0.0);
  }
  if (trial_ids_.size() >= 2 * cap_)
    enforce_cap();
}

void Accumulator::add_proposals(std::uint64_t proposals, std::uint64_t accepted) noexcept
{
  proposals_ += proposals;
  accepted_ += accepted;
}

void Accumulator::enforce_cap()
{
  const std::size_t n = trial_ids_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  if (n > cap_) {
    std::vector<std::uint64_t> priority(n);
    for (std::size_t i = 0; i < n; ++i)
      priority[i] = retention_priority(seed_, trial_ids_[i]);
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cap_),
                     order.end(), [&](std::size_t a, std::size_t b) {
                       return priority[a] < priority[b] ||
                              (priority[a] == priority[b] && trial_ids_[a] < trial_ids_[b]);
                     });
    order.resize(cap_);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return trial_ids_[a] < trial_ids_[b]; });

  const std::size_t d = static_cast<std::size_t>(dim_);
  std::vector<std::uint64_t> ids;
  std::vector<std::uint8_t> flags;
  std::vector<double> ts;
  std::vector<double> cs;
  ids.reserve(order.size());
  flags.reserve(order.size());
  ts.reserve(order.size());
  cs.reserve(order.size() * d);
  for (std::size_t i : order) {
    ids.push_back(trial_ids_[i]);
    flags.push_back(collided_[i]);
    ts.push_back(times_[i]);
    cs.insert(cs.end(), coords_.begin() + static_cast<std::ptrdiff_t>(i * d),
              coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
  trial_ids_ = std::move(ids);
  collided_ = std::move(flags);
  times_ = std::move(ts);
  coords_ = std::move(cs);
}

void Accumulator::merge(const Accumulator& other)
{
  if (dim_ == 0 && trials_ == 0 && trial_ids_.empty()) {
    dim_ = other.dim_;
    seed_ = other.seed_;
    cap_ = other.cap_;
  }
  if (other.dim_ != 0 && (other.dim_ != dim_ || other.seed_ != seed_ || other.cap_ != cap_))
    throw std::invalid_argument("Accumulator::merge: incompatible accumulators");

  trials_ += other.trials_;
  collisions_ += other.collisions_;
  proposals_ += other.proposals_;
  accepted_ += other.accepted_;
  trial_ids_.insert(trial_ids_.end(), other.trial_ids_.begin(), other.trial_ids_.end());
  collided_.insert(collided_.end(), other.collided_.begin(), other.collided_.end());
  times_.insert(times_.end(), other.times_.begin(), other.times_.end());
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  enforce_cap();
}

TrialRecord Accumulator::at(std::size_t i) const
{
  TrialRecord rec;
  rec.trial = trial_ids_.at(i);
  rec.collided = collided_[i] != 0;
  rec.t = times_[i];
  if (rec.collided) {
    const std::size_t d = static_cast<std::size_t>(dim_);
    rec.c.assign(coords_.begin() + static_cast<std::ptrdiff_t>(i * d),
                 coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
  return rec;
}

std::vector<Vector> Accumulator::locations() const
{
  const std::size_t d = static_cast<std::size_t>(dim_);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < trial_ids_.size(); ++i) {
    if (!collided_[i])
      continue;
    out.emplace_back(coords_.begin() + static_cast<std::ptrdiff_t>(i * d),
                     coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
  return out;
}

std::vector<double> Accumulator::times() const
{
  std::vector<double> out;
  for (std::size_t i = 0; i < trial_ids_.size(); ++i)
    if (collided_[i])
      out.push_back(times_[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Engines

geometry::CollisionEvent naive_trial(const geometry::ShapeOracle& shape,
                                     std::uint64_t seed, std::uint64_t trial)
{
  const int d = shape.dim();
  auto rng = random::trial_stream(seed, trial);
  const geometry::VelocityPair pair = sampling::sample_velocity_pair(rng, d);

  if (shape.is_ball())
    return geometry::resolve_balls(pair, shape.ball_radius());

  geometry::CollisionEvent ev;
  const geometry::ComSplit split = geometry::com_split(pair);
  const double speed = geometry::norm(split.v_c);
  if (speed == 0.0)
    return ev;
  Vector z = split.v_c;
  for (auto& x : z)
    x /= speed;
  if (auto rho = shape.rho(z)) {
    ev.collided = true;
    ev.t = *rho / speed;
    ev.c = split.v_bar;
    for (auto& x : ev.c)
      x *= ev.t;
  }
  return ev;
}

namespace {

template <class TrialFn>
Accumulator run_trials(const SimConfig& config, TrialFn&& trial_fn)
{
  if (config.n == 0)
    throw DomainError("simulation needs at least one trial");
  const int d = config.d();
  auto parts = parallel_chunks<Accumulator>(
      config.n, config.workers,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        Accumulator acc(d, config.seed, config.sample_cap);
        for (std::uint64_t i = begin; i < end; ++i)
          trial_fn(acc, i);
        return acc;
      });
  Accumulator total(d, config.seed, config.sample_cap);
  for (const auto& p : parts)
    total.merge(p);
  return total;
}

}  // namespace

Accumulator run_naive(const SimConfig& config)
{
  return run_trials(config, [&](Accumulator& acc, std::uint64_t i) {
    const geometry::CollisionEvent ev = naive_trial(config.shape, config.seed, i);
    acc.count_trial(ev.collided);
    if (ev.collided || config.record_misses)
      acc.record(TrialRecord{i, ev.collided, ev.t, ev.c});
  });
}

Accumulator run_conditional(const SimConfig& config)
{
  const geometry::ShapeOracle& shape = config.shape;
  const int d = shape.dim();
  const bool ball = shape.is_ball();
  const double cap_c =
      ball ? std::sqrt(1.0 - shape.ball_radius() * shape.ball_radius()) : 0.0;

  Accumulator total = run_trials(config, [&](Accumulator& acc, std::uint64_t i) {
    auto rng = random::trial_stream(config.seed, i);

    Vector z;
    std::optional<double> rho;
    if (ball) {
      // d = 1: conditioning on v1 > v2 fixes the direction to +1
      z = d == 1 ? Vector{1.0} : sampling::sample_cap_direction(rng, d, cap_c);
      rho = shape.rho(z);
      acc.add_proposals(1, 1);
    } else {
      std::uint64_t proposals = 0;
      do {
        if (proposals == kRejectionProposalLimit)
          throw SamplerError("conditional sampler: no accepted direction after " +
                             std::to_string(kRejectionProposalLimit) + " proposals");
        z = sampling::sample_unit_sphere(rng, d);
        rho = shape.rho(z);
        ++proposals;
      } while (!rho);
      acc.add_proposals(proposals, 1);
    }
    if (!rho)
      throw SamplerError("conditional sampler: cap direction missed the body");

    const double speed = sampling::sample_relative_speed(rng, d);
    Vector c = sampling::standard_normal_vector(rng, d, std::sqrt(0.5));
    const double t = *rho / speed;
    for (auto& x : c)
      x *= t;

    acc.count_trial(true);
    acc.record(TrialRecord{i, true, t, std::move(c)});
  });

  if (total.proposals() >= kRejectionProposalLimit &&
      static_cast<double>(total.accepted()) <
          kRejectionMinAcceptance * static_cast<double>(total.proposals()))
    throw SamplerError("conditional sampler: acceptance rate below 1e-6");
  return total;
}

Accumulator run(const SimConfig& config)
{
  return config.sampler == Sampler::naive ? run_naive(config) : run_conditional(config);
}

double collision_mass(const geometry::ShapeOracle& shape, std::uint64_t mc_trials,
                      std::uint64_t seed, int workers)
{
  if (shape.is_ball())
    return analytic::collision_prob_exact(
        analytic::ModelParams(shape.dim(), shape.ball_radius()));
  return geometry::hit_fraction_mc(shape, mc_trials, seed, workers).estimate;
}

// ---------------------------------------------------------------------------
// Histogram and CSV

std::uint64_t Histogram::total() const noexcept
{
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) +
         underflow + overflow;
}

Histogram histogram(std::span<const double> samples, double lo, double hi,
                    std::size_t bins)
{
  if (bins == 0 || !(lo < hi))
    throw DomainError("histogram: need bins >= 1 and lo < hi");
  Histogram h{lo, hi, std::vector<std::uint64_t>(bins, 0), 0, 0};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (x < lo) {
      ++h.underflow;
    } else if (x >= hi || std::isnan(x)) {
      ++h.overflow;
    } else {
      auto k = static_cast<std::size_t>((x - lo) / width);
      h.counts[std::min(k, bins - 1)]++;
    }
  }
  return h;
}

std::string format_double(double x)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_samples_csv(std::ostream& os, const Accumulator& acc)
{
  const std::size_t d = static_cast<std::size_t>(acc.dim());
  os << "trial,collided,t";
  for (std::size_t k = 1; k <= d; ++k)
    os << ",c_" << k;
  os << '\n';

  for (std::size_t i = 0; i < acc.size(); ++i) {
    const TrialRecord rec = acc.at(i);
    os << rec.trial << ',' << (rec.collided ? 1 : 0) << ',';
    if (rec.collided)
      os << format_double(rec.t);
    for (std::size_t k = 0; k < d; ++k) {
      os << ',';
      if (rec.collided)
        os << format_double(rec.c[k]);
    }
    os << '\n';
  }
}

}  // namespace collide::montecarlo
