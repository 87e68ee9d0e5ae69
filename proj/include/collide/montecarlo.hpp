#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collide/geometry.hpp"
#include "collide/stats.hpp"

namespace collide::montecarlo {

using geometry::Vector;

enum class Sampler
{
  naive,        ///< Gaussian velocity pairs, every trial resolved
  conditional,  ///< exact sampling of the law given a collision
};

std::string to_string(Sampler s);
std::optional<Sampler> parse_sampler(const std::string& s);

inline constexpr std::size_t kDefaultSampleCap = 1'000'000;
inline constexpr std::uint64_t kRejectionProposalLimit = 10'000'000;
inline constexpr double kRejectionMinAcceptance = 1e-6;

struct SimConfig
{
  geometry::ShapeOracle shape;
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::naive;
  int workers = 1;
  /// Maximum number of retained trial records.
  std::size_t sample_cap = kDefaultSampleCap;
  /// Also retain records of trials without a collision (naive sampler).
  bool record_misses = false;

  int d() const noexcept { return shape.dim(); }
};

/// One retained trial.
struct TrialRecord
{
  std::uint64_t trial = 0;
  bool collided = false;
  double t = 0.0;
  Vector c;
};

/// Mergeable summary of a batch of trials.
///
/// Counts are exact. At most `cap` trial records are kept; beyond the cap the
/// records with the smallest hash priority (a function of seed and trial
/// index only) survive, so the retained set is the same however the trials
/// were partitioned. Records are kept sorted by trial index.
class Accumulator
{
public:
  Accumulator() = default;
  Accumulator(int dim, std::uint64_t seed, std::size_t cap = kDefaultSampleCap);

  void count_trial(bool collided) noexcept;
  void record(const TrialRecord& rec);
  void add_proposals(std::uint64_t proposals, std::uint64_t accepted) noexcept;

  /// Associative and commutative; both sides must share dim, seed and cap.
  void merge(const Accumulator& other);

  int dim() const noexcept { return dim_; }
  std::uint64_t trials() const noexcept { return trials_; }
  std::uint64_t collisions() const noexcept { return collisions_; }
  std::uint64_t proposals() const noexcept { return proposals_; }
  std::uint64_t accepted() const noexcept { return accepted_; }
  std::size_t cap() const noexcept { return cap_; }

  std::size_t size() const noexcept { return trial_ids_.size(); }
  TrialRecord at(std::size_t i) const;

  /// Locations of retained collided records, in trial order.
  std::vector<Vector> locations() const;
  /// Collision times of retained collided records, in trial order.
  std::vector<double> times() const;

  bool operator==(const Accumulator&) const = default;

private:
  void enforce_cap();

  int dim_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t cap_ = kDefaultSampleCap;
  std::uint64_t trials_ = 0;
  std::uint64_t collisions_ = 0;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;

  std::vector<std::uint64_t> trial_ids_;
  std::vector<std::uint8_t> collided_;
  std::vector<double> times_;
  std::vector<double> coords_;  // row-major, dim_ per record
};

/// Naive trials: draw (V1, V2), resolve the first contact.
Accumulator run_naive(const SimConfig& config);

/// Conditional trials, every one a collision. Ball: z uniform on the hitting
/// cap; other shapes: uniform z rejected until rho(z) is finite. Then
/// T = rho(z)/|V^c| and C = V_bar T with V_bar, |V^c| independent of z.
///
/// Throws SamplerError when a trial exhausts kRejectionProposalLimit
/// proposals or the overall acceptance rate after that many proposals falls
/// below kRejectionMinAcceptance.
Accumulator run_conditional(const SimConfig& config);

/// Dispatches on config.sampler.
Accumulator run(const SimConfig& config);

/// Resolve a single naive trial (no accumulation).
geometry::CollisionEvent naive_trial(const geometry::ShapeOracle& shape,
                                     std::uint64_t seed, std::uint64_t trial);

/// Total collision probability used to turn conditional estimates into
/// unconditional ones: exact for balls, hit_fraction_mc otherwise.
double collision_mass(const geometry::ShapeOracle& shape, std::uint64_t mc_trials,
                      std::uint64_t seed, int workers = 1);

struct Histogram
{
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  std::uint64_t total() const noexcept;
};

/// Uniform bins on [lo, hi), lower edge inclusive; values >= hi overflow.
Histogram histogram(std::span<const double> samples, double lo, double hi,
                    std::size_t bins);

/// CSV `trial,collided,t,c_1,...,c_d`; missing t/c fields are left empty and
/// numbers use 17 significant digits.
void write_samples_csv(std::ostream& os, const Accumulator& acc);

/// Shortest form of x with 17 significant digits.
std::string format_double(double x);

}  // namespace collide::montecarlo
