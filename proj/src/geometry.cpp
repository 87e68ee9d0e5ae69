#include "collide/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "collide/errors.hpp"
#include "collide/parallel.hpp"
#include "collide/random.hpp"
#include "collide/sampling.hpp"
#include "collide/stats.hpp"

namespace collide::geometry {

namespace {

// Discriminants in [-kGrazingTol, 0) are rounding noise around a tangency.
constexpr double kGrazingTol = 1e-14;

}  // namespace

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> x)
{
  return std::sqrt(dot(x, x));
}

std::size_t VelocityPair::dim() const
{
  if (v1.empty() || v1.size() != v2.size())
    throw DomainError("velocity pair dimensions must match and be nonzero");
  return v1.size();
}

ComSplit com_split(const VelocityPair& pair)
{
  const std::size_t d = pair.dim();
  ComSplit out{Vector(d), Vector(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.v_bar[k] = 0.5 * (pair.v1[k] + pair.v2[k]);
    out.v_c[k] = 0.5 * (pair.v1[k] - pair.v2[k]);
  }
  return out;
}

namespace {

struct RelativeMotion
{
  double w1;     // first component of w = v1 - v2
  double w_sq;   // |w|^2
};

RelativeMotion relative_motion(const VelocityPair& pair)
{
  const std::size_t d = pair.dim();
  RelativeMotion m{pair.v1[0] - pair.v2[0], 0.0};
  for (std::size_t k = 0; k < d; ++k) {
    const double w = pair.v1[k] - pair.v2[k];
    m.w_sq += w * w;
  }
  return m;
}

void require_radius(double r)
{
  if (!(r > 0.0 && r < 1.0))
    throw DomainError("radius must lie in (0, 1)");
}

// Quarter of the discriminant of the collision quadratic, divided by 4:
// w1^2 - (1 - r^2)|w|^2. Nonnegative with w1 > 0 iff the balls collide.
double reduced_discriminant(const RelativeMotion& m, double r)
{
  return m.w1 * m.w1 - (1.0 - r * r) * m.w_sq;
}

}  // namespace

bool collision_criterion(const VelocityPair& pair, double r)
{
  require_radius(r);
  const RelativeMotion m = relative_motion(pair);
  if (m.w_sq == 0.0 || m.w1 <= 0.0)
    return false;
  return reduced_discriminant(m, r) >= 0.0;
}

std::optional<double> collision_time(const VelocityPair& pair, double r)
{
  require_radius(r);
  const RelativeMotion m = relative_motion(pair);
  if (m.w_sq == 0.0 || m.w1 <= 0.0)
    return std::nullopt;

  // a s^2 + 2 h s + c = 0 with a = |w|^2, h = w.(X1 - X2) = -2 w1,
  // c = 4 - 4 r^2; discriminant / 4 = h^2 - a c = 4 * reduced.
  const double disc = 4.0 * reduced_discriminant(m, r);
  if (disc < 0.0)
    return std::nullopt;

  // Larger root from q = -h + sqrt(disc); the smaller one from the product c/a.
  const double c = 4.0 * (1.0 - r * r);
  const double q = 2.0 * m.w1 + std::sqrt(disc);
  return c / q;
}

Vector contact_point(const VelocityPair& pair, double t)
{
  const std::size_t d = pair.dim();
  Vector c(d);
  for (std::size_t k = 0; k < d; ++k)
    c[k] = 0.5 * (pair.v1[k] + pair.v2[k]) * t;
  return c;
}

Vector centre_midpoint(const VelocityPair& pair, double t)
{
  const std::size_t d = pair.dim();
  Vector mid(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double x1 = (k == 0 ? -1.0 : 0.0) + t * pair.v1[k];
    const double x2 = (k == 0 ? 1.0 : 0.0) + t * pair.v2[k];
    mid[k] = 0.5 * (x1 + x2);
  }
  return mid;
}

CollisionEvent resolve_balls(const VelocityPair& pair, double r)
{
  CollisionEvent ev;
  if (auto t = collision_time(pair, r)) {
    ev.collided = true;
    ev.t = *t;
    ev.c = contact_point(pair, *t);
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Vector center, std::vector<double> q)
    : center_(std::move(center)), q_(std::move(q))
{
  const std::size_t d = center_.size();
  if (d == 0 || q_.size() != d * d)
    throw DomainError("ellipsoid: Q must be d x d with d >= 1");
  for (double v : q_)
    if (!std::isfinite(v))
      throw DomainError("ellipsoid: Q has non-finite entries");
  for (double v : center_)
    if (!std::isfinite(v))
      throw DomainError("ellipsoid: center has non-finite entries");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::fabs(q_[i * d + j] - q_[j * d + i]) >
          1e-12 * (std::fabs(q_[i * d + j]) + std::fabs(q_[j * d + i]) + 1.0))
        throw DomainError("ellipsoid: Q must be symmetric");

  // Cholesky attempt as the positive-definiteness check.
  std::vector<double> l(d * d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = q_[j * d + j];
    for (std::size_t k = 0; k < j; ++k)
      diag -= l[j * d + k] * l[j * d + k];
    if (!(diag > 0.0))
      throw DomainError("ellipsoid: Q must be positive definite");
    l[j * d + j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = q_[i * d + j];
      for (std::size_t k = 0; k < j; ++k)
        s -= l[i * d + k] * l[j * d + k];
      l[i * d + j] = s / l[j * d + j];
    }
  }

  if (!(form(center_, center_) > 1.0))
    throw DomainError("ellipsoid: origin must lie strictly outside (x0^T Q x0 > 1)");
}

Ellipsoid Ellipsoid::axis_aligned(Vector center, std::span<const double> semi_axes)
{
  const std::size_t d = center.size();
  if (semi_axes.size() != d)
    throw DomainError("ellipsoid: one semi-axis per dimension required");
  std::vector<double> q(d * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    if (!(semi_axes[k] > 0.0))
      throw DomainError("ellipsoid: semi-axes must be positive");
    q[k * d + k] = 1.0 / (semi_axes[k] * semi_axes[k]);
  }
  return Ellipsoid(std::move(center), std::move(q));
}

double Ellipsoid::form(std::span<const double> a, std::span<const double> b) const
{
  const std::size_t d = center_.size();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      row += q_[i * d + j] * b[j];
    s += a[i] * row;
  }
  return s;
}

// ---------------------------------------------------------------------------
// ShapeOracle

ShapeOracle ShapeOracle::ball(int d, double r)
{
  if (d < 1)
    throw DomainError("ball: dimension must be at least 1");
  require_radius(r);
  return ShapeOracle(Ball{d, r});
}

ShapeOracle ShapeOracle::ellipsoid(Ellipsoid e)
{
  return ShapeOracle(std::move(e));
}

int ShapeOracle::dim() const noexcept
{
  return std::visit(
      [](const auto& k) {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, Ball>)
          return k.d;
        else
          return k.dim();
      },
      kind_);
}

double ShapeOracle::ball_radius() const
{
  if (const auto* b = std::get_if<Ball>(&kind_))
    return b->r;
  throw std::logic_error("ball_radius: shape is not a ball");
}

std::string ShapeOracle::describe() const
{
  std::ostringstream os;
  os.precision(17);
  if (const auto* b = std::get_if<Ball>(&kind_)) {
    os << "ball(d=" << b->d << ", r=" << b->r << ")";
  } else {
    const auto& e = std::get<Ellipsoid>(kind_);
    os << "ellipsoid(d=" << e.dim() << ", center=[";
    for (std::size_t k = 0; k < e.center().size(); ++k)
      os << (k ? "," : "") << e.center()[k];
    os << "])";
  }
  return os.str();
}

namespace {

// Smaller positive root of A b^2 + 2 B b + C = 0 with A > 0, C > 0, or nullopt.
std::optional<double> smaller_positive_root(double a, double b, double c)
{
  if (b >= 0.0)
    return std::nullopt;  // both roots share the sign of -B/A <= 0
  double disc = b * b - a * c;
  if (disc < 0.0) {
    const double scale = std::max(b * b, a * c);
    if (disc < -kGrazingTol * scale)
      return std::nullopt;
    disc = 0.0;  // tangency
  }
  return c / (-b + std::sqrt(disc));
}

}  // namespace

std::optional<double> ShapeOracle::rho(std::span<const double> z) const
{
  if (static_cast<int>(z.size()) != dim())
    throw DomainError("rho: direction has the wrong dimension");
  if (std::fabs(norm(z) - 1.0) > 1e-12)
    throw DomainError("rho: direction must be a unit vector");

  if (const auto* ball = std::get_if<Ball>(&kind_)) {
    // |b z - e1|^2 <= r^2  <=>  b^2 - 2 z1 b + (1 - r^2) <= 0
    return smaller_positive_root(1.0, -z[0], 1.0 - ball->r * ball->r);
  }
  const auto& e = std::get<Ellipsoid>(kind_);
  // (b z + x0)^T Q (b z + x0) <= 1
  const auto& x0 = e.center();
  return smaller_positive_root(e.form(z, z), e.form(z, x0), e.form(x0, x0) - 1.0);
}

EstimateReport hit_fraction_mc(const ShapeOracle& shape, std::uint64_t n,
                               std::uint64_t seed, int workers)
{
  if (n == 0)
    throw DomainError("hit_fraction_mc: n must be positive");
  const int d = shape.dim();
  auto counts = parallel_chunks<std::uint64_t>(
      n, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          auto rng = random::trial_stream(seed, i);
          const Vector z = sampling::sample_unit_sphere(rng, d);
          if (shape.rho(z))
            ++hits;
        }
        return hits;
      });
  std::uint64_t total = 0;
  for (auto c : counts)
    total += c;
  return stats::make_estimate(total, n, seed, "direction");
}

}  // namespace collide::geometry
