#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace collide {
struct EstimateReport;
}

namespace collide::geometry {

using Vector = std::vector<double>;

// Kinematics of two bodies whose centres start at X1 = (-1, 0, ..., 0) and
// X2 = (1, 0, ..., 0). Ball radii are r; general shapes use M2 = -M1.

/// Initial velocities of the two bodies.
struct VelocityPair
{
  Vector v1;
  Vector v2;

  /// Throws DomainError if the dimensions disagree or are zero.
  std::size_t dim() const;
};

/// Centre-of-mass velocity v_bar = (v1 + v2)/2 and half relative velocity
/// v_c = (v1 - v2)/2.
struct ComSplit
{
  Vector v_bar;
  Vector v_c;
};

struct CollisionEvent
{
  bool collided = false;
  double t = 0.0;  ///< valid iff collided
  Vector c;        ///< contact point, valid iff collided
};

ComSplit com_split(const VelocityPair& pair);

/// Balls of radius r collide iff cos(beta) <= -sqrt(1 - r^2), beta being the
/// angle between X1 - X2 and v1 - v2. Equal velocities never collide.
bool collision_criterion(const VelocityPair& pair, double r);

/// Smaller positive root of
///   |w|^2 s^2 + 2 w.(X1 - X2) s + |X1 - X2|^2 - 4 r^2 = 0,  w = v1 - v2,
/// or nullopt when the balls never touch.
std::optional<double> collision_time(const VelocityPair& pair, double r);

/// v_bar * t. With X1 + X2 = 0 this is the midpoint of the centres at time t.
Vector contact_point(const VelocityPair& pair, double t);

/// ((X1 + t v1) + (X2 + t v2)) / 2, computed from the two trajectories.
Vector centre_midpoint(const VelocityPair& pair, double t);

/// collision_time followed by contact_point.
CollisionEvent resolve_balls(const VelocityPair& pair, double r);

/// Axis-aligned or general ellipsoid {x : (x - x0)^T Q (x - x0) <= 1}.
class Ellipsoid
{
public:
  /// q is row-major d x d. Throws DomainError unless Q is symmetric positive
  /// definite and the origin lies strictly outside (x0^T Q x0 > 1).
  Ellipsoid(Vector center, std::vector<double> q);

  static Ellipsoid axis_aligned(Vector center, std::span<const double> semi_axes);

  int dim() const noexcept { return static_cast<int>(center_.size()); }
  const Vector& center() const noexcept { return center_; }
  const std::vector<double>& q() const noexcept { return q_; }

  /// (a^T Q b)
  double form(std::span<const double> a, std::span<const double> b) const;

private:
  Vector center_;
  std::vector<double> q_;
};

struct Ball
{
  int d;
  double r;
};

/// Strictly convex body M1 (with M2 = -M1) described through its ray-contact
/// function rho(z) = inf{b > 0 : 0 in M1 + b z}.
class ShapeOracle
{
public:
  static ShapeOracle ball(int d, double r);
  static ShapeOracle ellipsoid(Ellipsoid e);

  int dim() const noexcept;
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(kind_); }
  /// Throws std::logic_error for non-ball shapes.
  double ball_radius() const;
  std::string describe() const;

  /// Smallest b > 0 with -b z inside M1, or nullopt if the ray misses.
  /// z must be a unit vector (within 1e-12) of matching dimension.
  std::optional<double> rho(std::span<const double> z) const;

private:
  using Kind = std::variant<Ball, Ellipsoid>;
  explicit ShapeOracle(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Fraction of n uniform directions z for which rho(z) is finite. For balls
/// this is the collision probability, since the outcome depends only on the
/// direction of v1 - v2.
EstimateReport hit_fraction_mc(const ShapeOracle& shape, std::uint64_t n,
                               std::uint64_t seed, int workers = 1);

double norm(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace collide::geometry
