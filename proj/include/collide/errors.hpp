#pragma once

#include <stdexcept>
#include <string>

namespace collide {

/// Input outside the mathematical domain of an operation (including NaN).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Closed forms exist only for a few dimensions.
class UnsupportedDimension : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A sampler could not make progress (e.g. rejection acceptance collapsed).
class SamplerError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace collide
