#pragma once

#include <stdexcept>
#include <string>

namespace oblique {

/// Base class for failures of the numerical pipeline. `stage()` names the
/// step that failed (e.g. "u2 quadrature", "fit u1") once the cascade has
/// annotated it; lower layers leave it empty.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what, std::string stage = {})
      : std::runtime_error(what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

/// A kernel evaluation hit P == Q on the unit sphere.
class SurfaceCollisionError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature exhausted its subdivision budget.
class ToleranceNotMetError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Least-squares design matrix is numerically rank deficient.
class RankDeficientError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class MeshParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace oblique
