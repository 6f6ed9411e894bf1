#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace riemannlab {

/// Base of every numerical or configuration failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A state with non-positive density or pressure. Carries the cell index when
/// the failure was detected inside a grid update.
class NonPhysicalState : public Error {
public:
  explicit NonPhysicalState(const std::string& what,
                            std::optional<long> cell = std::nullopt)
      : Error(what), cell_(cell) {}

  std::optional<long> cell() const noexcept { return cell_; }

private:
  std::optional<long> cell_;
};

class VacuumGenerated : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Linearised star state left the physical range (p* <= 0 or rho* <= 0).
class NonPhysicalStar : public Error {
public:
  using Error::Error;
};

class DegenerateSpeeds : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ReferenceUnavailable : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

} // namespace riemannlab
