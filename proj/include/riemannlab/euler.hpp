#pragma once

#include <array>
#include <cstddef>

#include "riemannlab/errors.hpp"

namespace riemannlab {

/// Ideal-gas closure. gamma > 1 is checked on construction.
class GasModel {
public:
  explicit GasModel(double gamma);

  double gamma() const noexcept { return gamma_; }

private:
  double gamma_;
};

struct PrimitiveState {
  double rho;
  double u;
  double p;

  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

/// Three-component vector in (mass, momentum, energy) order. ConservedState
/// and FluxVector share the layout but are distinct types.
template <class Tag>
struct Components {
  double mass{};
  double momentum{};
  double energy{};

  double& operator[](std::size_t k) noexcept {
    return k == 0 ? mass : (k == 1 ? momentum : energy);
  }
  double operator[](std::size_t k) const noexcept {
    return k == 0 ? mass : (k == 1 ? momentum : energy);
  }

  Components& operator+=(const Components& o) noexcept {
    mass += o.mass;
    momentum += o.momentum;
    energy += o.energy;
    return *this;
  }
  Components& operator-=(const Components& o) noexcept {
    mass -= o.mass;
    momentum -= o.momentum;
    energy -= o.energy;
    return *this;
  }
  Components& operator*=(double s) noexcept {
    mass *= s;
    momentum *= s;
    energy *= s;
    return *this;
  }

  friend Components operator+(Components a, const Components& b) noexcept { return a += b; }
  friend Components operator-(Components a, const Components& b) noexcept { return a -= b; }
  friend Components operator*(double s, Components a) noexcept { return a *= s; }
  friend Components operator*(Components a, double s) noexcept { return a *= s; }
  friend bool operator==(const Components&, const Components&) = default;
};

struct ConservedTag {};
struct FluxTag {};

/// (rho, rho u, E)
using ConservedState = Components<ConservedTag>;
/// (rho u, rho u^2 + p, u (E + p))
using FluxVector = Components<FluxTag>;

/// Reinterprets a conserved-layout vector as a flux-layout vector. Used where
/// a numerical flux mixes state jumps into a flux (HLL, Lax-Friedrichs).
inline FluxVector as_flux(const ConservedState& q) noexcept {
  return {q.mass, q.momentum, q.energy};
}
inline ConservedState as_conserved(const FluxVector& f) noexcept {
  return {f.mass, f.momentum, f.energy};
}

/// Row-major 3x3 flux Jacobian dF/dQ.
using Jacobian = std::array<std::array<double, 3>, 3>;

struct WaveSpeeds {
  double left;   // u - a
  double middle; // u
  double right;  // u + a
};

/// Throws NonPhysicalState unless rho > 0 and p > 0 (and both finite).
void validate(const PrimitiveState& w);

ConservedState primitive_to_conserved(const PrimitiveState& w, const GasModel& gas) noexcept;

/// Throws NonPhysicalState when the recovered density or pressure is not
/// strictly positive.
PrimitiveState conserved_to_primitive(const ConservedState& q, const GasModel& gas);

FluxVector physical_flux(const PrimitiveState& w, const GasModel& gas) noexcept;
FluxVector physical_flux(const ConservedState& q, const GasModel& gas);

double sound_speed(const PrimitiveState& w, const GasModel& gas) noexcept;

WaveSpeeds eigenvalues(const PrimitiveState& w, const GasModel& gas) noexcept;

Jacobian flux_jacobian(const ConservedState& q, const GasModel& gas);

ConservedState apply(const Jacobian& a, const ConservedState& v) noexcept;

} // namespace riemannlab
