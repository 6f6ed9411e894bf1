#include "riemannlab/euler.hpp"

#include <cmath>
#include <sstream>

namespace riemannlab {

GasModel::GasModel(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be finite and > 1");
  }
}

void validate(const PrimitiveState& w) {
  if (!(w.rho > 0.0) || !(w.p > 0.0) || !std::isfinite(w.rho) || !std::isfinite(w.u) ||
      !std::isfinite(w.p)) {
    std::ostringstream os;
    os << "non-physical state (rho=" << w.rho << ", u=" << w.u << ", p=" << w.p << ")";
    throw NonPhysicalState(os.str());
  }
}

ConservedState primitive_to_conserved(const PrimitiveState& w, const GasModel& gas) noexcept {
  const double mom = w.rho * w.u;
  return {w.rho, mom, w.p / (gas.gamma() - 1.0) + 0.5 * mom * w.u};
}

PrimitiveState conserved_to_primitive(const ConservedState& q, const GasModel& gas) {
  const double rho = q.mass;
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    std::ostringstream os;
    os << "non-positive density " << rho;
    throw NonPhysicalState(os.str());
  }
  const double u = q.momentum / rho;
  const double p = (gas.gamma() - 1.0) * (q.energy - 0.5 * q.momentum * u);
  if (!(p > 0.0) || !std::isfinite(p) || !std::isfinite(u)) {
    std::ostringstream os;
    os << "non-positive pressure " << p << " (rho=" << rho << ", u=" << u << ")";
    throw NonPhysicalState(os.str());
  }
  return {rho, u, p};
}

FluxVector physical_flux(const PrimitiveState& w, const GasModel& gas) noexcept {
  const double mom = w.rho * w.u;
  const double energy = w.p / (gas.gamma() - 1.0) + 0.5 * mom * w.u;
  return {mom, mom * w.u + w.p, w.u * (energy + w.p)};
}

FluxVector physical_flux(const ConservedState& q, const GasModel& gas) {
  const PrimitiveState w = conserved_to_primitive(q, gas);
  return {q.momentum, q.momentum * w.u + w.p, w.u * (q.energy + w.p)};
}

double sound_speed(const PrimitiveState& w, const GasModel& gas) noexcept {
  return std::sqrt(gas.gamma() * w.p / w.rho);
}

WaveSpeeds eigenvalues(const PrimitiveState& w, const GasModel& gas) noexcept {
  const double a = sound_speed(w, gas);
  return {w.u - a, w.u, w.u + a};
}

Jacobian flux_jacobian(const ConservedState& q, const GasModel& gas) {
  const double g = gas.gamma();
  const PrimitiveState w = conserved_to_primitive(q, gas);
  const double u = w.u;
  const double enthalpy = (q.energy + w.p) / w.rho;
  return {{
      {0.0, 1.0, 0.0},
      {0.5 * (g - 3.0) * u * u, (3.0 - g) * u, g - 1.0},
      {u * (0.5 * (g - 1.0) * u * u - enthalpy), enthalpy - (g - 1.0) * u * u, g * u},
  }};
}

ConservedState apply(const Jacobian& a, const ConservedState& v) noexcept {
  ConservedState out;
  for (std::size_t r = 0; r < 3; ++r) {
    out[r] = a[r][0] * v[0] + a[r][1] * v[1] + a[r][2] * v[2];
  }
  return out;
}

} // namespace riemannlab
