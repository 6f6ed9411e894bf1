#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "riemannlab/euler.hpp"
#include "riemannlab/riemann.hpp"

namespace riemannlab::schemes {

enum class Limiter { Minmod };

enum class FluxKind { GodunovExact, GodunovLinearised, Hll, LaxFriedrichs, LaxWendroff, Ader2 };

struct FluxMethod {
  FluxKind kind = FluxKind::GodunovExact;
  Limiter limiter = Limiter::Minmod; // used by Ader2 only

  bool needs_slopes() const noexcept { return kind == FluxKind::Ader2; }
  friend bool operator==(const FluxMethod&, const FluxMethod&) = default;
};

std::string_view to_string(FluxKind kind) noexcept;

/// Cell width and time step of one update.
class MeshRatio {
public:
  MeshRatio(double dx, double dt);

  double dx() const noexcept { return dx_; }
  double dt() const noexcept { return dt_; }

private:
  double dx_;
  double dt_;
};

enum class RiemannSolverKind { Exact, Linearised };

/// Physical flux of the Riemann fan sampled at xi = 0.
FluxVector godunov_flux(RiemannSolverKind solver, const ConservedState& ql,
                        const ConservedState& qr, const GasModel& gas);

/// Davis bounds: S_L = min(u_L - a_L, u_R - a_R), S_R = max(u_L + a_L, u_R + a_R).
std::pair<double, double> davis_wave_speeds(const PrimitiveState& wl, const PrimitiveState& wr,
                                            const GasModel& gas) noexcept;

/// Two-wave HLL flux. Throws DegenerateSpeeds unless s_left < s_right.
FluxVector hll_flux(const ConservedState& ql, const ConservedState& qr, double s_left,
                    double s_right, const GasModel& gas);

FluxVector lax_friedrichs_flux(const ConservedState& ql, const ConservedState& qr,
                               const MeshRatio& r, const GasModel& gas);

/// Richtmyer two-step form; throws NonPhysicalState if the half-step state is
/// not physical.
FluxVector lax_wendroff_flux(const ConservedState& ql, const ConservedState& qr,
                             const MeshRatio& r, const GasModel& gas);

double minmod(double a, double b) noexcept;

using SlopeField = std::vector<ConservedState>;

/// Limited slopes (per cell width) for every cell with both neighbours
/// present; the outermost cell on each side gets a zero slope.
SlopeField muscl_reconstruct(std::span<const ConservedState> cells, Limiter limiter);

/// Second-order ADER flux from boundary-extrapolated face states and the
/// slopes of the two adjacent cells. The leading term is the classical
/// Riemann solution at the interface; its time derivative comes from the
/// Cauchy-Kowalewskaya relation dQ/dt = -A(Q) dQ/dx using the upwind slope,
/// and the flux is evaluated at the half time step.
FluxVector ader2_flux(const ConservedState& ql_face, const ConservedState& qr_face,
                      const ConservedState& slope_l, const ConservedState& slope_r,
                      const MeshRatio& r, const GasModel& gas);

} // namespace riemannlab::schemes
