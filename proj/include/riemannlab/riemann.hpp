#pragma once

#include "riemannlab/euler.hpp"

namespace riemannlab::riemann {

enum class WaveKind { Shock, Rarefaction };

/// Bounding characteristic speeds of a nonlinear wave. For a shock head and
/// tail coincide at the shock speed. The head is the edge facing the data
/// state, the tail the edge facing the star region.
struct WaveSpan {
  double head;
  double tail;
};

/// Where a similarity coordinate falls inside a fan, left to right.
enum class Region { Left, LeftFan, StarLeft, StarRight, RightFan, Right };

/// Complete self-similar solution of one Riemann problem.
///
/// A nonlinear wave is `degenerate` when p* coincides with that side's data
/// pressure; its star state then equals the data state exactly and the wave
/// carries no jump.
struct RiemannFan {
  PrimitiveState left;
  PrimitiveState right;
  GasModel gas;

  double p_star;
  double u_star;
  double rho_star_left;
  double rho_star_right;

  WaveKind left_wave;
  WaveKind right_wave;
  WaveSpan left_span;
  WaveSpan right_span;
  bool left_degenerate;
  bool right_degenerate;

  /// Region containing xi; xi exactly on a wave speed resolves to the right.
  Region locate(double xi) const noexcept;

  /// Smallest and largest speeds of waves that carry a jump (the contact
  /// counts only when the star densities differ). Both equal u* when every
  /// wave is degenerate.
  double min_active_speed() const noexcept;
  double max_active_speed() const noexcept;
};

/// Linearised star estimate from acoustic impedances.
struct StarEstimate {
  double p_star;
  double u_star;
  double rho_star_left;
  double rho_star_right;
};

struct PressureFunctionValue {
  double value;
  double derivative;
};

/// One side's contribution f_K(p) to the star-pressure equation
/// f_L(p) + f_R(p) + (u_R - u_L) = 0, with its analytic derivative.
PressureFunctionValue pressure_function_side(double p, const PrimitiveState& w,
                                             const GasModel& gas) noexcept;

/// f(p) = f_L(p) + f_R(p) + (u_R - u_L).
double pressure_function(double p, const PrimitiveState& wl, const PrimitiveState& wr,
                         const GasModel& gas) noexcept;

enum class VacuumStatus { Ok, VacuumGenerated };

/// Positivity condition (2/(gamma-1)) (a_L + a_R) > u_R - u_L; equality
/// counts as vacuum.
VacuumStatus vacuum_check(const PrimitiveState& wl, const PrimitiveState& wr,
                          const GasModel& gas) noexcept;

/// Residual bound accepted by the exact solver: 1e-12 * max(1, p*).
double residual_tolerance(double p_star) noexcept;

/// Exact solver: Newton on the single pressure equation, warm-started from
/// the linearised estimate. Throws VacuumGenerated or NoConvergence.
RiemannFan solve_star_exact(const PrimitiveState& wl, const PrimitiveState& wr,
                            const GasModel& gas);

PrimitiveState sample_fan(const RiemannFan& fan, double xi) noexcept;

/// Raw linearised formulae without the positivity check.
StarEstimate linearised_estimate(const PrimitiveState& wl, const PrimitiveState& wr,
                                 const GasModel& gas) noexcept;

/// Linearised (acoustic) star state. Throws NonPhysicalStar when p* or either
/// star density is not positive.
StarEstimate solve_star_linearised(const PrimitiveState& wl, const PrimitiveState& wr,
                                   const GasModel& gas);

/// Four-zone piecewise-constant sampling with boundaries u_L - a_L, u*, u_R + a_R.
PrimitiveState sample_linearised(const StarEstimate& est, const PrimitiveState& wl,
                                 const PrimitiveState& wr, const GasModel& gas,
                                 double xi) noexcept;

} // namespace riemannlab::riemann
