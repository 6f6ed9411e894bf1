#include "riemannlab/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace riemannlab::riemann {
namespace {

constexpr int kMaxNewtonIterations = 50;
constexpr double kRelativeChangeTolerance = 1e-14;
constexpr double kInitialGuessFloor = 1e-8;
// A wave whose pressure jump is below this relative size, and whose data
// pressure also satisfies the residual bound, is collapsed to zero strength.
constexpr double kDegenerateWaveTolerance = 1e-12;

struct SideWave {
  WaveKind kind;
  WaveSpan span;
  double rho_star;
};

SideWave left_side(const PrimitiveState& w, double a, double p_star, double u_star,
                   double g) {
  const double ratio = p_star / w.p;
  if (p_star > w.p) {
    const double g6 = (g - 1.0) / (g + 1.0);
    const double rho_star = w.rho * (ratio + g6) / (g6 * ratio + 1.0);
    const double speed =
        w.u - a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    return {WaveKind::Shock, {speed, speed}, rho_star};
  }
  const double rho_star = w.rho * std::pow(ratio, 1.0 / g);
  const double a_star = a * std::pow(ratio, (g - 1.0) / (2.0 * g));
  return {WaveKind::Rarefaction, {w.u - a, u_star - a_star}, rho_star};
}

SideWave right_side(const PrimitiveState& w, double a, double p_star, double u_star,
                    double g) {
  const double ratio = p_star / w.p;
  if (p_star > w.p) {
    const double g6 = (g - 1.0) / (g + 1.0);
    const double rho_star = w.rho * (ratio + g6) / (g6 * ratio + 1.0);
    const double speed =
        w.u + a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    return {WaveKind::Shock, {speed, speed}, rho_star};
  }
  const double rho_star = w.rho * std::pow(ratio, 1.0 / g);
  const double a_star = a * std::pow(ratio, (g - 1.0) / (2.0 * g));
  return {WaveKind::Rarefaction, {w.u + a, u_star + a_star}, rho_star};
}

bool close_relative(double a, double b, double tol) noexcept {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

PressureFunctionValue pressure_function_side(double p, const PrimitiveState& w,
                                             const GasModel& gas) noexcept {
  const double g = gas.gamma();
  if (p > w.p) {
    const double a_coef = 2.0 / ((g + 1.0) * w.rho);
    const double b_coef = w.p * (g - 1.0) / (g + 1.0);
    const double q = std::sqrt(a_coef / (p + b_coef));
    const double value = (p - w.p) * q;
    return {value, q * (1.0 - 0.5 * (p - w.p) / (p + b_coef))};
  }
  const double a = sound_speed(w, gas);
  const double ratio = p / w.p;
  const double value = 2.0 * a / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
  const double derivative = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (w.rho * a);
  return {value, derivative};
}

double pressure_function(double p, const PrimitiveState& wl, const PrimitiveState& wr,
                         const GasModel& gas) noexcept {
  return pressure_function_side(p, wl, gas).value + pressure_function_side(p, wr, gas).value +
         (wr.u - wl.u);
}

VacuumStatus vacuum_check(const PrimitiveState& wl, const PrimitiveState& wr,
                          const GasModel& gas) noexcept {
  const double bound = 2.0 / (gas.gamma() - 1.0) * (sound_speed(wl, gas) + sound_speed(wr, gas));
  return bound > wr.u - wl.u ? VacuumStatus::Ok : VacuumStatus::VacuumGenerated;
}

double residual_tolerance(double p_star) noexcept { return 1e-12 * std::max(1.0, p_star); }

RiemannFan solve_star_exact(const PrimitiveState& wl, const PrimitiveState& wr,
                            const GasModel& gas) {
  validate(wl);
  validate(wr);
  if (vacuum_check(wl, wr, gas) == VacuumStatus::VacuumGenerated) {
    std::ostringstream os;
    os << "data generate vacuum: u_R - u_L = " << (wr.u - wl.u);
    throw VacuumGenerated(os.str());
  }

  const double floor = kInitialGuessFloor * std::max(wl.p, wr.p);
  double p = std::max(linearised_estimate(wl, wr, gas).p_star, floor);

  // f is increasing and concave, with f(0+) < 0 once the vacuum check passed,
  // so lo = 0 brackets the root from below. Newton is iterated until the step
  // itself is negligible: a small residual alone is not enough when f' is
  // small (strong shocks into dense gas).
  double lo = 0.0;
  bool converged = false;
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const auto fl = pressure_function_side(p, wl, gas);
    const auto fr = pressure_function_side(p, wr, gas);
    const double f = fl.value + fr.value + (wr.u - wl.u);
    if (f == 0.0) {
      converged = true;
      break;
    }
    if (f < 0.0) lo = std::max(lo, p);
    double next = p - f / (fl.derivative + fr.derivative);
    if (!(next > lo)) next = 0.5 * (lo + p);
    const double change = std::abs(next - p) / (0.5 * (next + p));
    p = next;
    if (change <= kRelativeChangeTolerance &&
        std::abs(pressure_function(p, wl, wr, gas)) <= residual_tolerance(p)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "exact Riemann solver did not converge (last p=" << p << ")";
    throw NoConvergence(os.str());
  }

  // Snap p* onto a data pressure when that pressure is itself an acceptable
  // root; the corresponding wave then has zero strength.
  {
    const double res_l = std::abs(pressure_function(wl.p, wl, wr, gas));
    const double res_r = std::abs(pressure_function(wr.p, wl, wr, gas));
    const bool snap_l = close_relative(p, wl.p, kDegenerateWaveTolerance) &&
                        res_l <= residual_tolerance(wl.p);
    const bool snap_r = close_relative(p, wr.p, kDegenerateWaveTolerance) &&
                        res_r <= residual_tolerance(wr.p);
    if (snap_l && snap_r) {
      p = res_l <= res_r ? wl.p : wr.p;
    } else if (snap_l) {
      p = wl.p;
    } else if (snap_r) {
      p = wr.p;
    }
  }

  const bool left_degenerate = p == wl.p;
  const bool right_degenerate = p == wr.p;
  double u_star;
  if (left_degenerate && right_degenerate) {
    u_star = 0.5 * (wl.u + wr.u);
  } else if (left_degenerate) {
    u_star = wl.u;
  } else if (right_degenerate) {
    u_star = wr.u;
  } else {
    u_star = 0.5 * (wl.u + wr.u) + 0.5 * (pressure_function_side(p, wr, gas).value -
                                          pressure_function_side(p, wl, gas).value);
  }

  const double g = gas.gamma();
  const SideWave lw = left_side(wl, sound_speed(wl, gas), p, u_star, g);
  const SideWave rw = right_side(wr, sound_speed(wr, gas), p, u_star, g);

  double rho_l = lw.rho_star;
  double rho_r = rw.rho_star;
  if (left_degenerate && !right_degenerate && close_relative(rho_l, rho_r, kDegenerateWaveTolerance)) {
    rho_r = rho_l;
  } else if (right_degenerate && !left_degenerate &&
             close_relative(rho_l, rho_r, kDegenerateWaveTolerance)) {
    rho_l = rho_r;
  }

  return RiemannFan{wl,      wr,      gas,     p,       u_star,          rho_l,
                    rho_r,   lw.kind, rw.kind, lw.span, rw.span,         left_degenerate,
                    right_degenerate};
}

Region RiemannFan::locate(double xi) const noexcept {
  if (xi < u_star) {
    if (xi < left_span.head) return Region::Left;
    if (xi < left_span.tail) return Region::LeftFan;
    return Region::StarLeft;
  }
  if (xi < right_span.tail) return Region::StarRight;
  if (xi < right_span.head) return Region::RightFan;
  return Region::Right;
}

double RiemannFan::min_active_speed() const noexcept {
  double s = u_star;
  if (!left_degenerate) s = std::min(s, left_span.head);
  else if (rho_star_left == rho_star_right && !right_degenerate) s = right_span.tail;
  return s;
}

double RiemannFan::max_active_speed() const noexcept {
  double s = u_star;
  if (!right_degenerate) s = std::max(s, right_span.head);
  else if (rho_star_left == rho_star_right && !left_degenerate) s = left_span.tail;
  return s;
}

PrimitiveState sample_fan(const RiemannFan& fan, double xi) noexcept {
  const double g = fan.gas.gamma();
  switch (fan.locate(xi)) {
  case Region::Left:
    return fan.left;
  case Region::Right:
    return fan.right;
  case Region::StarLeft:
    return {fan.rho_star_left, fan.u_star, fan.p_star};
  case Region::StarRight:
    return {fan.rho_star_right, fan.u_star, fan.p_star};
  case Region::LeftFan: {
    const auto& w = fan.left;
    const double a = sound_speed(w, fan.gas);
    const double c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
    const double p = std::clamp(w.p * std::pow(c, 2.0 * g / (g - 1.0)), fan.p_star, w.p);
    return {w.rho * std::pow(c, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * w.u + xi), p};
  }
  case Region::RightFan: {
    const auto& w = fan.right;
    const double a = sound_speed(w, fan.gas);
    const double c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
    const double p = std::clamp(w.p * std::pow(c, 2.0 * g / (g - 1.0)), fan.p_star, w.p);
    return {w.rho * std::pow(c, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * w.u + xi), p};
  }
  }
  return fan.left; // unreachable
}

// The acoustic-impedance linearisation. If the coefficients of the original
// 1962 solver differ, this is the only function to change.
StarEstimate linearised_estimate(const PrimitiveState& wl, const PrimitiveState& wr,
                                 const GasModel& gas) noexcept {
  if (wl == wr) return {wl.p, wl.u, wl.rho, wr.rho};
  const double al = sound_speed(wl, gas);
  const double ar = sound_speed(wr, gas);
  const double cl = wl.rho * al;
  const double cr = wr.rho * ar;
  const double p_star = (cr * wl.p + cl * wr.p + cl * cr * (wl.u - wr.u)) / (cl + cr);
  const double u_star = (cl * wl.u + cr * wr.u + (wl.p - wr.p)) / (cl + cr);
  return {p_star, u_star, wl.rho + (p_star - wl.p) / (al * al),
          wr.rho + (p_star - wr.p) / (ar * ar)};
}

StarEstimate solve_star_linearised(const PrimitiveState& wl, const PrimitiveState& wr,
                                   const GasModel& gas) {
  validate(wl);
  validate(wr);
  const StarEstimate est = linearised_estimate(wl, wr, gas);
  if (!(est.p_star > 0.0) || !(est.rho_star_left > 0.0) || !(est.rho_star_right > 0.0)) {
    std::ostringstream os;
    os << "linearised star state is non-physical (p*=" << est.p_star
       << ", rho*L=" << est.rho_star_left << ", rho*R=" << est.rho_star_right << ")";
    throw NonPhysicalStar(os.str());
  }
  return est;
}

PrimitiveState sample_linearised(const StarEstimate& est, const PrimitiveState& wl,
                                 const PrimitiveState& wr, const GasModel& gas,
                                 double xi) noexcept {
  if (xi < wl.u - sound_speed(wl, gas)) return wl;
  if (xi < est.u_star) return {est.rho_star_left, est.u_star, est.p_star};
  if (xi < wr.u + sound_speed(wr, gas)) return {est.rho_star_right, est.u_star, est.p_star};
  return wr;
}

} // namespace riemannlab::riemann
