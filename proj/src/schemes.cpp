#include "riemannlab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riemannlab::schemes {

std::string_view to_string(FluxKind kind) noexcept {
  switch (kind) {
  case FluxKind::GodunovExact:
    return "godunov-exact";
  case FluxKind::GodunovLinearised:
    return "godunov-linearised";
  case FluxKind::Hll:
    return "hll";
  case FluxKind::LaxFriedrichs:
    return "lax-friedrichs";
  case FluxKind::LaxWendroff:
    return "lax-wendroff";
  case FluxKind::Ader2:
    return "ader2";
  }
  return "unknown";
}

MeshRatio::MeshRatio(double dx, double dt) : dx_(dx), dt_(dt) {
  if (!(dx > 0.0) || !(dt > 0.0) || !std::isfinite(dx) || !std::isfinite(dt)) {
    throw ConfigError("mesh ratio needs dx > 0 and dt > 0");
  }
}

FluxVector godunov_flux(RiemannSolverKind solver, const ConservedState& ql,
                        const ConservedState& qr, const GasModel& gas) {
  const PrimitiveState wl = conserved_to_primitive(ql, gas);
  const PrimitiveState wr = conserved_to_primitive(qr, gas);
  if (solver == RiemannSolverKind::Exact) {
    return physical_flux(riemann::sample_fan(riemann::solve_star_exact(wl, wr, gas), 0.0), gas);
  }
  const auto est = riemann::solve_star_linearised(wl, wr, gas);
  return physical_flux(riemann::sample_linearised(est, wl, wr, gas, 0.0), gas);
}

std::pair<double, double> davis_wave_speeds(const PrimitiveState& wl, const PrimitiveState& wr,
                                            const GasModel& gas) noexcept {
  const auto el = eigenvalues(wl, gas);
  const auto er = eigenvalues(wr, gas);
  return {std::min(el.left, er.left), std::max(el.right, er.right)};
}

FluxVector hll_flux(const ConservedState& ql, const ConservedState& qr, double s_left,
                    double s_right, const GasModel& gas) {
  if (!(s_left < s_right)) {
    std::ostringstream os;
    os << "HLL speeds must satisfy S_L < S_R (got " << s_left << ", " << s_right << ")";
    throw DegenerateSpeeds(os.str());
  }
  const FluxVector fl = physical_flux(ql, gas);
  if (s_left >= 0.0) return fl;
  const FluxVector fr = physical_flux(qr, gas);
  if (s_right <= 0.0) return fr;
  FluxVector f;
  for (std::size_t k = 0; k < 3; ++k) {
    f[k] = (s_right * fl[k] - s_left * fr[k] + s_left * s_right * (qr[k] - ql[k])) /
           (s_right - s_left);
  }
  return f;
}

FluxVector lax_friedrichs_flux(const ConservedState& ql, const ConservedState& qr,
                               const MeshRatio& r, const GasModel& gas) {
  const FluxVector fl = physical_flux(ql, gas);
  const FluxVector fr = physical_flux(qr, gas);
  const double c = r.dx() / (2.0 * r.dt());
  FluxVector f;
  for (std::size_t k = 0; k < 3; ++k) {
    f[k] = 0.5 * (fl[k] + fr[k]) - c * (qr[k] - ql[k]);
  }
  return f;
}

FluxVector lax_wendroff_flux(const ConservedState& ql, const ConservedState& qr,
                             const MeshRatio& r, const GasModel& gas) {
  const FluxVector fl = physical_flux(ql, gas);
  const FluxVector fr = physical_flux(qr, gas);
  const double c = r.dt() / (2.0 * r.dx());
  ConservedState half;
  for (std::size_t k = 0; k < 3; ++k) {
    half[k] = 0.5 * (ql[k] + qr[k]) - c * (fr[k] - fl[k]);
  }
  return physical_flux(half, gas);
}

double minmod(double a, double b) noexcept {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

SlopeField muscl_reconstruct(std::span<const ConservedState> cells, Limiter limiter) {
  SlopeField slopes(cells.size());
  if (cells.size() < 3) return slopes;
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const double back = cells[i][k] - cells[i - 1][k];
      const double fwd = cells[i + 1][k] - cells[i][k];
      switch (limiter) {
      case Limiter::Minmod:
        slopes[i][k] = minmod(back, fwd);
        break;
      }
    }
  }
  return slopes;
}

FluxVector ader2_flux(const ConservedState& ql_face, const ConservedState& qr_face,
                      const ConservedState& slope_l, const ConservedState& slope_r,
                      const MeshRatio& r, const GasModel& gas) {
  const PrimitiveState wl = conserved_to_primitive(ql_face, gas);
  const PrimitiveState wr = conserved_to_primitive(qr_face, gas);
  const auto fan = riemann::solve_star_exact(wl, wr, gas);
  const PrimitiveState w0 = riemann::sample_fan(fan, 0.0);

  const auto region = fan.locate(0.0);
  const bool from_left = region == riemann::Region::Left ||
                         region == riemann::Region::LeftFan ||
                         region == riemann::Region::StarLeft;
  const ConservedState& slope = from_left ? slope_l : slope_r;
  if (slope == ConservedState{}) return physical_flux(w0, gas);

  const ConservedState q0 = primitive_to_conserved(w0, gas);
  const ConservedState dq_dt = -1.0 / r.dx() * riemannlab::apply(flux_jacobian(q0, gas), slope);
  return physical_flux(q0 + 0.5 * r.dt() * dq_dt, gas);
}

} // namespace riemannlab::schemes
