#include "riemannlab/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "riemannlab/riemann.hpp"

namespace riemannlab::engine {

using schemes::FluxKind;
using schemes::FluxMethod;
using schemes::MeshRatio;

Grid1D::Grid1D(double x_left, double x_right, int n_cells, int n_ghost)
    : x_left_(x_left), x_right_(x_right), n_cells_(n_cells), n_ghost_(n_ghost) {
  if (!(x_left < x_right)) throw ConfigError("grid needs x_left < x_right");
  if (n_cells < 4) throw ConfigError("grid needs at least 4 cells");
  if (n_ghost < 1) throw ConfigError("grid needs at least one ghost cell per side");
}

SolutionField SolutionField::with_ghosts(int n_ghost) const {
  SolutionField out(grid.with_ghosts(n_ghost));
  std::copy(interior().begin(), interior().end(), out.interior().begin());
  out.time = time;
  out.step = step;
  return out;
}

SolutionField make_field(const Grid1D& grid, const std::function<PrimitiveState(double)>& init,
                         const GasModel& gas) {
  SolutionField field(grid);
  for (int i = 0; i < grid.n_cells(); ++i) {
    const PrimitiveState w = init(grid.center(i));
    validate(w);
    field.at(i) = primitive_to_conserved(w, gas);
  }
  return field;
}

std::string_view to_string(BoundaryKind kind) noexcept {
  switch (kind) {
  case BoundaryKind::Transmissive:
    return "transmissive";
  case BoundaryKind::Reflective:
    return "reflective";
  case BoundaryKind::Periodic:
    return "periodic";
  }
  return "unknown";
}

std::optional<BoundaryKind> parse_boundary(std::string_view name) noexcept {
  for (auto k : {BoundaryKind::Transmissive, BoundaryKind::Reflective, BoundaryKind::Periodic}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void apply_boundary(SolutionField& field, BoundaryKind left, BoundaryKind right) {
  if ((left == BoundaryKind::Periodic) != (right == BoundaryKind::Periodic)) {
    throw ConfigError("periodic boundaries must be set on both sides");
  }
  const int g = field.grid.n_ghost();
  const int n = field.grid.n_cells();
  auto& c = field.cells;
  // Ghost layer k (1 = adjacent to the domain) on each side.
  for (int k = 1; k <= g; ++k) {
    ConservedState& lghost = c[g - k];
    ConservedState& rghost = c[g + n - 1 + k];
    switch (left) {
    case BoundaryKind::Transmissive:
      lghost = c[g];
      break;
    case BoundaryKind::Reflective:
      lghost = c[g + k - 1];
      lghost.momentum = -lghost.momentum;
      break;
    case BoundaryKind::Periodic:
      lghost = c[g + n - k];
      break;
    }
    switch (right) {
    case BoundaryKind::Transmissive:
      rghost = c[g + n - 1];
      break;
    case BoundaryKind::Reflective:
      rghost = c[g + n - k];
      rghost.momentum = -rghost.momentum;
      break;
    case BoundaryKind::Periodic:
      rghost = c[g + k - 1];
      break;
    }
  }
}

double compute_dt(const SolutionField& field, const GasModel& gas, double cfl, double t_end) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  double smax = 0.0;
  for (const auto& q : field.interior()) {
    const PrimitiveState w = conserved_to_primitive(q, gas);
    smax = std::max(smax, std::abs(w.u) + sound_speed(w, gas));
  }
  double dt = cfl * field.grid.dx() / smax;
  if (field.time + dt >= t_end) dt = t_end - field.time;
  return dt;
}

FluxVector interface_flux(const FluxMethod& method, std::span<const ConservedState> cells,
                          const schemes::SlopeField& slopes, std::size_t j, const MeshRatio& r,
                          const GasModel& gas) {
  const ConservedState& ql = cells[j];
  const ConservedState& qr = cells[j + 1];
  switch (method.kind) {
  case FluxKind::GodunovExact:
    return schemes::godunov_flux(schemes::RiemannSolverKind::Exact, ql, qr, gas);
  case FluxKind::GodunovLinearised:
    try {
      return schemes::godunov_flux(schemes::RiemannSolverKind::Linearised, ql, qr, gas);
    } catch (const NonPhysicalStar&) {
      return schemes::godunov_flux(schemes::RiemannSolverKind::Exact, ql, qr, gas);
    }
  case FluxKind::Hll: {
    const auto [sl, sr] = schemes::davis_wave_speeds(conserved_to_primitive(ql, gas),
                                                     conserved_to_primitive(qr, gas), gas);
    return schemes::hll_flux(ql, qr, sl, sr, gas);
  }
  case FluxKind::LaxFriedrichs:
    return schemes::lax_friedrichs_flux(ql, qr, r, gas);
  case FluxKind::LaxWendroff:
    return schemes::lax_wendroff_flux(ql, qr, r, gas);
  case FluxKind::Ader2:
    return schemes::ader2_flux(ql + 0.5 * slopes[j], qr - 0.5 * slopes[j + 1], slopes[j],
                               slopes[j + 1], r, gas);
  }
  throw ConfigError("unknown flux method");
}

namespace {

// Runs body(begin, end) over [0, count) split into contiguous chunks. Chunk
// boundaries never affect results since each index writes its own slot.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body) {
  if (threads <= 1 || count < 2 * threads) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&body, begin, end] { body(begin, end); }));
  }
  // get() in order so the first failing chunk's exception wins.
  for (auto& job : jobs) job.wait();
  for (auto& job : jobs) job.get();
}

void check_interior(const SolutionField& field, const GasModel& gas) {
  const auto cells = field.interior();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    try {
      (void)conserved_to_primitive(cells[i], gas);
    } catch (const NonPhysicalState& e) {
      std::ostringstream os;
      os << "cell " << i << ": " << e.what();
      throw NonPhysicalState(os.str(), static_cast<long>(i));
    }
  }
}

} // namespace

BoundaryFluxes conservative_step(SolutionField& field, const FluxMethod& method,
                                 const MeshRatio& r, const GasModel& gas, unsigned threads) {
  const int g = field.grid.n_ghost();
  const int n = field.grid.n_cells();
  if (method.needs_slopes() && g < 2) {
    throw ConfigError("ADER2 needs two ghost cells per side");
  }
  const std::span<const ConservedState> cells(field.cells);
  const schemes::SlopeField slopes =
      method.needs_slopes() ? schemes::muscl_reconstruct(cells, method.limiter)
                            : schemes::SlopeField{};

  // fluxes[k] sits between ghost-inclusive cells g - 1 + k and g + k.
  std::vector<FluxVector> fluxes(static_cast<std::size_t>(n) + 1);
  parallel_chunks(fluxes.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      fluxes[k] = interface_flux(method, cells, slopes, static_cast<std::size_t>(g - 1) + k, r,
                                 gas);
    }
  });

  const double ratio = r.dt() / r.dx();
  auto interior = field.interior();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    interior[i] -= ratio * as_conserved(fluxes[i + 1] - fluxes[i]);
  }
  check_interior(field, gas);
  return {fluxes.front(), fluxes.back()};
}

double van_der_corput(long n) {
  if (n < 1) throw ConfigError("van der Corput index must be >= 1");
  double value = 0.0;
  double scale = 0.5;
  while (n > 0) {
    if (n & 1) value += scale;
    n >>= 1;
    scale *= 0.5;
  }
  return value;
}

BoundaryFluxes rcm_step(SolutionField& field, RcmState& rcm, const MeshRatio& r,
                        const GasModel& gas) {
  const double theta = rcm.theta();
  ++rcm.index;

  const int g = field.grid.n_ghost();
  const int n = field.grid.n_cells();
  const auto& cells = field.cells;

  std::vector<riemann::RiemannFan> fans;
  fans.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    fans.push_back(riemann::solve_star_exact(conserved_to_primitive(cells[g - 1 + k], gas),
                                             conserved_to_primitive(cells[g + k], gas), gas));
  }

  const bool use_left = theta <= 0.5;
  const double xi = (use_left ? theta : theta - 1.0) * r.dx() / r.dt();
  std::vector<ConservedState> next(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Fan k lies between ghost-inclusive cells g - 1 + k and g + k.
    const int k = use_left ? i : i + 1;
    const auto& fan = fans[k];
    const PrimitiveState w = riemann::sample_fan(fan, xi);
    if (w == fan.left) {
      next[i] = cells[g - 1 + k];
    } else if (w == fan.right) {
      next[i] = cells[g + k];
    } else {
      next[i] = primitive_to_conserved(w, gas);
    }
  }
  std::copy(next.begin(), next.end(), field.interior().begin());
  check_interior(field, gas);
  return {physical_flux(riemann::sample_fan(fans.front(), 0.0), gas),
          physical_flux(riemann::sample_fan(fans.back(), 0.0), gas)};
}

std::string to_string(const Scheme& scheme) {
  if (!scheme.is_conservative()) return "rcm";
  return std::string(schemes::to_string(scheme.flux.kind));
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "rcm") return Scheme::random_choice();
  if (name == "ader2-minmod") return Scheme::conservative(FluxKind::Ader2);
  for (auto k : {FluxKind::GodunovExact, FluxKind::GodunovLinearised, FluxKind::Hll,
                 FluxKind::LaxFriedrichs, FluxKind::LaxWendroff, FluxKind::Ader2}) {
    if (schemes::to_string(k) == name) return Scheme::conservative(k);
  }
  return std::nullopt;
}

std::vector<std::string> scheme_names() {
  return {"godunov-exact", "godunov-linearised", "hll", "lax-friedrichs",
          "lax-wendroff",  "ader2",              "rcm"};
}

void validate(const RunConfig& config) {
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!config.scheme.is_conservative() && config.cfl > kRcmMaxCfl) {
    throw ConfigError("random choice method needs cfl <= 0.5");
  }
  if ((config.left == BoundaryKind::Periodic) != (config.right == BoundaryKind::Periodic)) {
    throw ConfigError("periodic boundaries must be set on both sides");
  }
  if (!(config.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (config.max_steps && *config.max_steps < 0) throw ConfigError("max_steps must be >= 0");
}

ConservedState totals(const SolutionField& field) {
  ConservedState sum;
  for (const auto& q : field.interior()) sum += q;
  return field.grid.dx() * sum;
}

namespace {

ConservedState l1_content(const SolutionField& field) {
  ConservedState sum;
  for (const auto& q : field.interior()) {
    sum += ConservedState{std::abs(q.mass), std::abs(q.momentum), std::abs(q.energy)};
  }
  return field.grid.dx() * sum;
}

template <class E>
[[noreturn]] void rethrow_as(const E& e, const std::string& context) {
  if constexpr (std::is_same_v<E, NonPhysicalState>) {
    throw NonPhysicalState(context + e.what(), e.cell());
  } else {
    throw E(context + e.what());
  }
}

} // namespace

RunResult run(const SolutionField& initial, const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  SolutionField field = initial.grid.n_ghost() >= config.scheme.required_ghosts()
                            ? initial
                            : initial.with_ghosts(config.scheme.required_ghosts());
  check_interior(field, config.gas);

  const ConservedState total0 = totals(field);
  const ConservedState content0 = l1_content(field);
  ConservedState outflow;
  RunStats stats;
  RcmState rcm;

  while (field.time < config.t_end && (!config.max_steps || stats.steps < *config.max_steps)) {
    std::ostringstream ctx;
    ctx << "step " << field.step << " (t=" << field.time << "): ";
    try {
      apply_boundary(field, config.left, config.right);
      const double dt = compute_dt(field, config.gas, config.cfl, config.t_end);
      const bool last = field.time + dt >= config.t_end;
      const MeshRatio r(field.grid.dx(), dt);
      const BoundaryFluxes bf =
          config.scheme.is_conservative()
              ? conservative_step(field, config.scheme.flux, r, config.gas, config.threads)
              : rcm_step(field, rcm, r, config.gas);
      outflow += dt * as_conserved(bf.right - bf.left);
      field.time = last ? config.t_end : field.time + dt;
      ++field.step;
      stats.min_dt = stats.steps == 0 ? dt : std::min(stats.min_dt, dt);
      stats.max_dt = std::max(stats.max_dt, dt);
      ++stats.steps;
    } catch (const NonPhysicalState& e) {
      rethrow_as(e, ctx.str());
    } catch (const VacuumGenerated& e) {
      rethrow_as(e, ctx.str());
    } catch (const NoConvergence& e) {
      rethrow_as(e, ctx.str());
    } catch (const NonPhysicalStar& e) {
      rethrow_as(e, ctx.str());
    } catch (const DegenerateSpeeds& e) {
      rethrow_as(e, ctx.str());
    }
  }

  const ConservedState total1 = totals(field);
  for (std::size_t k = 0; k < 3; ++k) {
    const double scale = std::abs(total0[k]) > 0.0 ? std::abs(total0[k]) : content0[k];
    const double drift = total1[k] - total0[k] + outflow[k];
    stats.conservation_drift[k] = scale > 0.0 ? drift / scale : drift;
  }
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(field), stats};
}

} // namespace riemannlab::engine
