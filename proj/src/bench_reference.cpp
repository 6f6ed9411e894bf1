#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "riemannlab/bench.hpp"
#include "riemannlab/riemann.hpp"

namespace riemannlab::bench {

using engine::Grid1D;
using engine::SolutionField;

namespace {

SolutionField riemann_reference(const TestCase& tc, const Grid1D& grid) {
  const GasModel gas = tc.gas();
  const auto fan = riemann::solve_star_exact(tc.left, tc.right, gas);
  const double t = tc.t_end;
  if (tc.x0 + fan.min_active_speed() * t < tc.x_left ||
      tc.x0 + fan.max_active_speed() * t > tc.x_right) {
    throw ReferenceUnavailable("case '" + tc.name +
                               "': waves reach the domain boundary before t_end");
  }
  return engine::make_field(
      grid, [&](double x) { return riemann::sample_fan(fan, (x - tc.x0) / t); }, gas);
}

SolutionField advection_reference(const TestCase& tc, const Grid1D& grid) {
  const auto& s = *tc.smooth;
  const double length = tc.x_right - tc.x_left;
  return engine::make_field(
      grid,
      [&](double x) {
        double phase = (x - tc.x_left - s.u * tc.t_end) / length;
        phase -= std::floor(phase);
        return PrimitiveState{
            s.rho_mean + s.amplitude * std::sin(2.0 * std::numbers::pi * s.periods * phase), s.u,
            s.p};
      },
      tc.gas());
}

SolutionField fine_grid_reference(const TestCase& tc, const Grid1D& grid,
                                  const ReferenceOptions& options) {
  if (options.fine_cells % grid.n_cells() != 0) {
    throw ReferenceUnavailable("case '" + tc.name + "': fine grid of " +
                               std::to_string(options.fine_cells) +
                               " cells is not a multiple of " + std::to_string(grid.n_cells()));
  }
  engine::RunConfig config;
  config.scheme = engine::Scheme::conservative(schemes::FluxKind::GodunovExact);
  config.cfl = options.fine_cfl;
  config.left = tc.bc_left;
  config.right = tc.bc_right;
  config.t_end = tc.t_end;
  config.gas = tc.gas();
  config.threads = options.threads;
  const auto fine = engine::run(initial_field(tc, options.fine_cells), config).field;

  const int ratio = options.fine_cells / grid.n_cells();
  SolutionField out(grid);
  out.time = tc.t_end;
  for (int i = 0; i < grid.n_cells(); ++i) {
    ConservedState sum;
    for (int k = 0; k < ratio; ++k) sum += fine.at(i * ratio + k);
    out.at(i) = (1.0 / ratio) * sum;
  }
  return out;
}

} // namespace

SolutionField exact_reference(const TestCase& tc, const Grid1D& grid,
                              const ReferenceOptions& options) {
  if (tc.t_end == 0.0) {
    SolutionField f = initial_field(tc, grid.n_cells(), grid.n_ghost());
    return f;
  }
  SolutionField ref = [&] {
    switch (tc.reference) {
    case ReferenceKind::RiemannFan:
      if (tc.smooth) break;
      return riemann_reference(tc, grid);
    case ReferenceKind::Advection:
      if (!tc.smooth) break;
      return advection_reference(tc, grid);
    case ReferenceKind::FineGrid:
      return fine_grid_reference(tc, grid, options);
    }
    throw ReferenceUnavailable("case '" + tc.name + "' has no reference of the requested kind");
  }();
  ref.time = tc.t_end;
  return ref;
}

std::string reference_label(const TestCase& tc) {
  switch (tc.reference) {
  case ReferenceKind::RiemannFan:
    return "exact Riemann fan at cell centres";
  case ReferenceKind::Advection:
    return "exactly advected profile at cell centres";
  case ReferenceKind::FineGrid:
    return "fine-grid godunov-exact run (20000 cells), cell-averaged";
  }
  return "none";
}

ErrorNorms error_norms(const SolutionField& numerical, const SolutionField& reference,
                       const GasModel& gas) {
  const Grid1D& a = numerical.grid;
  const Grid1D& b = reference.grid;
  if (a.n_cells() != b.n_cells() || a.x_left() != b.x_left() || a.x_right() != b.x_right()) {
    throw GridMismatch("error norms need fields on the same grid");
  }
  const double dx = a.dx();
  ErrorNorms norms;
  std::array<double, 3> sq{};
  for (int i = 0; i < a.n_cells(); ++i) {
    const PrimitiveState wn = conserved_to_primitive(numerical.at(i), gas);
    const PrimitiveState wr = conserved_to_primitive(reference.at(i), gas);
    const std::array<double, 3> diff{std::abs(wn.rho - wr.rho), std::abs(wn.u - wr.u),
                                     std::abs(wn.p - wr.p)};
    for (std::size_t k = 0; k < 3; ++k) {
      norms.l1[k] += diff[k] * dx;
      sq[k] += diff[k] * diff[k] * dx;
      norms.linf[k] = std::max(norms.linf[k], diff[k]);
    }
  }
  for (std::size_t k = 0; k < 3; ++k) norms.l2[k] = std::sqrt(sq[k]);
  return norms;
}

CaseRun run_case(const TestCase& tc, const engine::Scheme& scheme, int n_cells, double cfl,
                 unsigned threads, const ReferenceOptions& ref_options) {
  validate(tc);
  engine::RunConfig config;
  config.scheme = scheme;
  config.cfl = cfl;
  config.left = tc.bc_left;
  config.right = tc.bc_right;
  config.t_end = tc.t_end;
  config.gas = tc.gas();
  config.threads = threads;
  engine::validate(config);

  auto result = engine::run(initial_field(tc, n_cells, scheme.required_ghosts()), config);

  std::optional<SolutionField> reference;
  try {
    reference = exact_reference(tc, Grid1D(tc.x_left, tc.x_right, n_cells), ref_options);
  } catch (const ReferenceUnavailable&) {
  }

  RunReport report;
  report.case_name = tc.name;
  report.scheme = engine::to_string(scheme);
  report.n_cells = n_cells;
  report.cfl = cfl;
  report.t_end = tc.t_end;
  report.gamma = tc.gamma;
  report.reference = reference ? reference_label(tc) : "unavailable";
  if (reference) report.errors = error_norms(result.field, *reference, config.gas);
  report.steps = result.stats.steps;
  report.wall_seconds = result.stats.wall_seconds;
  report.min_dt = result.stats.min_dt;
  report.max_dt = result.stats.max_dt;
  report.conservation_drift = result.stats.conservation_drift;
  return {std::move(result.field), std::move(reference), std::move(report)};
}

ConvergenceTable convergence_study(const TestCase& tc, const engine::Scheme& scheme,
                                   int base_cells, int levels, double cfl, unsigned threads) {
  if (!scheme.is_conservative()) {
    throw ConfigError("the random choice method is excluded from convergence studies");
  }
  if (tc.reference == ReferenceKind::FineGrid) {
    throw ReferenceUnavailable("case '" + tc.name + "' has no exact reference");
  }
  if (levels < 2) throw ConfigError("a convergence study needs at least two levels");
  if (base_cells < 4) throw ConfigError("base grid needs at least 4 cells");

  ConvergenceTable table;
  for (int k = 0; k < levels; ++k) table.cells.push_back(base_cells << k);

  auto level_error = [&](int n) {
    const auto r = run_case(tc, scheme, n, cfl);
    if (!r.report.errors) throw ReferenceUnavailable("case '" + tc.name + "' has no reference");
    return r.report.errors->l1[0];
  };

  if (threads > 1) {
    std::vector<std::future<double>> jobs;
    for (int n : table.cells) jobs.push_back(std::async(std::launch::async, level_error, n));
    for (auto& j : jobs) j.wait();
    for (auto& j : jobs) table.l1_rho.push_back(j.get());
  } else {
    for (int n : table.cells) table.l1_rho.push_back(level_error(n));
  }
  for (std::size_t k = 0; k + 1 < table.l1_rho.size(); ++k) {
    table.orders.push_back(std::log2(table.l1_rho[k] / table.l1_rho[k + 1]));
  }
  return table;
}

} // namespace riemannlab::bench
