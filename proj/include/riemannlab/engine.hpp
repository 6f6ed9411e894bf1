#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riemannlab/euler.hpp"
#include "riemannlab/schemes.hpp"

namespace riemannlab::engine {

/// Uniform 1D grid with a ghost layer of n_ghost cells on each side.
class Grid1D {
public:
  Grid1D(double x_left, double x_right, int n_cells, int n_ghost = 1);

  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  int n_cells() const noexcept { return n_cells_; }
  int n_ghost() const noexcept { return n_ghost_; }
  int n_total() const noexcept { return n_cells_ + 2 * n_ghost_; }
  double dx() const noexcept { return (x_right_ - x_left_) / n_cells_; }
  /// Centre of interior cell i (0-based).
  double center(int i) const noexcept { return x_left_ + (i + 0.5) * dx(); }

  Grid1D with_ghosts(int n_ghost) const { return {x_left_, x_right_, n_cells_, n_ghost}; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
  double x_left_;
  double x_right_;
  int n_cells_;
  int n_ghost_;
};

/// Cell averages of the conserved variables, ghost cells included.
struct SolutionField {
  Grid1D grid;
  std::vector<ConservedState> cells;
  double time = 0.0;
  long step = 0;

  explicit SolutionField(Grid1D g)
      : grid(g), cells(static_cast<std::size_t>(g.n_total())) {}

  std::span<ConservedState> interior() noexcept {
    return std::span(cells).subspan(grid.n_ghost(), grid.n_cells());
  }
  std::span<const ConservedState> interior() const noexcept {
    return std::span(cells).subspan(grid.n_ghost(), grid.n_cells());
  }
  ConservedState& at(int i) noexcept { return cells[grid.n_ghost() + i]; }
  const ConservedState& at(int i) const noexcept { return cells[grid.n_ghost() + i]; }

  /// Copy with a different ghost layer width; ghost contents are zeroed.
  SolutionField with_ghosts(int n_ghost) const;
};

/// Fills interior cells from point values at cell centres.
SolutionField make_field(const Grid1D& grid, const std::function<PrimitiveState(double)>& init,
                         const GasModel& gas);

enum class BoundaryKind { Transmissive, Reflective, Periodic };

std::string_view to_string(BoundaryKind kind) noexcept;
std::optional<BoundaryKind> parse_boundary(std::string_view name) noexcept;

/// Fills the ghost layers. Periodic must be set on both sides or neither
/// (ConfigError otherwise).
void apply_boundary(SolutionField& field, BoundaryKind left, BoundaryKind right);

/// cfl * dx / max(|u| + a) over interior cells, clamped so that
/// time + dt never passes t_end.
double compute_dt(const SolutionField& field, const GasModel& gas, double cfl, double t_end);

struct BoundaryFluxes {
  FluxVector left;
  FluxVector right;
};

/// Numerical flux at the interface between cells j and j + 1 (ghost-inclusive
/// indices). GodunovLinearised falls back to the exact solver when the
/// linearised star state is non-physical.
FluxVector interface_flux(const schemes::FluxMethod& method, std::span<const ConservedState> cells,
                          const schemes::SlopeField& slopes, std::size_t j,
                          const schemes::MeshRatio& r, const GasModel& gas);

/// Conservative update Q_i -= dt/dx (F_{i+1/2} - F_{i-1/2}) over interior
/// cells. Ghost cells must already be filled. Interface fluxes may be
/// evaluated on `threads` workers; the result does not depend on it. Throws
/// NonPhysicalState carrying the interior cell index on positivity loss.
BoundaryFluxes conservative_step(SolutionField& field, const schemes::FluxMethod& method,
                                 const schemes::MeshRatio& r, const GasModel& gas,
                                 unsigned threads = 1);

/// Base-2 radical inverse of n (n >= 1).
double van_der_corput(long n);

struct RcmState {
  long index = 1;

  double theta() const { return van_der_corput(index); }
};

/// One step of Glimm's random choice method on a single grid: with
/// theta = van_der_corput(index), every cell takes the point value of the
/// local Riemann solution at x_i + (theta - 1/2) dx and time dt. For
/// theta <= 1/2 that point lies in the fan of the left interface, otherwise in
/// the fan of the right one. Data states are copied bitwise when the sample
/// lands on them. Returns the Godunov fluxes at the domain boundaries.
BoundaryFluxes rcm_step(SolutionField& field, RcmState& rcm, const schemes::MeshRatio& r,
                        const GasModel& gas);

struct Scheme {
  enum class Update { Conservative, RandomChoice };

  Update update = Update::Conservative;
  schemes::FluxMethod flux{};

  static Scheme conservative(schemes::FluxKind kind) { return {Update::Conservative, {kind}}; }
  static Scheme random_choice() { return {Update::RandomChoice, {schemes::FluxKind::GodunovExact}}; }

  bool is_conservative() const noexcept { return update == Update::Conservative; }
  int required_ghosts() const noexcept { return flux.needs_slopes() && is_conservative() ? 2 : 1; }
  friend bool operator==(const Scheme&, const Scheme&) = default;
};

std::string to_string(const Scheme& scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
/// Every scheme name accepted by parse_scheme, in display order.
std::vector<std::string> scheme_names();

constexpr double kRcmMaxCfl = 0.5;

struct RunConfig {
  Scheme scheme{};
  double cfl = 0.9;
  BoundaryKind left = BoundaryKind::Transmissive;
  BoundaryKind right = BoundaryKind::Transmissive;
  double t_end = 0.0;
  GasModel gas{1.4};
  std::optional<long> max_steps;
  unsigned threads = 1;
};

/// Throws ConfigError for cfl outside (0, 1], cfl above the RCM cap,
/// unpaired periodic boundaries or a negative end time.
void validate(const RunConfig& config);

struct RunStats {
  long steps = 0;
  double wall_seconds = 0.0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  /// Per component: (final total - initial total + net boundary outflow) over
  /// the initial total (or the initial L1 content when the total vanishes).
  std::array<double, 3> conservation_drift{};
};

struct RunResult {
  SolutionField field;
  RunStats stats;
};

/// Componentwise sum of interior cells times dx, in fixed cell order.
ConservedState totals(const SolutionField& field);

/// Advances the field to config.t_end (or config.max_steps). Step failures are
/// rethrown with the step index and time prepended.
RunResult run(const SolutionField& initial, const RunConfig& config);

} // namespace riemannlab::engine
