#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "riemannlab/engine.hpp"
#include "riemannlab/euler.hpp"

namespace riemannlab::bench {

/// rho(x) = rho_mean + amplitude * sin(2 pi periods (x - x_left) / L) with
/// uniform velocity and pressure.
struct SmoothProfile {
  double rho_mean = 1.0;
  double amplitude = 0.2;
  int periods = 1;
  double u = 1.0;
  double p = 1.0;
};

enum class ReferenceKind {
  RiemannFan,  // self-similar exact solution of the initial discontinuity
  Advection,   // smooth profile translated at the uniform velocity
  FineGrid,    // GodunovExact run on a much finer grid
};

struct TestCase {
  std::string name;
  PrimitiveState left{1.0, 0.0, 1.0};
  PrimitiveState right{1.0, 0.0, 1.0};
  double x0 = 0.5;
  double x_left = 0.0;
  double x_right = 1.0;
  double t_end = 0.0;
  double gamma = 1.4;
  engine::BoundaryKind bc_left = engine::BoundaryKind::Transmissive;
  engine::BoundaryKind bc_right = engine::BoundaryKind::Transmissive;
  std::optional<SmoothProfile> smooth;
  ReferenceKind reference = ReferenceKind::RiemannFan;

  GasModel gas() const { return GasModel(gamma); }
};

/// Throws ConfigError unless x_left < x0 < x_right, both states are valid and
/// the Riemann data pass the vacuum check.
void validate(const TestCase& tc);

std::vector<TestCase> builtin_suite();
std::optional<TestCase> find_case(const std::string& name);

/// Reads a case from a JSON document with the TestCase fields.
TestCase load_case_file(const std::filesystem::path& path);

/// Initial point value at x: left state for x < x0, right state otherwise,
/// or the smooth profile.
PrimitiveState initial_state(const TestCase& tc, double x);

engine::SolutionField initial_field(const TestCase& tc, int n_cells, int n_ghost = 1);

struct ReferenceOptions {
  int fine_cells = 20000;
  double fine_cfl = 0.9;
  unsigned threads = 1;
};

/// Reference solution at tc.t_end evaluated at cell centres (fine-grid
/// references are restricted by averaging). Throws ReferenceUnavailable when
/// a Riemann fan has reached the domain boundary or the fine grid is not an
/// integer multiple of the requested one.
engine::SolutionField exact_reference(const TestCase& tc, const engine::Grid1D& grid,
                                      const ReferenceOptions& options = {});

std::string reference_label(const TestCase& tc);

/// Per-variable norms, index 0 = rho, 1 = u, 2 = p.
struct ErrorNorms {
  std::array<double, 3> l1{};
  std::array<double, 3> l2{};
  std::array<double, 3> linf{};
};

ErrorNorms error_norms(const engine::SolutionField& numerical,
                       const engine::SolutionField& reference, const GasModel& gas);

struct ConvergenceTable {
  std::vector<int> cells;
  std::vector<double> l1_rho;
  /// orders[k] = log2(l1_rho[k] / l1_rho[k + 1])
  std::vector<double> orders;
};

/// Runs `levels` grids starting at base_cells, doubling each time; levels run
/// concurrently. RCM and fine-grid-reference cases are rejected.
ConvergenceTable convergence_study(const TestCase& tc, const engine::Scheme& scheme,
                                   int base_cells, int levels, double cfl, unsigned threads = 1);

struct RunReport {
  std::string case_name;
  std::string scheme;
  int n_cells = 0;
  double cfl = 0.0;
  double t_end = 0.0;
  double gamma = 1.4;
  std::string reference;
  std::optional<ErrorNorms> errors;
  long steps = 0;
  double wall_seconds = 0.0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  std::array<double, 3> conservation_drift{};
};

struct CaseRun {
  engine::SolutionField field;
  std::optional<engine::SolutionField> reference;
  RunReport report;
};

/// Runs one case and measures it against its reference when one exists.
CaseRun run_case(const TestCase& tc, const engine::Scheme& scheme, int n_cells, double cfl,
                 unsigned threads = 1, const ReferenceOptions& ref_options = {});

/// Writes solution.csv, report.json and plot.svg into out_dir.
void emit_outputs(const RunReport& report, const engine::SolutionField& field,
                  const engine::SolutionField* reference, const GasModel& gas,
                  const std::filesystem::path& out_dir);

/// CSV text with header x,rho,u,p,rho_exact,u_exact,p_exact (nan when no
/// reference), 17 significant digits.
std::string solution_csv(const engine::SolutionField& field,
                         const engine::SolutionField* reference, const GasModel& gas);

std::string report_json(const RunReport& report);

std::string plot_svg(const RunReport& report, const engine::SolutionField& field,
                     const engine::SolutionField* reference, const GasModel& gas);

} // namespace riemannlab::bench
