// Benchmark harness: runs shock-tube cases, measures errors against exact
// references and estimates convergence orders.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "riemannlab/bench.hpp"
#include "riemannlab/engine.hpp"

namespace {

using namespace riemannlab;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct BadArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bench::TestCase resolve_case(const std::string& name, const std::string& file) {
  if (!file.empty()) return bench::load_case_file(file);
  auto tc = bench::find_case(name);
  if (!tc) throw BadArgument("unknown case '" + name + "' (see list-cases)");
  return *tc;
}

engine::Scheme resolve_scheme(const std::string& name) {
  auto s = engine::parse_scheme(name);
  if (!s) throw BadArgument("unknown scheme '" + name + "' (see list-schemes)");
  return *s;
}

std::filesystem::path default_out_dir(const bench::TestCase& tc, const std::string& scheme,
                                      int cells) {
  const char* env = std::getenv("RIEMANNLAB_OUT_DIR");
  const std::filesystem::path base = env && *env ? env : "riemannlab-out";
  return base / (tc.name + "-" + scheme + "-N" + std::to_string(cells));
}

void print_norms(const bench::ErrorNorms& e) {
  std::printf("%-6s %14s %14s %14s\n", "", "L1", "L2", "Linf");
  const char* names[] = {"rho", "u", "p"};
  for (int k = 0; k < 3; ++k) {
    std::printf("%-6s %14.6e %14.6e %14.6e\n", names[k], e.l1[k], e.l2[k], e.linf[k]);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"riemannlab: Godunov-type schemes for the 1D Euler equations"};
  app.require_subcommand(1);

  std::string case_name;
  std::string case_file;
  std::string scheme_name;
  int cells = 100;
  double cfl = 0.9;
  std::optional<double> t_end;
  std::string out_dir;
  unsigned threads = 1;
  int levels = 4;

  auto* run_cmd = app.add_subcommand("run", "run one case and write solution.csv, report.json, plot.svg");
  auto* run_case_opt = run_cmd->add_option("--case", case_name, "built-in case name");
  run_cmd->add_option("--case-file", case_file, "JSON case file")->excludes(run_case_opt);
  run_cmd->add_option("--scheme", scheme_name, "scheme name")->required();
  run_cmd->add_option("--cells", cells, "number of cells")->required()->check(CLI::Range(4, 1 << 26));
  run_cmd->add_option("--cfl", cfl, "CFL number")->required();
  run_cmd->add_option("--t-end", t_end, "override the case end time");
  run_cmd->add_option("--out", out_dir, "output directory (default $RIEMANNLAB_OUT_DIR/<run>)");
  run_cmd->add_option("--threads", threads, "worker threads for interface fluxes")
      ->check(CLI::Range(1u, 256u));

  auto* conv_cmd = app.add_subcommand("convergence", "grid-refinement study of the L1 density error");
  auto* conv_case_opt = conv_cmd->add_option("--case", case_name, "built-in case name");
  conv_cmd->add_option("--case-file", case_file, "JSON case file")->excludes(conv_case_opt);
  conv_cmd->add_option("--scheme", scheme_name, "scheme name")->required();
  conv_cmd->add_option("--base-cells", cells, "coarsest grid")->required()->check(CLI::Range(4, 1 << 20));
  conv_cmd->add_option("--levels", levels, "number of grids (doubling)")->required()->check(CLI::Range(2, 12));
  conv_cmd->add_option("--cfl", cfl, "CFL number")->required();
  conv_cmd->add_option("--out", out_dir, "optional directory for convergence.csv");
  conv_cmd->add_option("--threads", threads, "grid levels run concurrently when > 1")
      ->check(CLI::Range(1u, 256u));

  auto* list_cases = app.add_subcommand("list-cases", "list built-in cases");
  auto* list_schemes = app.add_subcommand("list-schemes", "list scheme names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (list_cases->parsed()) {
      for (const auto& tc : bench::builtin_suite()) {
        std::printf("%-14s t_end=%g gamma=%g\n", tc.name.c_str(), tc.t_end, tc.gamma);
      }
      return 0;
    }
    if (list_schemes->parsed()) {
      for (const auto& s : engine::scheme_names()) std::printf("%s\n", s.c_str());
      return 0;
    }
    if (case_name.empty() && case_file.empty()) throw BadArgument("one of --case or --case-file is required");

    bench::TestCase tc = resolve_case(case_name, case_file);
    const engine::Scheme scheme = resolve_scheme(scheme_name);

    if (run_cmd->parsed()) {
      if (t_end) tc.t_end = *t_end;
      bench::ReferenceOptions ref_options;
      ref_options.threads = threads;
      const auto result = bench::run_case(tc, scheme, cells, cfl, threads, ref_options);
      const auto dir = out_dir.empty()
                           ? default_out_dir(tc, engine::to_string(scheme), cells)
                           : std::filesystem::path(out_dir);
      bench::emit_outputs(result.report, result.field,
                          result.reference ? &*result.reference : nullptr, tc.gas(), dir);
      std::printf("case %s, scheme %s, N=%d, cfl=%g, t_end=%g: %ld steps\n", tc.name.c_str(),
                  result.report.scheme.c_str(), cells, cfl, tc.t_end, result.report.steps);
      if (result.report.errors) {
        print_norms(*result.report.errors);
      } else {
        std::printf("no reference available\n");
      }
      std::printf("conservation drift (mass, momentum, energy): %.3e %.3e %.3e\n",
                  result.report.conservation_drift[0], result.report.conservation_drift[1],
                  result.report.conservation_drift[2]);
      std::printf("outputs in %s\n", dir.string().c_str());
      return 0;
    }

    if (conv_cmd->parsed()) {
      const auto table = bench::convergence_study(tc, scheme, cells, levels, cfl, threads);
      std::string csv = "cells,l1_rho,order\n";
      std::printf("%8s %16s %8s\n", "cells", "L1(rho)", "order");
      for (std::size_t k = 0; k < table.cells.size(); ++k) {
        char line[128];
        if (k == 0) {
          std::printf("%8d %16.8e %8s\n", table.cells[k], table.l1_rho[k], "-");
          std::snprintf(line, sizeof line, "%d,%.17g,\n", table.cells[k], table.l1_rho[k]);
        } else {
          std::printf("%8d %16.8e %8.4f\n", table.cells[k], table.l1_rho[k], table.orders[k - 1]);
          std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", table.cells[k], table.l1_rho[k],
                        table.orders[k - 1]);
        }
        csv += line;
      }
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::FILE* f = std::fopen((std::filesystem::path(out_dir) / "convergence.csv").c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write convergence.csv in " + out_dir);
        std::fputs(csv.c_str(), f);
        std::fclose(f);
      }
      return 0;
    }
  } catch (const BadArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReferenceUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const riemannlab::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
