#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "riemannlab/bench.hpp"
#include "riemannlab/riemann.hpp"

namespace riemannlab::bench {

using engine::BoundaryKind;
using nlohmann::json;

void validate(const TestCase& tc) {
  if (!(tc.x_left < tc.x0 && tc.x0 < tc.x_right)) {
    throw ConfigError("case '" + tc.name + "': need x_left < x0 < x_right");
  }
  if (!(tc.t_end >= 0.0)) throw ConfigError("case '" + tc.name + "': t_end must be >= 0");
  const GasModel gas = tc.gas();
  if ((tc.bc_left == BoundaryKind::Periodic) != (tc.bc_right == BoundaryKind::Periodic)) {
    throw ConfigError("case '" + tc.name + "': periodic boundaries must be paired");
  }
  if (tc.smooth) {
    const auto& s = *tc.smooth;
    if (!(s.rho_mean - std::abs(s.amplitude) > 0.0) || !(s.p > 0.0)) {
      throw ConfigError("case '" + tc.name + "': smooth profile must keep rho > 0 and p > 0");
    }
    return;
  }
  try {
    riemannlab::validate(tc.left);
    riemannlab::validate(tc.right);
  } catch (const NonPhysicalState& e) {
    throw ConfigError("case '" + tc.name + "': " + e.what());
  }
  if (riemann::vacuum_check(tc.left, tc.right, gas) != riemann::VacuumStatus::Ok) {
    throw ConfigError("case '" + tc.name + "': data generate vacuum");
  }
}

std::vector<TestCase> builtin_suite() {
  std::vector<TestCase> suite;

  TestCase sod;
  sod.name = "sod";
  sod.left = {1.0, 0.0, 1.0};
  sod.right = {0.125, 0.0, 0.1};
  sod.t_end = 0.25;
  suite.push_back(sod);

  TestCase rar;
  rar.name = "rar123";
  rar.left = {1.0, -2.0, 0.4};
  rar.right = {1.0, 2.0, 0.4};
  rar.t_end = 0.15;
  suite.push_back(rar);

  TestCase blast;
  blast.name = "blast_left";
  blast.left = {1.0, 0.0, 1000.0};
  blast.right = {1.0, 0.0, 0.01};
  blast.t_end = 0.012;
  blast.bc_left = BoundaryKind::Reflective;
  blast.bc_right = BoundaryKind::Reflective;
  blast.reference = ReferenceKind::FineGrid;
  suite.push_back(blast);

  TestCase contact;
  contact.name = "contact";
  contact.left = {1.4, 0.1, 1.0};
  contact.right = {1.0, 0.1, 1.0};
  contact.t_end = 2.0;
  suite.push_back(contact);

  TestCase smooth;
  smooth.name = "smooth_advect";
  smooth.smooth = SmoothProfile{};
  smooth.left = smooth.right = {1.0, 1.0, 1.0};
  smooth.t_end = 1.0;
  smooth.bc_left = BoundaryKind::Periodic;
  smooth.bc_right = BoundaryKind::Periodic;
  smooth.reference = ReferenceKind::Advection;
  suite.push_back(smooth);

  return suite;
}

std::optional<TestCase> find_case(const std::string& name) {
  for (auto& tc : builtin_suite()) {
    if (tc.name == name) return tc;
  }
  return std::nullopt;
}

namespace {

PrimitiveState read_state(const json& j) {
  return {j.at("rho").get<double>(), j.at("u").get<double>(), j.at("p").get<double>()};
}

BoundaryKind read_boundary(const json& j, const char* key) {
  if (!j.contains(key)) return BoundaryKind::Transmissive;
  const auto name = j.at(key).get<std::string>();
  const auto kind = engine::parse_boundary(name);
  if (!kind) throw ConfigError("unknown boundary kind '" + name + "'");
  return *kind;
}

} // namespace

TestCase load_case_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open case file " + path.string());
  TestCase tc;
  try {
    const json j = json::parse(in);
    tc.name = j.value("name", path.stem().string());
    tc.x0 = j.value("x0", 0.5);
    tc.x_left = j.value("x_left", 0.0);
    tc.x_right = j.value("x_right", 1.0);
    tc.t_end = j.at("t_end").get<double>();
    tc.gamma = j.value("gamma", 1.4);
    tc.bc_left = read_boundary(j, "boundary_left");
    tc.bc_right = read_boundary(j, "boundary_right");
    if (j.contains("smooth")) {
      const auto& s = j.at("smooth");
      SmoothProfile sp;
      sp.rho_mean = s.value("rho_mean", sp.rho_mean);
      sp.amplitude = s.value("amplitude", sp.amplitude);
      sp.periods = s.value("periods", sp.periods);
      sp.u = s.value("u", sp.u);
      sp.p = s.value("p", sp.p);
      tc.smooth = sp;
      tc.left = tc.right = {sp.rho_mean, sp.u, sp.p};
      tc.reference = ReferenceKind::Advection;
    } else {
      tc.left = read_state(j.at("left"));
      tc.right = read_state(j.at("right"));
      tc.reference = ReferenceKind::RiemannFan;
    }
    if (j.contains("reference")) {
      const auto ref = j.at("reference").get<std::string>();
      if (ref == "riemann-fan") tc.reference = ReferenceKind::RiemannFan;
      else if (ref == "advection") tc.reference = ReferenceKind::Advection;
      else if (ref == "fine-grid") tc.reference = ReferenceKind::FineGrid;
      else throw ConfigError("unknown reference kind '" + ref + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError("malformed case file " + path.string() + ": " + e.what());
  }
  (void)tc.gas(); // gamma check
  validate(tc);
  return tc;
}

PrimitiveState initial_state(const TestCase& tc, double x) {
  if (tc.smooth) {
    const auto& s = *tc.smooth;
    const double phase = (x - tc.x_left) / (tc.x_right - tc.x_left);
    return {s.rho_mean + s.amplitude * std::sin(2.0 * std::numbers::pi * s.periods * phase), s.u,
            s.p};
  }
  return x < tc.x0 ? tc.left : tc.right;
}

engine::SolutionField initial_field(const TestCase& tc, int n_cells, int n_ghost) {
  const engine::Grid1D grid(tc.x_left, tc.x_right, n_cells, n_ghost);
  return engine::make_field(grid, [&](double x) { return initial_state(tc, x); }, tc.gas());
}

} // namespace riemannlab::bench
