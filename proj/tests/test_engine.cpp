#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "riemannlab/engine.hpp"
#include "riemannlab/riemann.hpp"

using namespace riemannlab;
using namespace riemannlab::engine;
using schemes::FluxKind;
using schemes::MeshRatio;
using doctest::Approx;

namespace {

const GasModel air{1.4};

SolutionField uniform_field(int n, const PrimitiveState& w, int ghosts = 1) {
  return make_field(Grid1D(0.0, 1.0, n, ghosts), [&](double) { return w; }, air);
}

std::vector<Scheme> all_schemes() {
  std::vector<Scheme> out;
  for (const auto& name : scheme_names()) out.push_back(*parse_scheme(name));
  return out;
}

} // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid1D(1.0, 0.0, 10), ConfigError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 3), ConfigError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 10, 0), ConfigError);
  const Grid1D g(0.0, 2.0, 8);
  CHECK(g.dx() == 0.25);
  CHECK(g.center(0) == 0.125);
  CHECK(g.center(7) == 1.875);
  CHECK(g.n_total() == 10);
}

TEST_CASE("boundary conditions") {
  SolutionField f(Grid1D(0.0, 1.0, 4, 2));
  for (int i = 0; i < 4; ++i) f.at(i) = {1.0 + i, 0.1 * (i + 1), 3.0 + i};

  apply_boundary(f, BoundaryKind::Transmissive, BoundaryKind::Transmissive);
  CHECK(f.cells[1] == f.at(0));
  CHECK(f.cells[0] == f.at(0));
  CHECK(f.cells[6] == f.at(3));
  CHECK(f.cells[7] == f.at(3));

  apply_boundary(f, BoundaryKind::Reflective, BoundaryKind::Reflective);
  CHECK(f.cells[1] == ConservedState{f.at(0).mass, -f.at(0).momentum, f.at(0).energy});
  CHECK(f.cells[0] == ConservedState{f.at(1).mass, -f.at(1).momentum, f.at(1).energy});
  CHECK(f.cells[6] == ConservedState{f.at(3).mass, -f.at(3).momentum, f.at(3).energy});

  apply_boundary(f, BoundaryKind::Periodic, BoundaryKind::Periodic);
  CHECK(f.cells[1] == f.at(3));
  CHECK(f.cells[0] == f.at(2));
  CHECK(f.cells[6] == f.at(0));
  CHECK(f.cells[7] == f.at(1));

  CHECK_THROWS_AS(apply_boundary(f, BoundaryKind::Periodic, BoundaryKind::Transmissive), ConfigError);
  CHECK(parse_boundary("reflective") == BoundaryKind::Reflective);
  CHECK_FALSE(parse_boundary("open"));
}

TEST_CASE("compute_dt") {
  // rho = 1.4, p = 1: a = 1; u = 1 gives |u| + a = 2.
  auto f = uniform_field(100, {1.4, 1.0, 1.0});
  CHECK(compute_dt(f, air, 0.9, 10.0) == Approx(0.0045).epsilon(1e-14));
  f.time = 0.249;
  CHECK(compute_dt(f, air, 0.9, 0.25) == Approx(0.001).epsilon(1e-12));
  CHECK_THROWS_AS(compute_dt(f, air, 1.5, 1.0), ConfigError);

  RunConfig cfg;
  cfg.scheme = Scheme::random_choice();
  cfg.cfl = 0.9;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.cfl = 0.5;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("van der Corput sequence") {
  CHECK(van_der_corput(1) == 0.5);
  CHECK(van_der_corput(2) == 0.25);
  CHECK(van_der_corput(3) == 0.75);
  CHECK(van_der_corput(4) == 0.125);
  CHECK(van_der_corput(6) == 0.375);
  CHECK_THROWS_AS(van_der_corput(0), ConfigError);
  for (long n = 1; n < 5000; ++n) {
    const double t = van_der_corput(n);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
  }
}

TEST_CASE("uniform fields are preserved bitwise by every scheme") {
  const PrimitiveState w{0.8, 0.3, 1.7};
  for (const auto& scheme : all_schemes()) {
    for (auto bc : {BoundaryKind::Transmissive, BoundaryKind::Periodic}) {
      RunConfig cfg;
      cfg.scheme = scheme;
      cfg.cfl = scheme.is_conservative() ? 0.9 : 0.5;
      cfg.left = cfg.right = bc;
      cfg.t_end = 0.3;
      const auto init = uniform_field(32, w, scheme.required_ghosts());
      const auto result = run(init, cfg);
      CAPTURE(to_string(scheme));
      CHECK(result.stats.steps > 0);
      for (int i = 0; i < 32; ++i) CHECK(result.field.at(i) == init.at(i));
    }
  }
}

TEST_CASE("run with t_end = 0 returns the initial field") {
  const auto init = uniform_field(16, {1.0, 0.0, 1.0});
  RunConfig cfg;
  cfg.t_end = 0.0;
  const auto r = run(init, cfg);
  CHECK(r.stats.steps == 0);
  CHECK(r.field.cells == init.cells);
}

TEST_CASE("final step lands exactly on t_end") {
  auto init = make_field(Grid1D(0.0, 1.0, 50),
                         [](double x) { return x < 0.5 ? PrimitiveState{1, 0, 1} : PrimitiveState{0.125, 0, 0.1}; },
                         air);
  RunConfig cfg;
  cfg.t_end = 0.1234;
  const auto r = run(init, cfg);
  CHECK(r.field.time == 0.1234);
  CHECK(r.stats.min_dt <= r.stats.max_dt);
}

TEST_CASE("conservation with periodic boundaries") {
  auto init = make_field(
      Grid1D(0.0, 1.0, 64),
      [](double x) { return PrimitiveState{1.0 + 0.3 * std::sin(2 * M_PI * x), 0.5, 1.0 + 0.1 * std::cos(2 * M_PI * x)}; },
      air);
  for (auto kind : {FluxKind::GodunovExact, FluxKind::GodunovLinearised, FluxKind::Hll,
                    FluxKind::LaxFriedrichs, FluxKind::LaxWendroff, FluxKind::Ader2}) {
    RunConfig cfg;
    cfg.scheme = Scheme::conservative(kind);
    cfg.left = cfg.right = BoundaryKind::Periodic;
    cfg.t_end = 1e9;
    cfg.max_steps = 1000;
    const auto r = run(init, cfg);
    CAPTURE(schemes::to_string(kind));
    CHECK(r.stats.steps == 1000);
    const auto t0 = totals(init);
    const auto t1 = totals(r.field);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(t1[k] - t0[k]) <= 1e-12 * std::abs(t0[k]));
      CHECK(std::abs(r.stats.conservation_drift[k]) <= 1e-12);
    }
  }
}

TEST_CASE("threaded interface fluxes give identical fields") {
  auto init = make_field(Grid1D(0.0, 1.0, 200),
                         [](double x) { return x < 0.5 ? PrimitiveState{1, 0, 1} : PrimitiveState{0.125, 0, 0.1}; },
                         air);
  for (auto kind : {FluxKind::GodunovExact, FluxKind::Ader2}) {
    RunConfig cfg;
    cfg.scheme = Scheme::conservative(kind);
    cfg.t_end = 0.2;
    cfg.threads = 1;
    const auto a = run(init, cfg);
    cfg.threads = 4;
    const auto b = run(init, cfg);
    CHECK(a.field.cells == b.field.cells);
  }
}

TEST_CASE("positivity failure reports the cell") {
  // Lax-Wendroff on a strong blast overshoots into negative pressure.
  auto init = make_field(Grid1D(0.0, 1.0, 100),
                         [](double x) { return x < 0.5 ? PrimitiveState{1, 0, 1000} : PrimitiveState{1, 0, 0.01}; },
                         air);
  RunConfig cfg;
  cfg.scheme = Scheme::conservative(FluxKind::LaxWendroff);
  cfg.t_end = 0.012;
  try {
    (void)run(init, cfg);
    FAIL("expected a positivity failure");
  } catch (const NonPhysicalState& e) {
    CHECK(std::string(e.what()).find("step ") == 0);
    CHECK(e.cell().has_value());
  }
}

TEST_CASE("rcm keeps a steady contact sharp") {
  const PrimitiveState l{1.4, 0.0, 1.0};
  const PrimitiveState r{1.0, 0.0, 1.0};
  auto field = make_field(Grid1D(0.0, 1.0, 100), [&](double x) { return x < 0.5 ? l : r; }, air);
  const auto ql = primitive_to_conserved(l, air);
  const auto qr = primitive_to_conserved(r, air);
  RcmState rcm;
  for (int n = 0; n < 200; ++n) {
    apply_boundary(field, BoundaryKind::Transmissive, BoundaryKind::Transmissive);
    const double dt = compute_dt(field, air, 0.5, 1e9);
    rcm_step(field, rcm, MeshRatio(field.grid.dx(), dt), air);
  }
  for (const auto& q : field.interior()) CHECK((q == ql || q == qr));
  // A stationary contact never moves.
  for (int i = 0; i < 50; ++i) CHECK(field.at(i) == ql);
  for (int i = 50; i < 100; ++i) CHECK(field.at(i) == qr);
}

TEST_CASE("rcm samples the left fan for theta <= 1/2") {
  // One draw: theta = 1/2, sample at xi = dx/(2 dt) of the left interface.
  const PrimitiveState l{1.0, 0.0, 1.0};
  const PrimitiveState r{0.125, 0.0, 0.1};
  auto field = make_field(Grid1D(0.0, 1.0, 10), [&](double x) { return x < 0.5 ? l : r; }, air);
  apply_boundary(field, BoundaryKind::Transmissive, BoundaryKind::Transmissive);
  RcmState rcm;
  const MeshRatio mr(field.grid.dx(), 0.1);
  rcm_step(field, rcm, mr, air);
  CHECK(rcm.index == 2);
  const auto fan = riemann::solve_star_exact(l, r, air);
  const auto expected = primitive_to_conserved(riemann::sample_fan(fan, 0.5 * 0.1 / 0.1), air);
  CHECK(field.at(5) == expected);
  CHECK(field.at(4) == primitive_to_conserved(l, air));
}

TEST_CASE("lax-friedrichs update is the half-step average of the wide fan") {
  // Strong jumps; fine midpoint quadrature. The error bound is the summed
  // jump size over twice the number of points.
  std::mt19937_64 rng(404);
  constexpr int kPoints = 1000000;
  for (int n = 0; n < 10; ++n) {
    const PrimitiveState w[3] = {oracle::moderate_state(rng), oracle::moderate_state(rng),
                                 oracle::moderate_state(rng)};
    if (riemann::vacuum_check(w[0], w[2], air) != riemann::VacuumStatus::Ok) continue;
    std::vector<ConservedState> cells;
    for (const auto& wi : w) cells.push_back(primitive_to_conserved(wi, air));
    const auto fan = riemann::solve_star_exact(w[0], w[2], air);
    double smax = std::max(std::abs(fan.min_active_speed()), std::abs(fan.max_active_speed()));
    for (const auto& wi : w) smax = std::max(smax, std::abs(wi.u) + sound_speed(wi, air));
    const double dx = 0.01;
    const double dt = 0.8 * dx / smax;
    const MeshRatio mr(dx, dt);
    const schemes::SlopeField none(3);
    const auto fl = interface_flux({FluxKind::LaxFriedrichs}, cells, none, 0, mr, air);
    const auto fr = interface_flux({FluxKind::LaxFriedrichs}, cells, none, 1, mr, air);
    const ConservedState update = cells[1] - (dt / dx) * as_conserved(fr - fl);

    ConservedState avg{};
    for (int k = 0; k < kPoints; ++k) {
      const double x = -0.5 * dx + (k + 0.5) * dx / kPoints;
      avg += primitive_to_conserved(riemann::sample_fan(fan, x / (0.5 * dt)), air);
    }
    avg *= 1.0 / kPoints;
    // Midpoint quadrature errs by at most |jump| * h / 2 at each discontinuity;
    // rarefactions are continuous and contribute O(h^2).
    const auto qsl = primitive_to_conserved({fan.rho_star_left, fan.u_star, fan.p_star}, air);
    const auto qsr = primitive_to_conserved({fan.rho_star_right, fan.u_star, fan.p_star}, air);
    for (std::size_t k = 0; k < 3; ++k) {
      double jumps = std::abs(qsr[k] - qsl[k]);
      if (fan.left_wave == riemann::WaveKind::Shock) jumps += std::abs(qsl[k] - cells[0][k]);
      if (fan.right_wave == riemann::WaveKind::Shock) jumps += std::abs(cells[2][k] - qsr[k]);
      const double bound = jumps / (2.0 * kPoints) + 1e-9 * std::abs(update[k]);
      CHECK(std::abs(avg[k] - update[k]) <= bound);
    }
  }
}
