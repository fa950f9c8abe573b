#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pwc/evolution.hpp"
#include "pwc/fock.hpp"
#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

using namespace pwc;

namespace {

const OscillatorParams kNatural{};
const double kPeriod = 2.0 * std::numbers::pi;

Grid default_grid() { return Grid::make(-10.0, 10.0, 1024); }

double sup_diff(const Wavefunction& a, const Wavefunction& b) {
  double worst = 0.0;
  for (int k = 0; k < a.grid.n_points; ++k) {
    worst = std::max(worst, std::abs(a.amplitudes[k] - b.amplitudes[k]));
  }
  return worst;
}

}  // namespace

TEST_CASE("ground state acquires only the stationary phase over a period") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);

  // The splitting phase error (omega dt)^2/24 per unit time forces dt below
  // the documented default before the 1e-6 comparison is meaningful.
  const long steps = 4000;
  const Wavefunction evolved =
      evolve(psi0, v, kPeriod / steps, steps, 1.0, 1.0);
  const Wavefunction expected =
      evolve_eigenstate_analytic(psi0, 0.5, kPeriod, 1.0);
  CHECK(sup_diff(evolved, expected) <= 1e-6);
}

TEST_CASE("evolution is reversible") {
  const Grid g = default_grid();
  const Wavefunction psi =
      build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);
  const double dt = kPeriod / 1000.0;

  const Wavefunction there = evolve(psi, v, dt, 500, 1.0, 1.0);
  const Wavefunction back = evolve(there, v, -dt, 500, 1.0, 1.0);
  CHECK(sup_diff(back, psi) <= 1e-10);
}

TEST_CASE("coherent state oscillates classically") {
  const Grid g = default_grid();
  const Wavefunction psi =
      build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);

  const Wavefunction half =
      evolve(psi, v, kPeriod / 1000.0, 500, 1.0, 1.0);
  const complex q =
      expectation_value(OperatorKind::position, half, nullptr, 1.0, 1.0);
  CHECK(std::abs(q - complex{-std::numbers::sqrt2, 0.0}) <= 1e-4);
}

TEST_CASE("analytic eigenstate evolution") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const Wavefunction psi1 = eigenstate(1, kNatural, g);

  SUBCASE("identity at t = 0") {
    const Wavefunction same = evolve_eigenstate_analytic(psi0, 0.5, 0.0, 1.0);
    CHECK(sup_diff(same, psi0) == 0.0);
  }

  SUBCASE("ground state flips sign after one period") {
    const Wavefunction flipped =
        evolve_eigenstate_analytic(psi0, 0.5, kPeriod, 1.0);
    for (int k = 0; k < g.n_points; ++k) {
      CHECK(std::abs(flipped.amplitudes[k] + psi0.amplitudes[k]) <= 1e-15);
    }
  }

  SUBCASE("first excited state picks up i at half period") {
    const Wavefunction rotated =
        evolve_eigenstate_analytic(psi1, 1.5, 0.5 * kPeriod, 1.0);
    for (int k = 0; k < g.n_points; ++k) {
      CHECK(std::abs(rotated.amplitudes[k] -
                     complex{0.0, 1.0} * psi1.amplitudes[k]) <= 1e-15);
    }
  }

  SUBCASE("validation flag catches non-eigenstates") {
    const RealField v = oscillator_potential(kNatural, g);
    const Wavefunction mix =
        build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
    CHECK_THROWS_AS(evolve_eigenstate_analytic(mix, 0.5, 1.0, 1.0, &v, 1.0),
                    Error);
    CHECK_NOTHROW(evolve_eigenstate_analytic(psi0, 0.5, 1.0, 1.0, &v, 1.0));
  }
}

TEST_CASE("unitarity and energy conservation") {
  const Grid g = default_grid();
  const RealField v = oscillator_potential(kNatural, g);
  const double dt = kPeriod / 1000.0;

  const Wavefunction psi =
      build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
  const Wavefunction after = evolve(psi, v, dt, 10000, 1.0, 1.0);
  CHECK(std::abs(after.norm() - 1.0) <= 1e-10);

  for (const StateSpec& spec :
       {StateSpec::eigenstate(1), StateSpec::coherent({1.0, 0.0}),
        StateSpec::superposition({complex{1.0 / std::numbers::sqrt2, 0.0},
                                  complex{1.0 / std::numbers::sqrt2, 0.0}})}) {
    const Wavefunction state = build_state(spec, kNatural, g);
    const double e0 =
        expectation_value(OperatorKind::hamiltonian, state, &v, 1.0, 1.0)
            .real();
    const Wavefunction evolved = evolve(state, v, dt, 1000, 1.0, 1.0);
    const double e1 =
        expectation_value(OperatorKind::hamiltonian, evolved, &v, 1.0, 1.0)
            .real();
    CHECK(std::abs(e1 - e0) / e0 <= 1e-8);
  }
}

TEST_CASE("stepper is second order") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);

  auto sup_error = [&](long steps) {
    const double t = 0.5 * kPeriod;
    const Wavefunction numeric = evolve(psi0, v, t / steps, steps, 1.0, 1.0);
    const Wavefunction exact =
        evolve_eigenstate_analytic(psi0, 0.5, t, 1.0);
    return sup_diff(numeric, exact);
  };
  const double ratio = sup_error(250) / sup_error(500);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("pictures agree on the position expectation") {
  const Grid g = default_grid();
  const RealField v = oscillator_potential(kNatural, g);
  const Wavefunction alpha =
      build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
  const FockOperators ops = FockOperators::build(64, kNatural);
  const std::vector<complex> coeffs =
      fock_state_coefficients(StateSpec::coherent({1.0, 0.0}), 64);

  for (const double frac : {0.0, 0.125, 0.25, 0.5}) {
    const Wavefunction psi_t =
        evolve_by(alpha, v, frac * kPeriod, kPeriod / 1000.0, 1.0, 1.0);
    const double grid_q =
        expectation_value(OperatorKind::position, psi_t, nullptr, 1.0, 1.0)
            .real();
    const double fock_q =
        fock_expectation(heisenberg_operator(HeisenbergObservable::position,
                                             frac * kPeriod, ops),
                         coeffs)
            .real();
    CHECK(std::abs(grid_q - fock_q) <= 1e-5);
  }
}

TEST_CASE("argument validation") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);
  CHECK_THROWS_AS(evolve(psi0, v, 0.0, 10, 1.0, 1.0), Error);
  const RealField other = oscillator_potential(kNatural, Grid::make(-8, 8, 64));
  CHECK_THROWS_AS(evolve(psi0, other, 1e-3, 1, 1.0, 1.0), Error);
}
