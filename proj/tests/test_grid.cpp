#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pwc/evolution.hpp"
#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

using namespace pwc;

namespace {

const OscillatorParams kNatural{};

Grid default_grid() { return Grid::make(-10.0, 10.0, 1024); }

// Independent rectangle-rule quadrature of f(x) |psi|^2.
double quadrature(const Wavefunction& psi, double (*f)(double)) {
  double sum = 0.0;
  for (int k = 0; k < psi.grid.n_points; ++k) {
    sum += f(psi.grid.point(k)) * std::norm(psi.amplitudes[k]) * psi.grid.dx;
  }
  return sum;
}

}  // namespace

TEST_CASE("grid construction and spacing") {
  const Grid g = Grid::make(-10.0, 10.0, 1024);
  CHECK(g.dx == doctest::Approx(20.0 / 1024).epsilon(1e-15));
  // Power-of-two division is exact in binary floating point.
  CHECK(g.dx * g.n_points == g.x_max - g.x_min);

  const Grid small = Grid::make(-1.0, 1.0, 8);
  CHECK(small.point(0) == doctest::Approx(-1.0));
  CHECK(small.point(1) == doctest::Approx(-0.75));
  CHECK(small.point(7) == doctest::Approx(0.75));

  CHECK_THROWS_AS(Grid::make(1.0, -1.0, 64), Error);
  CHECK_THROWS_AS(Grid::make(-1.0, 1.0, 100), Error);
  CHECK_THROWS_AS(Grid::make(-1.0, 1.0, 4), Error);
}

TEST_CASE("inner products") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const Wavefunction psi1 = eigenstate(1, kNatural, g);

  CHECK(std::abs(inner_product(psi0, psi0) - complex{1.0, 0.0}) <= 1e-9);
  CHECK(std::abs(inner_product(psi0, psi1)) <= 1e-9);

  const Wavefunction q_psi0 =
      apply_operator(OperatorKind::position, psi0, nullptr, 1.0, 1.0);
  const complex first_moment = inner_product(psi0, q_psi0);
  CHECK(std::abs(first_moment) <= 1e-9);
  // Oracle: direct quadrature of the odd integrand.
  CHECK(std::abs(quadrature(psi0, [](double x) { return x; })) <= 1e-9);

  const Grid other = Grid::make(-8.0, 8.0, 1024);
  const Wavefunction mismatched = eigenstate(0, kNatural, other);
  CHECK_THROWS_AS(inner_product(psi0, mismatched), Error);
}

TEST_CASE("primitive operators") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const RealField v = oscillator_potential(kNatural, g);

  SUBCASE("position produces an odd field on the ground state") {
    const Wavefunction q_psi =
        apply_operator(OperatorKind::position, psi0, nullptr, 1.0, 1.0);
    for (int k = 1; k < g.n_points; ++k) {
      const int mirror = g.n_points - k;
      CHECK(std::abs(q_psi.amplitudes[k] + q_psi.amplitudes[mirror]) <= 1e-12);
    }
  }

  SUBCASE("hamiltonian reproduces the eigenvalue") {
    for (const int n : {0, 1, 4}) {
      const Wavefunction psi = eigenstate(n, kNatural, g);
      const Wavefunction h_psi =
          apply_operator(OperatorKind::hamiltonian, psi, &v, 1.0, 1.0);
      const double energy = kNatural.energy_level(n);
      double worst = 0.0, ref = 0.0;
      for (int k = 0; k < g.n_points; ++k) {
        worst = std::max(worst, std::abs(h_psi.amplitudes[k] -
                                         energy * psi.amplitudes[k]));
        ref = std::max(ref, std::abs(energy * psi.amplitudes[k]));
      }
      CHECK(worst / ref <= 1e-6);
    }
  }

  SUBCASE("momentum on the ground state is i x psi") {
    const Wavefunction p_psi =
        apply_operator(OperatorKind::momentum, psi0, nullptr, 1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < g.n_points; ++k) {
      const complex expected =
          complex{0.0, g.point(k)} * psi0.amplitudes[k];
      worst = std::max(worst, std::abs(p_psi.amplitudes[k] - expected));
    }
    CHECK(worst <= 1e-6);

    // Oracle: centered finite differences at its own accuracy.
    double worst_fd = 0.0;
    for (int k = 1; k + 1 < g.n_points; ++k) {
      const complex fd = complex{0.0, -1.0} *
                         (psi0.amplitudes[k + 1] - psi0.amplitudes[k - 1]) /
                         (2.0 * g.dx);
      worst_fd = std::max(worst_fd, std::abs(p_psi.amplitudes[k] - fd));
    }
    CHECK(worst_fd <= 1e-3);
  }

  SUBCASE("potential kind requires a field") {
    CHECK_THROWS_AS(
        apply_operator(OperatorKind::potential, psi0, nullptr, 1.0, 1.0),
        Error);
  }
}

TEST_CASE("probability density") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const RealField p = probability_density(psi0);

  // Natural units: P(0) = 1/sqrt(pi); x = 0 is a grid point.
  CHECK(std::abs(p.values[g.n_points / 2] -
                 1.0 / std::sqrt(std::numbers::pi)) <= 1e-6);

  double total = 0.0;
  for (const double q : p.values) {
    CHECK(q >= 0.0);
    total += q * g.dx;
  }
  CHECK(std::abs(total - 1.0) <= 1e-9);

  const Wavefunction psi1 = eigenstate(1, kNatural, g);
  const RealField p1 = probability_density(psi1);
  CHECK(std::abs(p1.values[g.n_points / 2]) <= 1e-9);
}

TEST_CASE("probability current") {
  const Grid g = default_grid();
  const RealField v = oscillator_potential(kNatural, g);

  SUBCASE("real states carry no current") {
    const Wavefunction psi = build_state(
        StateSpec::superposition({complex{1.0 / std::numbers::sqrt2, 0.0},
                                  complex{1.0 / std::numbers::sqrt2, 0.0}}),
        kNatural, g);
    const RealField j = probability_current(psi, 1.0, 1.0);
    for (const double x : j.values) CHECK(std::abs(x) <= 1e-9);
  }

  SUBCASE("rotated ground state carries no current") {
    const Wavefunction psi0 = eigenstate(0, kNatural, g);
    const Wavefunction rotated =
        evolve_eigenstate_analytic(psi0, 0.5, 1.7, 1.0);
    const RealField j = probability_current(rotated, 1.0, 1.0);
    for (const double x : j.values) CHECK(std::abs(x) <= 1e-9);
  }

  SUBCASE("coherent state at quarter period moves rigidly") {
    const Wavefunction alpha =
        build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
    const double period = kNatural.period();
    const Wavefunction psi =
        evolve(alpha, v, period / 1000.0, 250, 1.0, 1.0);
    const RealField j = probability_current(psi, 1.0, 1.0);
    const RealField p = probability_density(psi);
    // Uniform packet velocity -sqrt(2) sin(t) at t = pi/2.
    double worst = 0.0;
    for (int k = 0; k < g.n_points; ++k) {
      if (p.values[k] <= 1e-6) continue;
      worst = std::max(worst, std::abs(j.values[k] +
                                       std::numbers::sqrt2 * p.values[k]));
    }
    CHECK(worst <= 1e-4);

    // Oracle: finite-difference phase gradient where the density is large.
    for (int k = 0; k < g.n_points; ++k) {
      if (p.values[k] <= 1e-3) continue;
      const double phase_prev = std::arg(psi.amplitudes[k - 1]);
      const double phase_next = std::arg(psi.amplitudes[k + 1]);
      const double grad =
          std::remainder(phase_next - phase_prev, 2.0 * std::numbers::pi) /
          (2.0 * g.dx);
      CHECK(std::abs(j.values[k] - grad * p.values[k]) <= 1e-3);
    }
  }
}

TEST_CASE("continuity residual") {
  const Grid g = default_grid();
  const RealField v = oscillator_potential(kNatural, g);

  SUBCASE("stationary state") {
    const Wavefunction psi0 = eigenstate(0, kNatural, g);
    const Wavefunction later = evolve_eigenstate_analytic(psi0, 0.5, 1e-3, 1.0);
    const RealField r = continuity_residual(psi0, later, 1.0, 1.0);
    for (const double x : r.values) CHECK(std::abs(x) <= 1e-8);
  }

  auto sup_residual = [&](const Wavefunction& psi, double delta) {
    const Wavefunction later = evolve(psi, v, delta, 1, 1.0, 1.0);
    const RealField r = continuity_residual(psi, later, 1.0, 1.0);
    double worst = 0.0;
    for (const double x : r.values) worst = std::max(worst, std::abs(x));
    return worst;
  };

  // Probe mid-swing: at t = 0 these states are real, the density is
  // momentarily time-symmetric and the leading residual term vanishes.
  const double kProbeTime = 2.0 * std::numbers::pi / 8.0;

  SUBCASE("coherent state, second-order in the probe step") {
    const Wavefunction alpha =
        build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
    const Wavefunction moving =
        evolve(alpha, v, kProbeTime / 125.0, 125, 1.0, 1.0);
    const double r1 = sup_residual(moving, 1e-3);
    CHECK(r1 <= 1e-4);
    const double r2 = sup_residual(moving, 5e-4);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
  }

  SUBCASE("two-level superposition") {
    const Wavefunction psi = build_state(
        StateSpec::superposition({complex{1.0 / std::numbers::sqrt2, 0.0},
                                  complex{1.0 / std::numbers::sqrt2, 0.0}}),
        kNatural, g);
    const Wavefunction moving =
        evolve(psi, v, kProbeTime / 125.0, 125, 1.0, 1.0);
    const double r1 = sup_residual(moving, 1e-3);
    CHECK(r1 <= 1e-4);
    const double r2 = sup_residual(moving, 5e-4);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
  }

  SUBCASE("zero time separation is rejected") {
    const Wavefunction psi0 = eigenstate(0, kNatural, g);
    CHECK_THROWS_AS(continuity_residual(psi0, psi0, 1.0, 1.0), Error);
  }
}

TEST_CASE("spectral transform round trip") {
  const Grid g = Grid::make(-10.0, 10.0, 256);
  std::vector<complex> data(g.n_points);
  std::uint64_t s = 99;
  auto rand01 = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  };
  for (complex& c : data) c = complex{rand01() - 0.5, rand01() - 0.5};

  std::vector<complex> round = data;
  fft::forward(round);
  fft::inverse(round);
  for (size_t k = 0; k < data.size(); ++k) {
    CHECK(std::abs(round[k] - data[k]) <= 1e-12);
  }
}

TEST_CASE("spectral point evaluation matches the closed form") {
  const Grid g = default_grid();
  const Wavefunction psi0 = eigenstate(0, kNatural, g);
  const SpectralEvaluator eval(psi0);

  for (const double x : {0.0, 0.313, -1.7, 2.4142}) {
    const double expected =
        std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    CHECK(std::abs(eval(x) - complex{expected, 0.0}) <= 1e-10);
  }
  // On-grid evaluation reproduces the samples.
  for (const int k : {17, 512, 900}) {
    CHECK(std::abs(eval(g.point(k)) - psi0.amplitudes[k]) <= 1e-12);
  }
}

TEST_CASE("expectations of position functions match the density sum") {
  const Grid g = default_grid();
  const Wavefunction psi =
      build_state(StateSpec::coherent({1.0, 0.0}), kNatural, g);
  for (const int power : {1, 2}) {
    Wavefunction f_psi = psi;
    for (int k = 0; k < g.n_points; ++k) {
      f_psi.amplitudes[k] *= std::pow(g.point(k), power);
    }
    const complex lhs = inner_product(psi, f_psi);
    const double rhs =
        power == 1 ? quadrature(psi, [](double x) { return x; })
                   : quadrature(psi, [](double x) { return x * x; });
    CHECK(std::abs(lhs - complex{rhs, 0.0}) <= 1e-13);
  }
}

TEST_CASE("wavefunction csv export") {
  const Grid g = Grid::make(-1.0, 1.0, 8);
  Wavefunction psi = Wavefunction::zero(g);
  psi.amplitudes[3] = complex{1.0 / std::sqrt(g.dx), 0.0};

  const std::string csv = wavefunction_csv(psi);
  CHECK(csv.rfind("x,re,im,p_density\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  // 17 significant digits survive a round trip.
  CHECK(csv.find(format_double(1.0 / std::sqrt(g.dx))) != std::string::npos);
}
