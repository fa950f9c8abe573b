#include "pwc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwc/correlators.hpp"
#include "pwc/evolution.hpp"
#include "pwc/fock.hpp"
#include "pwc/parallel.hpp"

namespace pwc {

bool CheckGroup::passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const CheckItem& i) { return i.passed; });
}

double CheckGroup::worst_margin() const {
  double worst = 0.0;
  for (const CheckItem& i : items) {
    worst = std::max(worst, i.tolerance > 0.0
                                ? i.measured / i.tolerance
                                : (i.measured == 0.0 ? 0.0 : 1e99));
  }
  return worst;
}

namespace {

CheckItem item(const std::string& name, double measured, double tolerance) {
  return CheckItem{name, measured, tolerance, measured <= tolerance};
}

struct Fixtures {
  RunConfig cfg;
  OscillatorParams params;
  Grid grid;
  RealField potential;
  double period;
  double dt;
  StateSpec ground_spec = StateSpec::eigenstate(0);
  StateSpec coherent_spec = StateSpec::coherent(complex{1.0, 0.0});
  StateSpec super_spec = StateSpec::superposition(
      {complex{1.0 / std::numbers::sqrt2, 0.0},
       complex{1.0 / std::numbers::sqrt2, 0.0}});
  Wavefunction ground;
  Wavefunction coherent1;
  Wavefunction super;

  explicit Fixtures(const RunConfig& config)
      : cfg(config),
        params(config.params),
        grid(config.grid()),
        potential(oscillator_potential(config.params, grid)),
        period(config.params.period()),
        dt(config.dt()),
        ground(build_state(ground_spec, params, grid)),
        coherent1(build_state(coherent_spec, params, grid)),
        super(build_state(super_spec, params, grid)) {}

  double scale() const { return params.hbar / (params.mass * params.omega); }
};

double quadrature_moment(const Wavefunction& psi, int power) {
  double sum = 0.0;
  for (int k = 0; k < psi.grid.n_points; ++k) {
    sum += std::pow(psi.grid.point(k), power) * std::norm(psi.amplitudes[k]) *
           psi.grid.dx;
  }
  return sum;
}

double sup_amplitude_diff(const Wavefunction& a, const Wavefunction& b) {
  double worst = 0.0;
  for (int k = 0; k < a.grid.n_points; ++k) {
    worst = std::max(worst, std::abs(a.amplitudes[k] - b.amplitudes[k]));
  }
  return worst;
}

// Cumulative distribution of |psi|^2 over the rectangle cells, evaluated by
// linear interpolation; matches the sampling convention.
class DensityCdf {
 public:
  explicit DensityCdf(const Wavefunction& psi) : grid_(psi.grid) {
    const RealField p = probability_density(psi);
    cumulative_.resize(grid_.n_points + 1);
    cumulative_[0] = 0.0;
    for (int k = 0; k < grid_.n_points; ++k) {
      cumulative_[k + 1] = cumulative_[k] + p.values[k] * grid_.dx;
    }
    const double total = cumulative_.back();
    for (double& c : cumulative_) c /= total;
  }

  double operator()(double x) const {
    const double s = (x - (grid_.x_min - 0.5 * grid_.dx)) / grid_.dx;
    if (s <= 0.0) return 0.0;
    if (s >= grid_.n_points) return 1.0;
    const int k = static_cast<int>(std::floor(s));
    const double frac = s - k;
    return cumulative_[k] + frac * (cumulative_[k + 1] - cumulative_[k]);
  }

 private:
  Grid grid_;
  std::vector<double> cumulative_;
};

double ks_distance(std::vector<double> positions, const DensityCdf& cdf) {
  std::sort(positions.begin(), positions.end());
  const double n = static_cast<double>(positions.size());
  double worst = 0.0;
  for (size_t i = 0; i < positions.size(); ++i) {
    const double f = cdf(positions[i]);
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
    worst = std::max(worst, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return worst;
}

// Deterministic noise for the hermiticity property.
struct Noise {
  std::uint64_t state;
  double next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
  }
};

Wavefunction random_state(const Grid& grid, std::uint64_t seed) {
  Noise noise{seed};
  Wavefunction psi = Wavefunction::zero(grid);
  // Smooth random field: a few dozen Gaussian bumps with random phases.
  const double half_span = 0.3 * grid.length();
  for (int b = 0; b < 24; ++b) {
    const double center =
        0.5 * (grid.x_min + grid.x_max) + half_span * noise.next();
    const double width = 0.4 + 0.3 * std::abs(noise.next());
    const complex amp{noise.next(), noise.next()};
    const double wave = 3.0 * noise.next();
    for (int k = 0; k < grid.n_points; ++k) {
      const double u = (grid.point(k) - center) / width;
      psi.amplitudes[k] +=
          amp * std::exp(-0.5 * u * u) *
          complex{std::cos(wave * grid.point(k)),
                  std::sin(wave * grid.point(k))};
    }
  }
  psi.normalize();
  return psi;
}

// ---------------------------------------------------------------------------
// Acceptance checks
// ---------------------------------------------------------------------------

CheckGroup check_ground_state_stillness(const Fixtures& fx) {
  CheckGroup g{"A1", "ground-state trajectories stand still", {}, };
  // Resolving 1e-6 stillness needs the splitting error well below the
  // quantile spread; T/8000 gives an order-of-magnitude margin.
  const double dt = fx.period / 8000.0;
  TrajectoryEnsemble ens = sample_initial_positions(
      fx.ground, 64, SamplingScheme::quantile, 0, fx.ground_spec);
  integrate_trajectories(ens, fx.ground, fx.potential, 5.0 * fx.period, dt,
                         fx.params.hbar, fx.params.mass);
  double worst = 0.0;
  for (const std::vector<double>& frame : ens.frames) {
    for (int j = 0; j < ens.size(); ++j) {
      worst = std::max(worst, std::abs(frame[j] - ens.xi[j]));
    }
  }
  g.items.push_back(item("max |x(t) - xi| over five periods", worst, 1e-6));
  return g;
}

CheckGroup check_sign_contradiction(const Fixtures& fx) {
  CheckGroup g{"A2", "half-period correlations have opposite signs", {}};
  const double scale = fx.scale();
  const double half = 0.5 * fx.period;

  const CorrelationRecord grid_rec =
      qm_two_time_correlation(fx.ground, fx.potential, half, 0.0, fx.dt,
                              fx.params.hbar, fx.params.mass);
  g.items.push_back(item("grid symmetrized at lag T/2 vs -2<q^2>",
                         std::abs(grid_rec.symmetrized + scale),
                         2e-4 * scale));

  const FockOperators ops = FockOperators::build(32, fx.params);
  const std::vector<complex> coeffs = fock_state_coefficients(fx.ground_spec, 32);
  const complex fock = oracle_two_time_correlation(coeffs, half, 0.0, ops);
  g.items.push_back(item("fock symmetrized at lag T/2 vs -2<q^2>",
                         std::abs(2.0 * fock.real() + scale), 1e-12 * scale));

  TrajectoryEnsemble ens = sample_initial_positions(
      fx.ground, fx.cfg.ensemble_n, SamplingScheme::quantile, 0,
      fx.ground_spec);
  integrate_trajectories(ens, fx.ground, fx.potential, half, fx.dt,
                         fx.params.hbar, fx.params.mass);
  const CorrelationRecord bohm = bohm_two_time_correlation(ens, half, 0.0);
  g.items.push_back(item("trajectory symmetrized at lag T/2 vs +2<q^2>",
                         std::abs(bohm.symmetrized - scale), 1e-3 * scale));

  g.items.push_back(item("<q^2> by quadrature vs hbar/(2 m omega)",
                         std::abs(quadrature_moment(fx.ground, 2) -
                                  0.5 * scale),
                         1e-9 * scale));
  return g;
}

CheckGroup check_complex_correlation_law(const Fixtures& fx) {
  CheckGroup g{"A3", "complex correlation law over one period", {}};
  // The 1e-6 grid-vs-fock agreement needs the splitting phase error
  // (omega dt)^2/24 per unit time below that level; T/8000 achieves it.
  const double dt = fx.period / 8000.0;
  const double scale = fx.scale();
  const FockOperators ops = FockOperators::build(32, fx.params);
  const std::vector<complex> coeffs =
      fock_state_coefficients(fx.ground_spec, 32);

  const std::vector<double> lags = fx.cfg.lags();
  std::vector<complex> grid_vals(lags.size());
  parallel_for(static_cast<int>(lags.size()), [&](int i) {
    grid_vals[i] = qm_two_time_correlation(fx.ground, fx.potential, lags[i],
                                           0.0, dt, fx.params.hbar,
                                           fx.params.mass)
                       .value;
  });

  double worst_law = 0.0, worst_fock = 0.0;
  for (size_t i = 0; i < lags.size(); ++i) {
    const double phase = -fx.params.omega * lags[i];
    const complex expected =
        0.5 * scale * complex{std::cos(phase), std::sin(phase)};
    worst_law = std::max(worst_law, std::abs(grid_vals[i] - expected));
    const complex fock = oracle_two_time_correlation(coeffs, lags[i], 0.0, ops);
    worst_fock = std::max(worst_fock, std::abs(grid_vals[i] - fock));
  }
  g.items.push_back(item("max |grid - (hbar/2 m omega) e^{-i omega tau}|",
                         worst_law, 1e-4 * scale));
  g.items.push_back(item("max |grid - fock|", worst_fock, 1e-6 * scale));
  return g;
}

CheckGroup check_single_time_agreement(const Fixtures& fx) {
  CheckGroup g{"A4", "single-time ensemble averages match quantum values", {}};
  struct StateCase {
    const char* name;
    const StateSpec* spec;
    const Wavefunction* psi;
  };
  const StateCase states[] = {
      {"ground", &fx.ground_spec, &fx.ground},
      {"coherent(1)", &fx.coherent_spec, &fx.coherent1},
      {"(psi0+psi1)/sqrt2", &fx.super_spec, &fx.super},
  };
  struct KindCase {
    const char* name;
    OperatorKind op;
    LocalKind local;
  };
  const KindCase kinds[] = {
      {"position", OperatorKind::position, LocalKind::position},
      {"momentum", OperatorKind::momentum, LocalKind::momentum},
      {"hamiltonian", OperatorKind::hamiltonian, LocalKind::hamiltonian},
  };

  for (const StateCase& sc : states) {
    TrajectoryEnsemble ens = sample_initial_positions(
        *sc.psi, fx.cfg.ensemble_n, SamplingScheme::quantile, 0, *sc.spec);
    for (const KindCase& kc : kinds) {
      const RealField* v =
          kc.op == OperatorKind::hamiltonian ? &fx.potential : nullptr;
      const double qm =
          expectation_value(kc.op, *sc.psi, v, fx.params.hbar, fx.params.mass)
              .real();
      LocalOperator op{kc.local, fx.params,
                       kc.local == LocalKind::hamiltonian ? &fx.potential
                                                          : nullptr,
                       0.0};
      const double bohm = bohm_expectation(op, ens, *sc.psi, sc.psi->time);
      g.items.push_back(item(std::string(sc.name) + " / " + kc.name,
                             std::abs(bohm - qm), 1e-3));
    }
  }
  return g;
}

CheckGroup check_equivariance(const Fixtures& fx) {
  CheckGroup g{"A5", "trajectory ensemble stays |psi|^2 distributed", {}};
  TrajectoryEnsemble ens = sample_initial_positions(
      fx.super, fx.cfg.ensemble_n, SamplingScheme::quantile, 0, fx.super_spec);
  integrate_trajectories(ens, fx.super, fx.potential, fx.period, fx.dt,
                         fx.params.hbar, fx.params.mass);
  for (const double frac : {0.25, 0.5, 1.0}) {
    const double t = frac * fx.period;
    const Wavefunction psi_t = evolve_by(fx.super, fx.potential, t, fx.dt,
                                         fx.params.hbar, fx.params.mass);
    const double ks = ks_distance(ens.positions_at(t), DensityCdf(psi_t));
    g.items.push_back(item("KS distance at t = " + format_double(frac) + " T",
                           ks, 0.01));
  }
  return g;
}

CheckGroup check_kinetic_identity(const Fixtures& fx) {
  CheckGroup g{"A6", "local kinetic energy = (grad S)^2/2m + Q", {}};
  const Wavefunction psi =
      evolve_by(fx.coherent1, fx.potential, fx.period / 8.0, fx.dt,
                fx.params.hbar, fx.params.mass);
  const Wavefunction k_psi = apply_operator(OperatorKind::kinetic, psi,
                                            nullptr, fx.params.hbar,
                                            fx.params.mass);
  const VelocityField v = velocity_field(psi, fx.params.hbar, fx.params.mass);
  const RealField q = quantum_potential(psi, fx.params.hbar, fx.params.mass);
  const RealField p = probability_density(psi);

  double worst = 0.0;
  for (int k = 0; k < fx.grid.n_points; ++k) {
    if (p.values[k] <= 1e-6) continue;
    const double local_kinetic =
        (k_psi.amplitudes[k] / psi.amplitudes[k]).real();
    const double grad_s = fx.params.mass * v.values[k];
    const double classical = grad_s * grad_s / (2.0 * fx.params.mass);
    worst = std::max(worst,
                     std::abs(local_kinetic - (classical + q.values[k])));
  }
  g.items.push_back(
      item("sup norm of the identity residual on P > 1e-6", worst, 1e-5));
  return g;
}

CheckGroup check_heisenberg_ambiguity(const Fixtures& fx) {
  CheckGroup g{"A7", "Heisenberg-time local values follow xi cos(omega s)",
               {}};
  for (const double xi : {-1.0, 0.3, 2.0}) {
    for (const double frac : {0.0, 0.125, 0.5}) {
      const double s = frac * fx.period;
      const LocalOperator op = LocalOperator::heisenberg_q(fx.params, s);
      const double generic = local_expectation(op, fx.ground, xi);
      const double closed = heisenberg_local_expectation(xi, s, fx.params);
      g.items.push_back(item("xi = " + format_double(xi) + ", s = " +
                                 format_double(frac) + " T",
                             std::abs(generic - closed), 1e-6));
    }
  }
  return g;
}

CheckGroup check_heisenberg_closed_form(const Fixtures& fx) {
  CheckGroup g{"A8", "Fock Heisenberg operators match the classical rotation",
               {}};
  const FockOperators ops = FockOperators::build(32, fx.params);
  const double wm = fx.params.omega * fx.params.mass;
  for (const double frac : {0.125, 1.0 / 3.0}) {
    const double t = frac * fx.period;
    const double wt = fx.params.omega * t;
    const CMatrix expected_q = ops.q.scaled(std::cos(wt)) +
                               ops.p.scaled(std::sin(wt) / wm);
    const CMatrix qt =
        heisenberg_operator(HeisenbergObservable::position, t, ops);
    g.items.push_back(item("q(t) vs q cos + p sin/(omega m), t = " +
                               format_double(frac) + " T",
                           qt.max_abs_diff(expected_q), 1e-12));
    const CMatrix expected_p = ops.p.scaled(std::cos(wt)) -
                               ops.q.scaled(wm * std::sin(wt));
    const CMatrix pt =
        heisenberg_operator(HeisenbergObservable::momentum, t, ops);
    g.items.push_back(item("p(t) vs p cos - q omega m sin, t = " +
                               format_double(frac) + " T",
                           pt.max_abs_diff(expected_p), 1e-12));
  }
  const CMatrix q_half = heisenberg_operator(HeisenbergObservable::position,
                                             0.5 * fx.period, ops);
  g.items.push_back(item("q(T/2) vs -q",
                         q_half.max_abs_diff(ops.q.scaled(-1.0)), 1e-12));
  return g;
}

CheckGroup check_numerics_hygiene(const Fixtures& fx) {
  CheckGroup g{"A9", "numerics hygiene", {}};

  const Wavefunction after = evolve(fx.coherent1, fx.potential, fx.dt, 10000,
                                    fx.params.hbar, fx.params.mass);
  g.items.push_back(
      item("norm drift over 10^4 steps", std::abs(after.norm() - 1.0), 1e-10));

  // Probe the residual mid-swing; at t = 0 the packet sits at its turning
  // point where the leading midpoint error term vanishes.
  const Wavefunction moving = evolve_by(fx.coherent1, fx.potential,
                                        fx.period / 8.0, fx.dt,
                                        fx.params.hbar, fx.params.mass);
  auto residual_sup = [&](double delta) {
    const Wavefunction stepped = evolve(moving, fx.potential, delta, 1,
                                        fx.params.hbar, fx.params.mass);
    const RealField r = continuity_residual(moving, stepped, fx.params.hbar,
                                            fx.params.mass);
    double worst = 0.0;
    for (const double v : r.values) worst = std::max(worst, std::abs(v));
    return worst;
  };
  const double delta = 1e-3 / fx.params.omega;
  const double r1 = residual_sup(delta);
  const double r2 = residual_sup(0.5 * delta);
  g.items.push_back(item("continuity residual sup norm", r1, 1e-4));
  g.items.push_back(
      item("halving distance from 4x reduction", std::abs(r1 / r2 - 4.0), 1.0));

  const long steps = std::lround(fx.period / fx.dt);
  const std::pair<const char*, const Wavefunction*> energy_states[] = {
      {"eigenstate(1)", nullptr},
      {"coherent(1)", &fx.coherent1},
      {"superposition", &fx.super}};
  for (const auto& [name, psi] : energy_states) {
    const Wavefunction state =
        psi != nullptr ? *psi : build_state(StateSpec::eigenstate(1),
                                            fx.params, fx.grid);
    const double e0 = expectation_value(OperatorKind::hamiltonian, state,
                                        &fx.potential, fx.params.hbar,
                                        fx.params.mass)
                          .real();
    const Wavefunction evolved = evolve(state, fx.potential, fx.dt, steps,
                                        fx.params.hbar, fx.params.mass);
    const double e1 = expectation_value(OperatorKind::hamiltonian, evolved,
                                        &fx.potential, fx.params.hbar,
                                        fx.params.mass)
                          .real();
    g.items.push_back(item(std::string("energy drift over one period, ") +
                               name,
                           std::abs(e1 - e0) / std::abs(e0), 1e-8));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Invariant checks
// ---------------------------------------------------------------------------

CheckGroup check_grid_invariants(const Fixtures& fx) {
  CheckGroup g{"I1", "grid and operator invariants", {}};

  Wavefunction noise = random_state(fx.grid, 11);
  std::vector<complex> round = noise.amplitudes;
  fft::forward(round);
  fft::inverse(round);
  double worst = 0.0;
  for (size_t k = 0; k < round.size(); ++k) {
    worst = std::max(worst, std::abs(round[k] - noise.amplitudes[k]));
  }
  g.items.push_back(item("spectral round trip sup norm", worst, 1e-12));

  const Wavefunction phi = random_state(fx.grid, 23);
  const Wavefunction psi = random_state(fx.grid, 37);
  double worst_herm = 0.0;
  for (const OperatorKind kind :
       {OperatorKind::position, OperatorKind::momentum, OperatorKind::kinetic,
        OperatorKind::potential, OperatorKind::hamiltonian}) {
    const RealField* v = (kind == OperatorKind::potential ||
                          kind == OperatorKind::hamiltonian)
                             ? &fx.potential
                             : nullptr;
    const complex a = inner_product(
        phi, apply_operator(kind, psi, v, fx.params.hbar, fx.params.mass));
    const complex b = inner_product(
        psi, apply_operator(kind, phi, v, fx.params.hbar, fx.params.mass));
    worst_herm = std::max(worst_herm, std::abs(a - std::conj(b)));
  }
  g.items.push_back(item("operator hermiticity", worst_herm, 1e-9));

  // <psi| f(q) |psi> against the density sum, f = x and x^2.
  double worst_pos = 0.0;
  for (const int power : {1, 2}) {
    Wavefunction f_psi = fx.coherent1;
    for (int k = 0; k < fx.grid.n_points; ++k) {
      f_psi.amplitudes[k] *= std::pow(fx.grid.point(k), power);
    }
    const complex lhs = inner_product(fx.coherent1, f_psi);
    const double rhs = quadrature_moment(fx.coherent1, power);
    worst_pos = std::max(worst_pos, std::abs(lhs - complex{rhs, 0.0}));
  }
  g.items.push_back(
      item("position-function expectation vs density sum", worst_pos, 1e-13));

  double worst_norm = 0.0;
  for (const Wavefunction* state : {&fx.ground, &fx.coherent1, &fx.super}) {
    worst_norm = std::max(worst_norm, std::abs(state->norm() - 1.0));
    const Wavefunction evolved = evolve(*state, fx.potential, fx.dt, 64,
                                        fx.params.hbar, fx.params.mass);
    worst_norm = std::max(worst_norm, std::abs(evolved.norm() - 1.0));
  }
  g.items.push_back(item("normalization of built and evolved states",
                         worst_norm, 1e-9));
  return g;
}

CheckGroup check_state_invariants(const Fixtures& fx) {
  CheckGroup g{"I2", "oscillator eigenstate invariants", {}};
  std::vector<Wavefunction> states;
  for (int n = 0; n <= 8; ++n) states.push_back(eigenstate(n, fx.params, fx.grid));

  double worst_ortho = 0.0;
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      const complex ip = inner_product(states[a], states[b]);
      worst_ortho =
          std::max(worst_ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  g.items.push_back(item("orthonormality of levels 0..8", worst_ortho, 1e-9));

  double worst_eigen = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const Wavefunction h_psi =
        apply_operator(OperatorKind::hamiltonian, states[n], &fx.potential,
                       fx.params.hbar, fx.params.mass);
    const double energy = fx.params.energy_level(n);
    double sup = 0.0, ref = 0.0;
    for (int k = 0; k < fx.grid.n_points; ++k) {
      sup = std::max(sup, std::abs(h_psi.amplitudes[k] -
                                   energy * states[n].amplitudes[k]));
      ref = std::max(ref, std::abs(energy * states[n].amplitudes[k]));
    }
    worst_eigen = std::max(worst_eigen, sup / ref);
  }
  g.items.push_back(
      item("relative eigenrelation residual, n <= 8", worst_eigen, 1e-6));

  double worst_parity = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (int k = 1; k < fx.grid.n_points; ++k) {
      const int mirror = fx.grid.n_points - k;
      if (mirror >= fx.grid.n_points) continue;
      worst_parity = std::max(
          worst_parity, std::abs(states[n].amplitudes[k] -
                                 sign * states[n].amplitudes[mirror]));
    }
  }
  g.items.push_back(item("parity (-1)^n about the origin", worst_parity,
                         1e-12));
  return g;
}

CheckGroup check_evolution_invariants(const Fixtures& fx) {
  CheckGroup g{"I3", "evolution invariants", {}};

  const Wavefunction forward = evolve(fx.coherent1, fx.potential, fx.dt, 256,
                                      fx.params.hbar, fx.params.mass);
  const Wavefunction back = evolve(forward, fx.potential, -fx.dt, 256,
                                   fx.params.hbar, fx.params.mass);
  g.items.push_back(item("reversibility sup norm",
                         sup_amplitude_diff(back, fx.coherent1), 1e-10));

  const double e0 = fx.params.energy_level(0);
  auto sup_error = [&](double dt) {
    const double t = 0.5 * fx.period;
    const long steps = std::lround(t / dt);
    const Wavefunction numeric = evolve(fx.ground, fx.potential, t / steps,
                                        steps, fx.params.hbar, fx.params.mass);
    const Wavefunction exact =
        evolve_eigenstate_analytic(fx.ground, e0, t, fx.params.hbar);
    return sup_amplitude_diff(numeric, exact);
  };
  const double err_coarse = sup_error(fx.period / 500.0);
  const double err_fine = sup_error(fx.period / 1000.0);
  g.items.push_back(item("halving-order ratio distance from 4",
                         std::abs(err_coarse / err_fine - 4.0), 0.5));
  g.items.push_back(
      item("sup error vs analytic at the configured dt",
           sup_error(fx.dt), 1e-4));

  const FockOperators ops = FockOperators::build(64, fx.params);
  const std::vector<complex> coeffs =
      fock_state_coefficients(fx.coherent_spec, 64);
  double worst_pict = 0.0;
  for (const double frac : {0.0, 0.125, 0.25, 0.5}) {
    const double t = frac * fx.period;
    const Wavefunction psi_t = evolve_by(fx.coherent1, fx.potential, t, fx.dt,
                                         fx.params.hbar, fx.params.mass);
    const double grid_q =
        expectation_value(OperatorKind::position, psi_t, nullptr,
                          fx.params.hbar, fx.params.mass)
            .real();
    const double fock_q =
        fock_expectation(
            heisenberg_operator(HeisenbergObservable::position, t, ops),
            coeffs)
            .real();
    worst_pict = std::max(worst_pict, std::abs(grid_q - fock_q));
  }
  g.items.push_back(item("picture equivalence of <q(t)>", worst_pict, 1e-5));
  return g;
}

CheckGroup check_bohm_invariants(const Fixtures& fx) {
  CheckGroup g{"I4", "trajectory-side invariants", {}};

  const Wavefunction rotated = evolve_eigenstate_analytic(
      fx.ground, fx.params.energy_level(0), 0.9 / fx.params.omega,
      fx.params.hbar);
  const VelocityField v = velocity_field(rotated, fx.params.hbar,
                                         fx.params.mass);
  // J/P amplifies rounding noise as P drops; judge stillness where the
  // density is appreciable.
  const RealField p_rot = probability_density(rotated);
  const double p_floor =
      1e-8 * *std::max_element(p_rot.values.begin(), p_rot.values.end());
  double worst_v = 0.0;
  for (int k = 0; k < fx.grid.n_points; ++k) {
    if (p_rot.values[k] > p_floor) {
      worst_v = std::max(worst_v, std::abs(v.values[k]));
    }
  }
  g.items.push_back(item("ground-state velocity field sup norm", worst_v,
                         1e-9));

  const PhaseField phase = phase_field(rotated, fx.params.hbar);
  const auto [lo, hi] = std::minmax_element(phase.field.values.begin(),
                                            phase.field.values.end());
  g.items.push_back(item("ground-state phase spread", *hi - *lo, 1e-9));
  const double expected_phase = -rotated.time * fx.params.energy_level(0);
  g.items.push_back(item(
      "ground-state phase value modulo 2 pi hbar",
      std::abs(std::remainder(
          phase.field.values[fx.grid.n_points / 2] - expected_phase,
          2.0 * std::numbers::pi * fx.params.hbar)),
      1e-9));

  const RealField q = quantum_potential(fx.ground, fx.params.hbar,
                                        fx.params.mass);
  const double q_at_zero = cubic_interpolate(q.values, fx.grid, 0.0);
  const double turning = std::sqrt(fx.params.hbar /
                                   (fx.params.mass * fx.params.omega));
  const double q_at_turning = cubic_interpolate(q.values, fx.grid, turning);
  g.items.push_back(item("quantum potential at the origin vs hbar omega/2",
                         std::abs(q_at_zero -
                                  0.5 * fx.params.hbar * fx.params.omega),
                         1e-6));
  g.items.push_back(item("quantum potential zero at the ground-state width",
                         std::abs(q_at_turning), 1e-6));

  TrajectoryEnsemble order = sample_initial_positions(
      fx.super, 64, SamplingScheme::quantile, 0, fx.super_spec);
  integrate_trajectories(order, fx.super, fx.potential, fx.period, fx.dt,
                         fx.params.hbar, fx.params.mass);
  int violations = 0;
  for (const std::vector<double>& frame : order.frames) {
    for (size_t j = 0; j + 1 < frame.size(); ++j) {
      if (frame[j + 1] < frame[j]) ++violations;
    }
  }
  g.items.push_back(item("trajectory order violations", violations, 0.0));

  // Resampling at T/4 and carrying both ensembles to T/2 leaves <q(T/2)^2>
  // unchanged.
  const int n = fx.cfg.ensemble_n;
  TrajectoryEnsemble from_zero = sample_initial_positions(
      fx.coherent1, n, SamplingScheme::quantile, 0, fx.coherent_spec);
  integrate_trajectories(from_zero, fx.coherent1, fx.potential,
                         0.5 * fx.period, fx.dt, fx.params.hbar,
                         fx.params.mass);
  const Wavefunction quarter = evolve_by(fx.coherent1, fx.potential,
                                         0.25 * fx.period, fx.dt,
                                         fx.params.hbar, fx.params.mass);
  TrajectoryEnsemble from_quarter = sample_initial_positions(
      quarter, n, SamplingScheme::quantile, 0, fx.coherent_spec);
  integrate_trajectories(from_quarter, quarter, fx.potential,
                         0.25 * fx.period, fx.dt, fx.params.hbar,
                         fx.params.mass);
  const double half_t = 0.5 * fx.period;
  const double m0 =
      bohm_two_time_correlation(from_zero, half_t, half_t).value.real();
  const double m1 =
      bohm_two_time_correlation(from_quarter, half_t, half_t).value.real();
  g.items.push_back(item("time-shift invariance of <q(T/2)^2>",
                         std::abs(m0 - m1), 2e-3));

  TrajectoryEnsemble random_a = sample_initial_positions(
      fx.ground, 512, SamplingScheme::random, 7, fx.ground_spec);
  TrajectoryEnsemble random_b = sample_initial_positions(
      fx.ground, 512, SamplingScheme::random, 7, fx.ground_spec);
  double worst_seed = 0.0;
  for (int j = 0; j < random_a.size(); ++j) {
    worst_seed = std::max(worst_seed,
                          std::abs(random_a.xi[j] - random_b.xi[j]));
  }
  g.items.push_back(item("random sampling is bit-stable", worst_seed, 0.0));

  TrajectoryEnsemble median = sample_initial_positions(
      fx.ground, 1, SamplingScheme::quantile, 0, fx.ground_spec);
  g.items.push_back(item("single quantile particle sits at the median",
                         std::abs(median.xi[0]), 1e-9));
  return g;
}

CheckGroup check_correlator_invariants(const Fixtures& fx) {
  CheckGroup g{"I5", "correlator invariants", {}};
  const double scale = fx.scale();

  const CorrelationRecord fwd =
      qm_two_time_correlation(fx.coherent1, fx.potential, 0.7 / fx.params.omega,
                              0.2 / fx.params.omega, fx.dt, fx.params.hbar,
                              fx.params.mass);
  const CorrelationRecord rev =
      qm_two_time_correlation(fx.coherent1, fx.potential, 0.2 / fx.params.omega,
                              0.7 / fx.params.omega, fx.dt, fx.params.hbar,
                              fx.params.mass);
  g.items.push_back(item("hermitian symmetry <q(s)q(t)> = conj <q(t)q(s)>",
                         std::abs(fwd.value - std::conj(rev.value)), 1e-6));

  TrajectoryEnsemble ens = sample_initial_positions(
      fx.ground, 256, SamplingScheme::quantile, 0, fx.ground_spec);
  integrate_trajectories(ens, fx.ground, fx.potential, 0.25 * fx.period,
                         fx.dt, fx.params.hbar, fx.params.mass);
  const CorrelationRecord bohm =
      bohm_two_time_correlation(ens, 0.25 * fx.period, 0.1 * fx.period);
  g.items.push_back(item("trajectory correlations are exactly real",
                         std::abs(bohm.value.imag()), 0.0));

  double worst_shape = 0.0;
  for (const double tau : fx.cfg.lags()) {
    const CorrelationRecord rec =
        qm_symmetrized_correlation(fx.ground, fx.potential, tau, 0.0, fx.dt,
                                   fx.params.hbar, fx.params.mass);
    worst_shape = std::max(
        worst_shape, std::abs(rec.symmetrized -
                              scale * std::cos(fx.params.omega * tau)));
  }
  g.items.push_back(item("symmetrized correlation follows cos(omega tau)",
                         worst_shape, 1e-4 * scale));

  for (const double frac : {0.125, 0.25}) {
    const double s = frac * fx.period;
    const CorrelationRecord rec =
        qm_two_time_correlation(fx.ground, fx.potential, s, 0.0, fx.dt,
                                fx.params.hbar, fx.params.mass);
    const auto [re, im] = complex_expectation_decomposition(
        rec, fx.ground, fx.potential, s, 0.0, fx.dt, fx.params.hbar,
        fx.params.mass);
    const double ws = fx.params.omega * s;
    const double err = std::hypot(re - 0.5 * scale * std::cos(ws),
                                  im + 0.5 * scale * std::sin(ws));
    g.items.push_back(item("decomposition at lag " + format_double(frac) +
                               " T vs (cos, -sin)/2",
                           err, 1e-4 * scale));
  }
  const CorrelationRecord equal =
      qm_two_time_correlation(fx.ground, fx.potential, 0.3 / fx.params.omega,
                              0.3 / fx.params.omega, fx.dt, fx.params.hbar,
                              fx.params.mass);
  const auto [re_eq, im_eq] = complex_expectation_decomposition(
      equal, fx.ground, fx.potential, 0.3 / fx.params.omega,
      0.3 / fx.params.omega, fx.dt, fx.params.hbar, fx.params.mass);
  (void)re_eq;
  g.items.push_back(item("equal-time imaginary part", std::abs(im_eq), 1e-6));
  return g;
}

CheckGroup check_fock_invariants(const Fixtures& fx) {
  CheckGroup g{"I6", "truncated-basis invariants", {}};
  const int n = 16;
  const FockOperators ops = FockOperators::build(n, fx.params);

  const CMatrix commutator = ops.q * ops.p - ops.p * ops.q;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      complex expected{0.0, 0.0};
      if (i == j) {
        expected = complex{0.0, i == n - 1 ? fx.params.hbar * (1.0 - n)
                                           : fx.params.hbar};
      }
      worst = std::max(worst, std::abs(commutator(i, j) - expected));
    }
  }
  g.items.push_back(item("[q, p] truncation structure", worst, 1e-12));

  const std::vector<complex> ground16 =
      fock_state_coefficients(fx.ground_spec, 16);
  const std::vector<complex> ground32 =
      fock_state_coefficients(fx.ground_spec, 32);
  const FockOperators ops32 = FockOperators::build(32, fx.params);
  const double tau = 0.37 * fx.period;
  const complex c16 = oracle_two_time_correlation(ground16, tau, 0.0, ops);
  const complex c32 = oracle_two_time_correlation(ground32, tau, 0.0, ops32);
  g.items.push_back(item("ground-state correlation stable under N doubling",
                         std::abs(c16 - c32), 1e-14));

  const CMatrix qt = heisenberg_operator(HeisenbergObservable::position,
                                         0.77 / fx.params.omega, ops);
  g.items.push_back(item("Heisenberg conjugation preserves hermiticity",
                         qt.max_abs_diff(qt.adjoint()), 1e-12));
  double worst_trace = 0.0;
  CMatrix power_t = qt;
  CMatrix power_0 = ops.q;
  for (int k = 2; k <= 4; ++k) {
    power_t = power_t * qt;
    power_0 = power_0 * ops.q;
    const double diff = std::abs(power_t.trace() - power_0.trace());
    worst_trace = std::max(
        worst_trace, diff / (1.0 + std::abs(power_0.trace())));
  }
  g.items.push_back(item("Heisenberg conjugation preserves trace moments",
                         worst_trace, 1e-12));
  return g;
}

}  // namespace

std::vector<CheckGroup> acceptance_checks(const RunConfig& config) {
  config.validate();
  const Fixtures fx(config);
  return {
      check_ground_state_stillness(fx), check_sign_contradiction(fx),
      check_complex_correlation_law(fx), check_single_time_agreement(fx),
      check_equivariance(fx),           check_kinetic_identity(fx),
      check_heisenberg_ambiguity(fx),   check_heisenberg_closed_form(fx),
      check_numerics_hygiene(fx),
  };
}

std::vector<CheckGroup> invariant_checks(const RunConfig& config) {
  config.validate();
  const Fixtures fx(config);
  return {
      check_grid_invariants(fx),       check_state_invariants(fx),
      check_evolution_invariants(fx),  check_bohm_invariants(fx),
      check_correlator_invariants(fx), check_fock_invariants(fx),
  };
}

}  // namespace pwc
