#include "pwc/evolution.hpp"

#include <cmath>

namespace pwc {

Wavefunction evolve(const Wavefunction& psi, const RealField& potential,
                    double dt, long n_steps, double hbar, double mass) {
  if (!(psi.grid == potential.grid)) {
    raise(ErrorCode::shape, "potential grid does not match the state");
  }
  if (dt == 0.0 || !std::isfinite(dt)) {
    raise(ErrorCode::config, "time step must be finite and nonzero");
  }
  if (n_steps < 0) raise(ErrorCode::config, "step count must be >= 0");

  const int n = psi.grid.n_points;
  std::vector<complex> half_kick(n), drift(n);
  for (int k = 0; k < n; ++k) {
    const double phase = -potential.values[k] * dt / (2.0 * hbar);
    half_kick[k] = complex{std::cos(phase), std::sin(phase)};
  }
  const std::vector<double> ks = fft::wavenumbers(psi.grid);
  for (int j = 0; j < n; ++j) {
    const double phase = -hbar * ks[j] * ks[j] * dt / (2.0 * mass);
    drift[j] = complex{std::cos(phase), std::sin(phase)};
  }

  Wavefunction out = psi;
  for (long step = 0; step < n_steps; ++step) {
    for (int k = 0; k < n; ++k) out.amplitudes[k] *= half_kick[k];
    fft::forward(out.amplitudes);
    for (int j = 0; j < n; ++j) out.amplitudes[j] *= drift[j];
    fft::inverse(out.amplitudes);
    for (int k = 0; k < n; ++k) out.amplitudes[k] *= half_kick[k];
  }
  out.time = psi.time + static_cast<double>(n_steps) * dt;
  return out;
}

Wavefunction evolve_by(const Wavefunction& psi, const RealField& potential,
                       double delta_t, double dt_hint, double hbar,
                       double mass) {
  if (delta_t == 0.0) return psi;
  if (!(dt_hint > 0.0)) {
    raise(ErrorCode::config, "dt hint must be positive");
  }
  const long n_steps =
      std::max(1L, std::lround(std::ceil(std::abs(delta_t) / dt_hint - 1e-9)));
  return evolve(psi, potential, delta_t / static_cast<double>(n_steps),
                n_steps, hbar, mass);
}

Wavefunction evolve_eigenstate_analytic(const Wavefunction& psi, double energy,
                                        double t, double hbar,
                                        const RealField* validate_potential,
                                        double mass) {
  if (validate_potential != nullptr) {
    const Wavefunction h_psi = apply_operator(
        OperatorKind::hamiltonian, psi, validate_potential, hbar, mass);
    double sum = 0.0;
    for (int k = 0; k < psi.grid.n_points; ++k) {
      sum += std::norm(h_psi.amplitudes[k] - energy * psi.amplitudes[k]);
    }
    const double residual = std::sqrt(sum * psi.grid.dx);
    if (residual > 1e-5) {
      raise(ErrorCode::eigenrelation,
            "state is not an eigenstate of the given energy: ||H psi - E "
            "psi|| = " +
                format_double(residual));
    }
  }
  const double phase = -t * energy / hbar;
  const complex factor{std::cos(phase), std::sin(phase)};
  Wavefunction out = psi;
  for (complex& a : out.amplitudes) a *= factor;
  out.time = t;
  return out;
}

}  // namespace pwc
