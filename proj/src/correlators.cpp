#include "pwc/correlators.hpp"

#include <algorithm>
#include <cmath>

#include "pwc/evolution.hpp"
#include "pwc/parallel.hpp"

namespace pwc {

const char* correlation_method_name(CorrelationMethod method) {
  switch (method) {
    case CorrelationMethod::grid_qm: return "grid_qm";
    case CorrelationMethod::fock_qm: return "fock_qm";
    case CorrelationMethod::bohm: return "bohm";
    case CorrelationMethod::analytic: return "analytic";
  }
  return "unknown";
}

CorrelationRecord qm_two_time_correlation(const Wavefunction& psi0,
                                          const RealField& potential, double s,
                                          double t, double dt, double hbar,
                                          double mass) {
  const Wavefunction psi_t =
      evolve_by(psi0, potential, t - psi0.time, dt, hbar, mass);
  Wavefunction carried =
      apply_operator(OperatorKind::position, psi_t, nullptr, hbar, mass);
  carried = evolve_by(carried, potential, s - t, dt, hbar, mass);

  const Wavefunction psi_s =
      evolve_by(psi0, potential, s - psi0.time, dt, hbar, mass);
  const Wavefunction q_psi_s =
      apply_operator(OperatorKind::position, psi_s, nullptr, hbar, mass);

  CorrelationRecord record;
  record.s = s;
  record.t = t;
  record.value = inner_product(q_psi_s, carried);
  record.symmetrized = 2.0 * record.value.real();
  record.method = CorrelationMethod::grid_qm;
  return record;
}

CorrelationRecord qm_symmetrized_correlation(const Wavefunction& psi0,
                                             const RealField& potential,
                                             double s, double t, double dt,
                                             double hbar, double mass) {
  return qm_two_time_correlation(psi0, potential, s, t, dt, hbar, mass);
}

CorrelationRecord bohm_two_time_correlation(const TrajectoryEnsemble& ensemble,
                                            double s, double t) {
  const std::vector<double> xs = ensemble.positions_at(s);
  const std::vector<double> xt = ensemble.positions_at(t);
  double sum = 0.0;
  for (int j = 0; j < ensemble.size(); ++j) {
    sum += ensemble.weights[j] * xs[j] * xt[j];
  }
  CorrelationRecord record;
  record.s = s;
  record.t = t;
  record.value = complex{sum, 0.0};
  record.symmetrized = 2.0 * sum;
  record.method = CorrelationMethod::bohm;
  return record;
}

std::pair<double, double> complex_expectation_decomposition(
    const CorrelationRecord& record, const Wavefunction& psi0,
    const RealField& potential, double s, double t, double dt, double hbar,
    double mass) {
  // <Re f> = <q(s)q(t) + q(t)q(s)>/2 and <Im f> = <q(s)q(t) - q(t)q(s)>/2i,
  // both Hermitian, realized through the two orderings.
  const CorrelationRecord forward =
      qm_two_time_correlation(psi0, potential, s, t, dt, hbar, mass);
  const CorrelationRecord reversed =
      qm_two_time_correlation(psi0, potential, t, s, dt, hbar, mass);
  const double re_part = 0.5 * (forward.value + reversed.value).real();
  const double im_part = 0.5 * (forward.value - reversed.value).imag();

  const complex recombined{re_part, im_part};
  if (std::abs(recombined - record.value) > 1e-6) {
    raise(ErrorCode::consistency,
          "decomposition disagrees with the record: |delta| = " +
              format_double(std::abs(recombined - record.value)));
  }
  return {re_part, im_part};
}

double heisenberg_local_expectation(double xi, double s,
                                    const OscillatorParams& params) {
  params.validate();
  return xi * std::cos(params.omega * s);
}

const char* sign_flag_name(SignFlag flag) {
  switch (flag) {
    case SignFlag::agree: return "AGREE";
    case SignFlag::contradiction: return "CONTRADICTION";
    case SignFlag::inconclusive: return "INCONCLUSIVE";
  }
  return "unknown";
}

const ContradictionRow* ContradictionReport::row_at(double tau) const {
  const double scale = std::max(1.0, std::abs(tau));
  for (const ContradictionRow& row : rows) {
    if (std::abs(row.tau - tau) <= 1e-9 * scale) return &row;
  }
  return nullptr;
}

ContradictionReport correlation_table(const OscillatorParams& params,
                                      const Grid& grid, const StateSpec& state,
                                      const std::vector<double>& lags,
                                      double dt, int ensemble_n,
                                      int fock_dimension) {
  params.validate();
  const Wavefunction psi0 = build_state(state, params, grid);
  const RealField potential = oscillator_potential(params, grid);

  const FockOperators ops = FockOperators::build(fock_dimension, params);
  const std::vector<complex> coeffs =
      fock_state_coefficients(state, fock_dimension);

  const double max_lag =
      lags.empty() ? 0.0 : *std::max_element(lags.begin(), lags.end());
  TrajectoryEnsemble ensemble = sample_initial_positions(
      psi0, ensemble_n, SamplingScheme::quantile, 0, state);
  if (max_lag > 0.0) {
    integrate_trajectories(ensemble, psi0, potential, max_lag, dt, params.hbar,
                           params.mass);
  }

  // Sign calls need the correlation scale 2<q^2> = hbar/(m omega).
  const double scale = params.hbar / (params.mass * params.omega);
  const double noise = 0.01 * scale;

  ContradictionReport report;
  report.params = params;
  report.grid = grid;
  report.state = state;
  report.dt = dt;
  report.ensemble_size = ensemble_n;
  report.rows.resize(lags.size());

  parallel_for(static_cast<int>(lags.size()), [&](int i) {
    const double tau = lags[i];
    ContradictionRow row;
    row.tau = tau;
    const CorrelationRecord qm = qm_two_time_correlation(
        psi0, potential, tau, 0.0, dt, params.hbar, params.mass);
    row.qm = qm.value;
    row.qm_symmetrized = qm.symmetrized;
    row.fock = oracle_two_time_correlation(coeffs, tau, 0.0, ops);
    row.bohm_symmetrized =
        bohm_two_time_correlation(ensemble, tau, 0.0).symmetrized;

    if (std::abs(row.qm_symmetrized) <= noise ||
        std::abs(row.bohm_symmetrized) <= noise) {
      row.flag = SignFlag::inconclusive;
    } else if (row.qm_symmetrized * row.bohm_symmetrized < 0.0) {
      row.flag = SignFlag::contradiction;
    } else {
      row.flag = SignFlag::agree;
    }
    report.rows[i] = row;
  });
  return report;
}

ContradictionReport contradiction_report(const OscillatorParams& params,
                                         const Grid& grid,
                                         const std::vector<double>& lags,
                                         double dt, int ensemble_n,
                                         int fock_dimension) {
  return correlation_table(params, grid, StateSpec::eigenstate(0), lags, dt,
                           ensemble_n, fock_dimension);
}

}  // namespace pwc
