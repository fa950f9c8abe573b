#ifndef PWC_CORRELATORS_HPP
#define PWC_CORRELATORS_HPP

#include <string>
#include <utility>
#include <vector>

#include "pwc/bohm.hpp"
#include "pwc/fock.hpp"
#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

namespace pwc {

enum class CorrelationMethod { grid_qm, fock_qm, bohm, analytic };

const char* correlation_method_name(CorrelationMethod method);

/// One <q(s) q(t)> evaluation. The symmetrized entry is the Hermitian
/// combination <q(s)q(t) + q(t)q(s)>, always real; trajectory products
/// commute, so bohm records carry a real value and symmetrized = 2 value.
struct CorrelationRecord {
  double s = 0.0;
  double t = 0.0;
  complex value{0.0, 0.0};
  double symmetrized = 0.0;
  CorrelationMethod method = CorrelationMethod::grid_qm;
};

/// <psi0| q(s) q(t) |psi0> via evolve-apply-evolve-apply sandwiching:
/// evolve to t, multiply by x, carry the result by s - t (backward runs are
/// fine), evolve psi0 to s, multiply by x, inner product.
CorrelationRecord qm_two_time_correlation(const Wavefunction& psi0,
                                          const RealField& potential, double s,
                                          double t, double dt, double hbar,
                                          double mass);

/// Same data with the symmetrized value as the headline number (computed
/// through the Hermitian-conjugate identity, sym = 2 Re value).
CorrelationRecord qm_symmetrized_correlation(const Wavefunction& psi0,
                                             const RealField& potential,
                                             double s, double t, double dt,
                                             double hbar, double mass);

/// Trajectory correlation sum_j w_j x_j(s) x_j(t); path positions are
/// linearly interpolated between recorded samples.
CorrelationRecord bohm_two_time_correlation(const TrajectoryEnsemble& ensemble,
                                            double s, double t);

/// <Re f> and <Im f> for f = q(s) q(t), realized through the two operator
/// orderings. Cross-checks re + i im against record.value and raises a
/// consistency error beyond 1e-6.
std::pair<double, double> complex_expectation_decomposition(
    const CorrelationRecord& record, const Wavefunction& psi0,
    const RealField& potential, double s, double t, double dt, double hbar,
    double mass);

/// Local expectation value of the Heisenberg operator q(s) for a ground
/// state particle at xi: xi cos(omega s). The generic local-expectation path
/// reproduces this number; the Heisenberg time s changes the "real property"
/// while nothing physical happened to the particle.
double heisenberg_local_expectation(double xi, double s,
                                    const OscillatorParams& params);

enum class SignFlag { agree, contradiction, inconclusive };

const char* sign_flag_name(SignFlag flag);

struct ContradictionRow {
  double tau = 0.0;
  complex qm{0.0, 0.0};
  double qm_symmetrized = 0.0;
  complex fock{0.0, 0.0};
  double bohm_symmetrized = 0.0;
  SignFlag flag = SignFlag::agree;
};

struct ContradictionReport {
  OscillatorParams params;
  Grid grid;
  StateSpec state;
  double dt = 0.0;
  int ensemble_size = 0;
  std::vector<ContradictionRow> rows;

  const ContradictionRow* row_at(double tau) const;
};

/// Comparison table over the requested lags: grid, Fock-basis and trajectory
/// correlations of q(tau) q(0) side by side, with a sign flag per lag.
ContradictionReport correlation_table(const OscillatorParams& params,
                                      const Grid& grid, const StateSpec& state,
                                      const std::vector<double>& lags,
                                      double dt, int ensemble_n,
                                      int fock_dimension = 32);

/// The flagship ground-state table; see correlation_table.
ContradictionReport contradiction_report(const OscillatorParams& params,
                                         const Grid& grid,
                                         const std::vector<double>& lags,
                                         double dt, int ensemble_n,
                                         int fock_dimension = 32);

}  // namespace pwc

#endif
