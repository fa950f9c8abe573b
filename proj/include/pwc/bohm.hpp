#ifndef PWC_BOHM_HPP
#define PWC_BOHM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

namespace pwc {

/// Guiding velocity J/P. Grid points where P falls below the node threshold
/// (1e-12 of the density peak) are filled from the nearest valid neighbors;
/// node_filled records whether that happened.
struct VelocityField {
  Grid grid;
  std::vector<double> values;
  double time = 0.0;
  bool node_filled = false;
};

VelocityField velocity_field(const Wavefunction& psi, double hbar,
                             double mass);

/// hbar * arg(psi), unwrapped along the grid starting from the density
/// maximum. Diagnostic only; trajectories never use it. reliable[k] is false
/// where the unwrap had to cross a node.
struct PhaseField {
  RealField field;
  std::vector<bool> reliable;
  bool fully_reliable() const;
};

PhaseField phase_field(const Wavefunction& psi, double hbar);

/// Quantum potential -(hbar^2/2m) lap|psi| / |psi|, node points filled by
/// neighbor interpolation.
RealField quantum_potential(const Wavefunction& psi, double hbar, double mass);

enum class SamplingScheme { quantile, random };

/// Bohmian ensemble: shared sample times plus one position row per recorded
/// time (frame f holds every particle's position at times[f]). Weights sum
/// to one; frame 0 is the initial positions.
struct TrajectoryEnsemble {
  std::vector<double> xi;
  std::vector<double> weights;
  std::vector<double> times;
  std::vector<std::vector<double>> frames;
  SamplingScheme scheme = SamplingScheme::quantile;
  std::uint64_t seed = 0;
  std::optional<StateSpec> source_state;

  int size() const { return static_cast<int>(xi.size()); }
  double horizon() const { return times.empty() ? 0.0 : times.back(); }

  /// Positions at time t, linearly interpolated between recorded frames.
  std::vector<double> positions_at(double t) const;
  double position_at(int particle, double t) const;
};

/// Draws n initial positions from |psi0|^2: quantile scheme puts them at the
/// (k+1/2)/n levels of the numerically integrated CDF, random draws i.i.d.
/// from a seeded generator (bit-stable across runs).
TrajectoryEnsemble sample_initial_positions(
    const Wavefunction& psi0, int n, SamplingScheme scheme,
    std::uint64_t seed = 0,
    std::optional<StateSpec> source_state = std::nullopt);

/// Co-evolves psi with the split-operator stepper and advances every
/// particle with RK4 through the time-dependent velocity field (cubic in
/// space, linear in time between bracketing snapshots). Records every step.
void integrate_trajectories(TrajectoryEnsemble& ensemble,
                            const Wavefunction& psi0,
                            const RealField& potential, double t_final,
                            double dt, double hbar, double mass);

enum class LocalKind { position, momentum, kinetic, hamiltonian, heisenberg_q };

/// One observable for local (per-position) expectation values. hamiltonian
/// requires the potential; heisenberg_q is q cos(omega s) + p sin(omega s) /
/// (omega m) at Heisenberg time s.
struct LocalOperator {
  LocalKind kind = LocalKind::position;
  OscillatorParams params;
  const RealField* potential = nullptr;
  double heisenberg_time = 0.0;

  static LocalOperator position(const OscillatorParams& p);
  static LocalOperator momentum(const OscillatorParams& p);
  static LocalOperator kinetic(const OscillatorParams& p);
  static LocalOperator hamiltonian(const OscillatorParams& p,
                                   const RealField& potential);
  static LocalOperator heisenberg_q(const OscillatorParams& p, double s);
};

/// The grid field A psi for a local operator.
Wavefunction apply_local_operator(const LocalOperator& op,
                                  const Wavefunction& psi);

/// Re[(A psi)(x) / psi(x)], both fields evaluated spectrally at x.
/// Errors at wavefunction nodes.
double local_expectation(const LocalOperator& op, const Wavefunction& psi,
                         double x);

/// Ensemble average of the local expectation values at time t. psi_at_t must
/// carry timestamp t (the caller evolves it).
double bohm_expectation(const LocalOperator& op,
                        const TrajectoryEnsemble& ensemble,
                        const Wavefunction& psi_at_t, double t);

/// Cubic (Catmull-Rom) interpolation of a grid field at x, clamped ends.
double cubic_interpolate(const std::vector<double>& values, const Grid& grid,
                         double x);

}  // namespace pwc

#endif
