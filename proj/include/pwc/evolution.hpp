#ifndef PWC_EVOLUTION_HPP
#define PWC_EVOLUTION_HPP

#include "pwc/grid.hpp"

namespace pwc {

/// Strang split-operator stepper: half potential kick, full kinetic drift in
/// spectral space, half kick. Norm-preserving; negative dt evolves backward.
Wavefunction evolve(const Wavefunction& psi, const RealField& potential,
                    double dt, long n_steps, double hbar, double mass);

/// Evolves by exactly delta_t, choosing the step count so |dt| stays at or
/// below dt_hint. delta_t = 0 returns a copy.
Wavefunction evolve_by(const Wavefunction& psi, const RealField& potential,
                       double delta_t, double dt_hint, double hbar,
                       double mass);

/// Exact phase rotation e^{-i t E / hbar} for eigenstates; timestamp is set
/// to t. When validate_potential is given, checks ||H psi - E psi|| <= 1e-5
/// first and raises an eigenrelation error otherwise.
Wavefunction evolve_eigenstate_analytic(
    const Wavefunction& psi, double energy, double t, double hbar,
    const RealField* validate_potential = nullptr, double mass = 1.0);

}  // namespace pwc

#endif
