#ifndef PWC_OSCILLATOR_HPP
#define PWC_OSCILLATOR_HPP

#include <string>
#include <vector>

#include "pwc/grid.hpp"

namespace pwc {

/// Harmonic oscillator parameters. The period is derived from omega on
/// access, never stored independently.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  double period() const;
  double energy_level(int n) const;  // hbar * omega * (n + 1/2)
  void validate() const;             // all three strictly positive
};

/// Which state to build: an energy eigenstate, a coherent state, or a
/// finite superposition of eigenstates (coefficients indexed from n = 0).
struct StateSpec {
  enum class Kind { eigenstate, coherent, superposition };

  Kind kind = Kind::eigenstate;
  int level = 0;
  complex alpha{0.0, 0.0};
  std::vector<complex> coefficients;

  static StateSpec eigenstate(int n);
  static StateSpec coherent(complex alpha);
  static StateSpec superposition(std::vector<complex> coefficients);

  /// Parses "eigenstate:0", "coherent:1.0+0.0i", "superposition:[c0,c1,...]".
  static StateSpec parse(const std::string& text);
  std::string to_string() const;

  void validate() const;
};

/// V(x) = omega^2 m x^2 / 2 sampled on the grid.
RealField oscillator_potential(const OscillatorParams& params,
                               const Grid& grid);

/// Normalized Hermite function of order n at timestamp 0. Errors if the
/// state does not decay below 1e-12 at the domain edges.
Wavefunction eigenstate(int n, const OscillatorParams& params,
                        const Grid& grid);

Wavefunction build_state(const StateSpec& spec, const OscillatorParams& params,
                         const Grid& grid);

}  // namespace pwc

#endif
