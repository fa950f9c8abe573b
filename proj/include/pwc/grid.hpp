#ifndef PWC_GRID_HPP
#define PWC_GRID_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pwc/error.hpp"

namespace pwc {

using complex = std::complex<double>;

/// Uniform periodic spatial lattice. n_points must be a power of two so the
/// spectral transform applies; dx * n_points reproduces x_max - x_min exactly
/// because dividing by a power of two only shifts the exponent.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
  double dx = 0.0;

  static Grid make(double x_min, double x_max, int n_points);

  double point(int k) const { return x_min + k * dx; }
  double length() const { return x_max - x_min; }
  std::vector<double> points() const;

  bool operator==(const Grid& other) const {
    return x_min == other.x_min && x_max == other.x_max &&
           n_points == other.n_points;
  }
};

/// Complex amplitude field on a grid with a timestamp.
struct Wavefunction {
  Grid grid;
  std::vector<complex> amplitudes;
  double time = 0.0;

  static Wavefunction zero(const Grid& grid, double time = 0.0);

  double norm() const;
  void normalize();  // scales so that norm() == 1 (error on zero field)
};

/// Real-valued field on a grid (densities, currents, potentials, phases).
struct RealField {
  Grid grid;
  std::vector<double> values;
  double time = 0.0;

  static RealField zero(const Grid& grid, double time = 0.0);
};

namespace fft {

bool is_power_of_two(int n);

/// In-place unnormalized forward transform, A_j = sum_k a_k e^{-2 pi i jk/n}.
void forward(std::span<complex> a);

/// In-place inverse transform, includes the 1/n factor.
void inverse(std::span<complex> a);

/// Wavenumbers in the standard symmetric layout: index j maps to
/// 2 pi j / L for j < n/2 and 2 pi (j - n) / L above, Nyquist at j = n/2.
std::vector<double> wavenumbers(const Grid& grid);

}  // namespace fft

/// Trigonometric point evaluation of grid fields; spectrally exact for
/// band-limited data. Build once, evaluate at many off-grid points.
class SpectralEvaluator {
 public:
  explicit SpectralEvaluator(const Wavefunction& psi);
  SpectralEvaluator(const Grid& grid, std::span<const double> values);

  complex operator()(double x) const;

 private:
  Grid grid_;
  std::vector<complex> hat_;  // forward transform of the samples
};

enum class OperatorKind { position, momentum, kinetic, potential, hamiltonian };

/// Applies one primitive operator. Potential/hamiltonian kinds require V;
/// momentum and kinetic differentiate spectrally. Result keeps the input
/// timestamp and is not renormalized.
Wavefunction apply_operator(OperatorKind kind, const Wavefunction& psi,
                            const RealField* potential, double hbar,
                            double mass);

/// Spectral first derivative of the amplitudes.
Wavefunction spectral_derivative(const Wavefunction& psi);

/// Spectral Laplacian of a real field.
RealField spectral_laplacian(const RealField& field);

complex inner_product(const Wavefunction& phi, const Wavefunction& psi);

/// <psi| A |psi> for a primitive operator kind.
complex expectation_value(OperatorKind kind, const Wavefunction& psi,
                          const RealField* potential, double hbar, double mass);

RealField probability_density(const Wavefunction& psi);

/// J = Re[ conj(psi) (hbar / i m) grad psi ].
RealField probability_current(const Wavefunction& psi, double hbar,
                              double mass);

/// (P_after - P_before)/dt + div J at the midpoint field; diagnostic only.
RealField continuity_residual(const Wavefunction& before,
                              const Wavefunction& after, double hbar,
                              double mass);

/// CSV export, header "x,re,im,p_density", 17 significant digits.
std::string wavefunction_csv(const Wavefunction& psi);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

}  // namespace pwc

#endif
