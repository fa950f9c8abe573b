#ifndef PWC_FOCK_HPP
#define PWC_FOCK_HPP

#include <span>
#include <vector>

#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

namespace pwc {

/// Small dense complex matrix, just enough for the truncated-basis oracle.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);
  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  complex& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const complex& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  CMatrix operator*(const CMatrix& other) const;
  CMatrix operator+(const CMatrix& other) const;
  CMatrix operator-(const CMatrix& other) const;
  CMatrix scaled(complex factor) const;
  CMatrix adjoint() const;

  std::vector<complex> apply(std::span<const complex> v) const;
  complex trace() const;
  double max_abs_diff(const CMatrix& other) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<complex> data_;
};

/// Dense q, p, H in the truncated energy eigenbasis; the brute-force
/// cross-check for everything the grid pipeline computes.
struct FockOperators {
  int dimension = 0;
  OscillatorParams params;
  CMatrix q;
  CMatrix p;
  CMatrix h;

  static FockOperators build(int dimension, const OscillatorParams& params);
};

enum class HeisenbergObservable { position, momentum };

/// e^{iHt/hbar} A e^{-iHt/hbar} by diagonal phase conjugation (exact, since
/// H is diagonal here).
CMatrix heisenberg_operator(HeisenbergObservable which, double t,
                            const FockOperators& ops);

/// Eigenbasis coefficients of a StateSpec, padded/truncated to dimension.
/// Errors if the top two levels would be occupied.
std::vector<complex> fock_state_coefficients(const StateSpec& spec,
                                             int dimension);

/// c^dag A c.
complex fock_expectation(const CMatrix& a, std::span<const complex> coeffs);

/// c^dag q(s) q(t) c with the truncation guard on the top two levels.
complex oracle_two_time_correlation(std::span<const complex> coeffs, double s,
                                    double t, const FockOperators& ops);

}  // namespace pwc

#endif
