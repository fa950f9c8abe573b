#include "pwc/fock.hpp"

#include <cmath>

namespace pwc {

CMatrix::CMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
  if (cols_ != other.rows_) raise(ErrorCode::shape, "matrix shape mismatch");
  CMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const complex a = (*this)(i, k);
      if (a == complex{0.0, 0.0}) continue;
      for (int j = 0; j < other.cols_; ++j) {
        out(i, j) += a * other(k, j);
      }
    }
  }
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    raise(ErrorCode::shape, "matrix shape mismatch");
  }
  CMatrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    raise(ErrorCode::shape, "matrix shape mismatch");
  }
  CMatrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

CMatrix CMatrix::scaled(complex factor) const {
  CMatrix out = *this;
  for (complex& v : out.data_) v *= factor;
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

std::vector<complex> CMatrix::apply(std::span<const complex> v) const {
  if (static_cast<int>(v.size()) != cols_) {
    raise(ErrorCode::shape, "vector length does not match the matrix");
  }
  std::vector<complex> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    complex sum{0.0, 0.0};
    for (int j = 0; j < cols_; ++j) sum += (*this)(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

complex CMatrix::trace() const {
  complex sum{0.0, 0.0};
  for (int i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    raise(ErrorCode::shape, "matrix shape mismatch");
  }
  double worst = 0.0;
  for (size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

FockOperators FockOperators::build(int dimension,
                                   const OscillatorParams& params) {
  params.validate();
  if (dimension < 2) {
    raise(ErrorCode::config, "truncated basis needs at least two levels");
  }
  FockOperators ops;
  ops.dimension = dimension;
  ops.params = params;
  ops.q = CMatrix(dimension, dimension);
  ops.p = CMatrix(dimension, dimension);
  ops.h = CMatrix(dimension, dimension);

  // q = sqrt(hbar/2m omega) (a + a^dag), p = i sqrt(hbar m omega / 2)
  // (a^dag - a); ladder element <n+1|a^dag|n> = sqrt(n+1).
  const double qc = std::sqrt(params.hbar / (2.0 * params.mass * params.omega));
  const double pc = std::sqrt(params.hbar * params.mass * params.omega / 2.0);
  for (int n = 0; n + 1 < dimension; ++n) {
    const double ladder = std::sqrt(static_cast<double>(n + 1));
    ops.q(n, n + 1) = qc * ladder;
    ops.q(n + 1, n) = qc * ladder;
    ops.p(n, n + 1) = complex{0.0, -pc * ladder};
    ops.p(n + 1, n) = complex{0.0, pc * ladder};
  }
  for (int n = 0; n < dimension; ++n) ops.h(n, n) = params.energy_level(n);
  return ops;
}

CMatrix heisenberg_operator(HeisenbergObservable which, double t,
                            const FockOperators& ops) {
  const CMatrix& base =
      which == HeisenbergObservable::position ? ops.q : ops.p;
  CMatrix out(ops.dimension, ops.dimension);
  for (int m = 0; m < ops.dimension; ++m) {
    for (int n = 0; n < ops.dimension; ++n) {
      const double phase = (ops.params.energy_level(m) -
                            ops.params.energy_level(n)) *
                           t / ops.params.hbar;
      out(m, n) = base(m, n) * complex{std::cos(phase), std::sin(phase)};
    }
  }
  return out;
}

std::vector<complex> fock_state_coefficients(const StateSpec& spec,
                                             int dimension) {
  spec.validate();
  std::vector<complex> c(dimension, complex{0.0, 0.0});
  switch (spec.kind) {
    case StateSpec::Kind::eigenstate:
      if (spec.level >= dimension) {
        raise(ErrorCode::truncation,
              "eigenstate level exceeds the truncated basis");
      }
      c[spec.level] = 1.0;
      break;
    case StateSpec::Kind::coherent: {
      const double a2 = std::norm(spec.alpha);
      complex amp{std::exp(-0.5 * a2), 0.0};
      double used = 0.0;
      for (int n = 0; n < dimension; ++n) {
        if (1.0 - used < 1e-14) break;
        c[n] = amp;
        used += std::norm(amp);
        amp *= spec.alpha / std::sqrt(static_cast<double>(n + 1));
      }
      break;
    }
    case StateSpec::Kind::superposition:
      if (static_cast<int>(spec.coefficients.size()) > dimension) {
        raise(ErrorCode::truncation,
              "superposition does not fit the truncated basis");
      }
      for (size_t n = 0; n < spec.coefficients.size(); ++n) {
        c[n] = spec.coefficients[n];
      }
      break;
  }
  // Truncation guard: correlations apply q twice, so the top two levels
  // must stay empty.
  if (c[dimension - 1] != complex{0.0, 0.0} ||
      c[dimension - 2] != complex{0.0, 0.0}) {
    raise(ErrorCode::truncation,
          "state occupies the top two levels of the truncated basis");
  }
  return c;
}

complex fock_expectation(const CMatrix& a, std::span<const complex> coeffs) {
  const std::vector<complex> av = a.apply(coeffs);
  complex sum{0.0, 0.0};
  for (size_t i = 0; i < coeffs.size(); ++i) {
    sum += std::conj(coeffs[i]) * av[i];
  }
  return sum;
}

complex oracle_two_time_correlation(std::span<const complex> coeffs, double s,
                                    double t, const FockOperators& ops) {
  if (static_cast<int>(coeffs.size()) != ops.dimension) {
    raise(ErrorCode::shape, "coefficient length does not match the basis");
  }
  if (coeffs[ops.dimension - 1] != complex{0.0, 0.0} ||
      coeffs[ops.dimension - 2] != complex{0.0, 0.0}) {
    raise(ErrorCode::truncation,
          "state occupies the top two levels of the truncated basis");
  }
  const CMatrix qs = heisenberg_operator(HeisenbergObservable::position, s, ops);
  const CMatrix qt = heisenberg_operator(HeisenbergObservable::position, t, ops);
  const std::vector<complex> v1 = qt.apply(coeffs);
  const std::vector<complex> v2 = qs.apply(v1);
  complex sum{0.0, 0.0};
  for (size_t i = 0; i < coeffs.size(); ++i) {
    sum += std::conj(coeffs[i]) * v2[i];
  }
  return sum;
}

}  // namespace pwc
