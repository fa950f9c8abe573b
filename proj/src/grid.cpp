#include "pwc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <utility>

namespace pwc {

Grid Grid::make(double x_min, double x_max, int n_points) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    raise(ErrorCode::config, "grid bounds must satisfy x_min < x_max");
  }
  if (n_points < 8 || !fft::is_power_of_two(n_points)) {
    raise(ErrorCode::config,
          "grid size must be a power of two >= 8, got " +
              std::to_string(n_points));
  }
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_points = n_points;
  g.dx = (x_max - x_min) / n_points;
  return g;
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_points);
  for (int k = 0; k < n_points; ++k) xs[k] = point(k);
  return xs;
}

Wavefunction Wavefunction::zero(const Grid& grid, double time) {
  Wavefunction psi;
  psi.grid = grid;
  psi.amplitudes.assign(grid.n_points, complex{0.0, 0.0});
  psi.time = time;
  return psi;
}

double Wavefunction::norm() const {
  double sum = 0.0;
  for (const complex& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum * grid.dx);
}

void Wavefunction::normalize() {
  const double n = norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    raise(ErrorCode::domain, "cannot normalize a zero or non-finite field");
  }
  const double scale = 1.0 / n;
  for (complex& a : amplitudes) a *= scale;
}

RealField RealField::zero(const Grid& grid, double time) {
  RealField f;
  f.grid = grid;
  f.values.assign(grid.n_points, 0.0);
  f.time = time;
  return f;
}

namespace fft {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

// Half-size root table e^{-2 pi i k / n}, shared across transforms of the
// same length.
const std::vector<complex>& root_table(int n) {
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<std::vector<complex>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    auto table = std::make_unique<std::vector<complex>>(n / 2);
    for (int k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * k / n;
      (*table)[k] = complex{std::cos(angle), std::sin(angle)};
    }
    slot = std::move(table);
  }
  return *slot;
}

void bit_reverse_permute(std::span<complex> a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

}  // namespace

void forward(std::span<complex> a) {
  const int n = static_cast<int>(a.size());
  if (n <= 1) return;
  if (!is_power_of_two(n)) {
    raise(ErrorCode::config, "transform length must be a power of two");
  }
  const std::vector<complex>& roots = root_table(n);
  bit_reverse_permute(a);
  for (int len = 2; len <= n; len <<= 1) {
    const int stride = n / len;
    for (int block = 0; block < n; block += len) {
      for (int k = 0; k < len / 2; ++k) {
        const complex w = roots[k * stride];
        const complex u = a[block + k];
        const complex v = a[block + k + len / 2] * w;
        a[block + k] = u + v;
        a[block + k + len / 2] = u - v;
      }
    }
  }
}

void inverse(std::span<complex> a) {
  for (complex& x : a) x = std::conj(x);
  forward(a);
  const double scale = 1.0 / static_cast<double>(a.size());
  for (complex& x : a) x = std::conj(x) * scale;
}

std::vector<double> wavenumbers(const Grid& grid) {
  const int n = grid.n_points;
  const double dk = 2.0 * std::numbers::pi / grid.length();
  std::vector<double> ks(n);
  for (int j = 0; j < n; ++j) {
    ks[j] = dk * (j < n / 2 ? j : j - n);
  }
  ks[n / 2] = dk * (n / 2);  // Nyquist; odd-derivative ops zero it themselves
  return ks;
}

}  // namespace fft

SpectralEvaluator::SpectralEvaluator(const Wavefunction& psi)
    : grid_(psi.grid), hat_(psi.amplitudes) {
  fft::forward(hat_);
}

SpectralEvaluator::SpectralEvaluator(const Grid& grid,
                                     std::span<const double> values)
    : grid_(grid), hat_(values.begin(), values.end()) {
  if (static_cast<int>(values.size()) != grid.n_points) {
    raise(ErrorCode::shape, "field length does not match the grid");
  }
  fft::forward(hat_);
}

complex SpectralEvaluator::operator()(double x) const {
  // Two geometric runs over the symmetric wavenumber layout: one exp, then
  // unit-modulus multiplications.
  const int n = grid_.n_points;
  const double dk = 2.0 * std::numbers::pi / grid_.length();
  const double u = x - grid_.x_min;
  const complex step{std::cos(dk * u), std::sin(dk * u)};

  complex sum = hat_[0];
  complex pos{1.0, 0.0};
  const complex neg_step = std::conj(step);
  complex neg = neg_step;
  for (int j = 1; j < n / 2; ++j) {
    pos *= step;
    sum += hat_[j] * pos;
    sum += hat_[n - j] * neg;
    neg *= neg_step;
  }
  sum += hat_[n / 2] * std::cos(dk * (n / 2) * u);
  return sum / static_cast<double>(n);
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) raise(ErrorCode::shape, "grids do not match");
}

Wavefunction multiply_pointwise(const Wavefunction& psi,
                                const std::vector<double>& factor) {
  Wavefunction out = psi;
  for (int k = 0; k < psi.grid.n_points; ++k) out.amplitudes[k] *= factor[k];
  return out;
}

}  // namespace

Wavefunction spectral_derivative(const Wavefunction& psi) {
  Wavefunction out = psi;
  fft::forward(out.amplitudes);
  const std::vector<double> ks = fft::wavenumbers(psi.grid);
  const int n = psi.grid.n_points;
  for (int j = 0; j < n; ++j) {
    const double k = (j == n / 2) ? 0.0 : ks[j];
    out.amplitudes[j] *= complex{0.0, k};
  }
  fft::inverse(out.amplitudes);
  return out;
}

RealField spectral_laplacian(const RealField& field) {
  std::vector<complex> work(field.values.begin(), field.values.end());
  fft::forward(work);
  const std::vector<double> ks = fft::wavenumbers(field.grid);
  for (size_t j = 0; j < work.size(); ++j) work[j] *= -ks[j] * ks[j];
  fft::inverse(work);
  RealField out = field;
  for (size_t j = 0; j < work.size(); ++j) out.values[j] = work[j].real();
  return out;
}

Wavefunction apply_operator(OperatorKind kind, const Wavefunction& psi,
                            const RealField* potential, double hbar,
                            double mass) {
  switch (kind) {
    case OperatorKind::position: {
      Wavefunction out = psi;
      for (int k = 0; k < psi.grid.n_points; ++k) {
        out.amplitudes[k] *= psi.grid.point(k);
      }
      return out;
    }
    case OperatorKind::momentum: {
      Wavefunction out = spectral_derivative(psi);
      const complex factor = hbar / complex{0.0, 1.0};
      for (complex& a : out.amplitudes) a *= factor;
      return out;
    }
    case OperatorKind::kinetic: {
      Wavefunction out = psi;
      fft::forward(out.amplitudes);
      const std::vector<double> ks = fft::wavenumbers(psi.grid);
      const double c = hbar * hbar / (2.0 * mass);
      for (size_t j = 0; j < out.amplitudes.size(); ++j) {
        out.amplitudes[j] *= c * ks[j] * ks[j];
      }
      fft::inverse(out.amplitudes);
      return out;
    }
    case OperatorKind::potential: {
      if (potential == nullptr) {
        raise(ErrorCode::config, "potential operator needs a potential field");
      }
      require_same_grid(psi.grid, potential->grid);
      return multiply_pointwise(psi, potential->values);
    }
    case OperatorKind::hamiltonian: {
      if (potential == nullptr) {
        raise(ErrorCode::config,
              "hamiltonian operator needs a potential field");
      }
      require_same_grid(psi.grid, potential->grid);
      Wavefunction out =
          apply_operator(OperatorKind::kinetic, psi, nullptr, hbar, mass);
      for (int k = 0; k < psi.grid.n_points; ++k) {
        out.amplitudes[k] += potential->values[k] * psi.amplitudes[k];
      }
      return out;
    }
  }
  raise(ErrorCode::internal, "unknown operator kind");
}

complex inner_product(const Wavefunction& phi, const Wavefunction& psi) {
  require_same_grid(phi.grid, psi.grid);
  complex sum{0.0, 0.0};
  for (int k = 0; k < phi.grid.n_points; ++k) {
    sum += std::conj(phi.amplitudes[k]) * psi.amplitudes[k];
  }
  return sum * phi.grid.dx;
}

complex expectation_value(OperatorKind kind, const Wavefunction& psi,
                          const RealField* potential, double hbar,
                          double mass) {
  return inner_product(psi, apply_operator(kind, psi, potential, hbar, mass));
}

RealField probability_density(const Wavefunction& psi) {
  RealField p = RealField::zero(psi.grid, psi.time);
  for (int k = 0; k < psi.grid.n_points; ++k) {
    p.values[k] = std::norm(psi.amplitudes[k]);
  }
  return p;
}

RealField probability_current(const Wavefunction& psi, double hbar,
                              double mass) {
  const Wavefunction dpsi = spectral_derivative(psi);
  RealField j = RealField::zero(psi.grid, psi.time);
  const complex factor = hbar / (complex{0.0, 1.0} * mass);
  for (int k = 0; k < psi.grid.n_points; ++k) {
    j.values[k] =
        (std::conj(psi.amplitudes[k]) * factor * dpsi.amplitudes[k]).real();
  }
  return j;
}

RealField continuity_residual(const Wavefunction& before,
                              const Wavefunction& after, double hbar,
                              double mass) {
  require_same_grid(before.grid, after.grid);
  const double dt = after.time - before.time;
  if (!(dt > 0.0)) {
    raise(ErrorCode::config,
          "continuity residual needs after.time > before.time");
  }
  const RealField p0 = probability_density(before);
  const RealField p1 = probability_density(after);
  const RealField j0 = probability_current(before, hbar, mass);
  const RealField j1 = probability_current(after, hbar, mass);

  RealField mid_current = RealField::zero(before.grid);
  for (int k = 0; k < before.grid.n_points; ++k) {
    mid_current.values[k] = 0.5 * (j0.values[k] + j1.values[k]);
  }
  // Spectral divergence (1D gradient) of the midpoint current.
  std::vector<complex> work(mid_current.values.begin(),
                            mid_current.values.end());
  fft::forward(work);
  const std::vector<double> ks = fft::wavenumbers(before.grid);
  const int n = before.grid.n_points;
  for (int j = 0; j < n; ++j) {
    const double k = (j == n / 2) ? 0.0 : ks[j];
    work[j] *= complex{0.0, k};
  }
  fft::inverse(work);

  RealField residual = RealField::zero(before.grid, before.time + 0.5 * dt);
  for (int k = 0; k < n; ++k) {
    residual.values[k] =
        (p1.values[k] - p0.values[k]) / dt + work[k].real();
  }
  return residual;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string wavefunction_csv(const Wavefunction& psi) {
  std::string out = "x,re,im,p_density\n";
  for (int k = 0; k < psi.grid.n_points; ++k) {
    out += format_double(psi.grid.point(k));
    out += ',';
    out += format_double(psi.amplitudes[k].real());
    out += ',';
    out += format_double(psi.amplitudes[k].imag());
    out += ',';
    out += format_double(std::norm(psi.amplitudes[k]));
    out += '\n';
  }
  return out;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return "config";
    case ErrorCode::shape: return "shape";
    case ErrorCode::domain: return "domain";
    case ErrorCode::node: return "node";
    case ErrorCode::horizon: return "horizon";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::eigenrelation: return "eigenrelation";
    case ErrorCode::io: return "io";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace pwc
