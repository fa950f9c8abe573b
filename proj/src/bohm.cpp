#include "pwc/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwc/evolution.hpp"
#include "pwc/parallel.hpp"

namespace pwc {

namespace {

constexpr double kNodeFraction = 1e-12;  // of the density peak

double density_peak(const std::vector<double>& p) {
  return *std::max_element(p.begin(), p.end());
}

// Fills entries flagged invalid by linear interpolation from the nearest
// valid neighbors; constant extrapolation past the outermost valid points.
bool fill_invalid(std::vector<double>& v, const std::vector<bool>& valid) {
  const int n = static_cast<int>(v.size());
  bool any_invalid = false;
  int prev = -1;
  for (int k = 0; k < n; ++k) {
    if (valid[k]) {
      if (prev != k - 1) {
        any_invalid = true;
        for (int j = prev + 1; j < k; ++j) {
          if (prev < 0) {
            v[j] = v[k];
          } else {
            const double t = static_cast<double>(j - prev) / (k - prev);
            v[j] = (1.0 - t) * v[prev] + t * v[k];
          }
        }
      }
      prev = k;
    }
  }
  if (prev < 0) return true;  // nothing valid; leave as-is
  for (int j = prev + 1; j < n; ++j) {
    any_invalid = true;
    v[j] = v[prev];
  }
  return any_invalid;
}

}  // namespace

VelocityField velocity_field(const Wavefunction& psi, double hbar,
                             double mass) {
  const RealField p = probability_density(psi);
  const RealField j = probability_current(psi, hbar, mass);
  const double threshold = kNodeFraction * density_peak(p.values);

  VelocityField v;
  v.grid = psi.grid;
  v.time = psi.time;
  v.values.resize(psi.grid.n_points);
  std::vector<bool> valid(psi.grid.n_points);
  for (int k = 0; k < psi.grid.n_points; ++k) {
    valid[k] = p.values[k] > threshold;
    v.values[k] = valid[k] ? j.values[k] / p.values[k] : 0.0;
  }
  v.node_filled = fill_invalid(v.values, valid);
  return v;
}

bool PhaseField::fully_reliable() const {
  return std::all_of(reliable.begin(), reliable.end(),
                     [](bool b) { return b; });
}

PhaseField phase_field(const Wavefunction& psi, double hbar) {
  const int n = psi.grid.n_points;
  const RealField p = probability_density(psi);
  const double threshold = kNodeFraction * density_peak(p.values);
  const int start = static_cast<int>(
      std::max_element(p.values.begin(), p.values.end()) - p.values.begin());

  PhaseField out;
  out.field = RealField::zero(psi.grid, psi.time);
  out.reliable.assign(n, true);

  auto raw_angle = [&](int k) { return std::arg(psi.amplitudes[k]); };
  auto unwrap_step = [](double prev, double raw) {
    double delta = raw - std::remainder(prev, 2.0 * std::numbers::pi);
    delta = std::remainder(delta, 2.0 * std::numbers::pi);
    return prev + delta;
  };

  out.field.values[start] = raw_angle(start);
  bool ok = true;
  for (int k = start + 1; k < n; ++k) {
    if (p.values[k] <= threshold) ok = false;
    out.field.values[k] = unwrap_step(out.field.values[k - 1], raw_angle(k));
    out.reliable[k] = ok;
  }
  ok = true;
  for (int k = start - 1; k >= 0; --k) {
    if (p.values[k] <= threshold) ok = false;
    out.field.values[k] = unwrap_step(out.field.values[k + 1], raw_angle(k));
    out.reliable[k] = ok;
  }
  for (double& s : out.field.values) s *= hbar;
  return out;
}

RealField quantum_potential(const Wavefunction& psi, double hbar,
                            double mass) {
  const int n = psi.grid.n_points;
  RealField modulus = RealField::zero(psi.grid, psi.time);
  for (int k = 0; k < n; ++k) {
    modulus.values[k] = std::abs(psi.amplitudes[k]);
  }
  const RealField lap = spectral_laplacian(modulus);
  const RealField p = probability_density(psi);
  const double threshold = kNodeFraction * density_peak(p.values);

  RealField q = RealField::zero(psi.grid, psi.time);
  std::vector<bool> valid(n);
  const double c = -hbar * hbar / (2.0 * mass);
  for (int k = 0; k < n; ++k) {
    valid[k] = p.values[k] > threshold;
    q.values[k] = valid[k] ? c * lap.values[k] / modulus.values[k] : 0.0;
  }
  fill_invalid(q.values, valid);
  return q;
}

std::vector<double> TrajectoryEnsemble::positions_at(double t) const {
  if (times.empty()) raise(ErrorCode::horizon, "ensemble has no samples");
  const double t0 = times.front();
  const double t1 = times.back();
  const double slack = 1e-9 * std::max(1.0, std::abs(t1));
  if (t < t0 - slack || t > t1 + slack) {
    raise(ErrorCode::horizon,
          "time " + format_double(t) + " outside the integrated range [" +
              format_double(t0) + ", " + format_double(t1) + "]");
  }
  const double tc = std::clamp(t, t0, t1);
  const auto upper = std::upper_bound(times.begin(), times.end(), tc);
  const int hi = std::min<int>(static_cast<int>(upper - times.begin()),
                               static_cast<int>(times.size()) - 1);
  const int lo = std::max(0, hi - 1);
  if (lo == hi || times[hi] == times[lo]) return frames[lo];

  const double w = (tc - times[lo]) / (times[hi] - times[lo]);
  std::vector<double> out(xi.size());
  for (size_t j = 0; j < xi.size(); ++j) {
    out[j] = (1.0 - w) * frames[lo][j] + w * frames[hi][j];
  }
  return out;
}

double TrajectoryEnsemble::position_at(int particle, double t) const {
  const std::vector<double> xs = positions_at(t);
  return xs.at(particle);
}

namespace {

// Deterministic 64-bit generator (splitmix64); uniform doubles built
// explicitly from the high bits so streams are identical everywhere.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

// Inverse CDF of |psi0|^2 using the rectangle-rule cumulative over the
// cells [x_k - dx/2, x_k + dx/2).
struct GridCdf {
  const Grid grid;
  std::vector<double> cumulative;  // cumulative[k] = mass of cells 0..k-1

  explicit GridCdf(const Wavefunction& psi) : grid(psi.grid) {
    const RealField p = probability_density(psi);
    cumulative.resize(grid.n_points + 1);
    cumulative[0] = 0.0;
    for (int k = 0; k < grid.n_points; ++k) {
      cumulative[k + 1] = cumulative[k] + p.values[k] * grid.dx;
    }
    const double total = cumulative.back();
    if (!(total > 0.0)) raise(ErrorCode::domain, "state has no density");
    for (double& c : cumulative) c /= total;
  }

  double invert(double u) const {
    const auto it =
        std::lower_bound(cumulative.begin() + 1, cumulative.end(), u);
    const int k = static_cast<int>(it - cumulative.begin()) - 1;
    const double mass = cumulative[k + 1] - cumulative[k];
    const double frac = mass > 0.0 ? (u - cumulative[k]) / mass : 0.5;
    return grid.point(k) - 0.5 * grid.dx + frac * grid.dx;
  }
};

}  // namespace

TrajectoryEnsemble sample_initial_positions(
    const Wavefunction& psi0, int n, SamplingScheme scheme, std::uint64_t seed,
    std::optional<StateSpec> source_state) {
  if (n < 1) raise(ErrorCode::config, "ensemble needs at least one particle");
  const GridCdf cdf(psi0);

  TrajectoryEnsemble ens;
  ens.scheme = scheme;
  ens.seed = seed;
  ens.source_state = std::move(source_state);
  ens.xi.resize(n);
  ens.weights.assign(n, 1.0 / n);

  if (scheme == SamplingScheme::quantile) {
    for (int j = 0; j < n; ++j) {
      ens.xi[j] = cdf.invert((j + 0.5) / n);
    }
  } else {
    SplitMix64 rng{seed};
    for (int j = 0; j < n; ++j) {
      ens.xi[j] = cdf.invert(rng.uniform01());
    }
  }
  ens.times = {psi0.time};
  ens.frames = {ens.xi};
  return ens;
}

double cubic_interpolate(const std::vector<double>& values, const Grid& grid,
                         double x) {
  const int n = grid.n_points;
  const double s = (x - grid.x_min) / grid.dx;
  int i = static_cast<int>(std::floor(s));
  i = std::clamp(i, 0, n - 1);
  const double t = s - i;
  auto at = [&](int k) { return values[std::clamp(k, 0, n - 1)]; };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  return p1 + 0.5 * t *
                  (p2 - p0 +
                   t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                        t * (3.0 * (p1 - p2) + p3 - p0)));
}

void integrate_trajectories(TrajectoryEnsemble& ensemble,
                            const Wavefunction& psi0,
                            const RealField& potential, double t_final,
                            double dt, double hbar, double mass) {
  if (!(t_final > 0.0)) raise(ErrorCode::config, "t_final must be positive");
  if (!(dt > 0.0)) raise(ErrorCode::config, "dt must be positive");
  if (ensemble.times.size() > 1) {
    raise(ErrorCode::config, "ensemble is already integrated");
  }
  const long n_steps = std::max(1L, std::lround(t_final / dt));
  const double step = t_final / static_cast<double>(n_steps);
  const int n_particles = ensemble.size();
  const Grid& grid = psi0.grid;

  ensemble.times.reserve(n_steps + 1);
  ensemble.frames.reserve(n_steps + 1);

  Wavefunction psi = psi0;
  VelocityField v_now = velocity_field(psi, hbar, mass);
  std::vector<double> current = ensemble.frames.front();

  for (long k = 0; k < n_steps; ++k) {
    const Wavefunction psi_next = evolve(psi, potential, step, 1, hbar, mass);
    const VelocityField v_next = velocity_field(psi_next, hbar, mass);

    std::vector<double> moved(n_particles);
    parallel_for(n_particles, [&](int j) {
      auto velocity = [&](double x, double theta) {
        const double a = cubic_interpolate(v_now.values, grid, x);
        const double b = cubic_interpolate(v_next.values, grid, x);
        return (1.0 - theta) * a + theta * b;
      };
      const double x0 = current[j];
      const double k1 = velocity(x0, 0.0);
      const double k2 = velocity(x0 + 0.5 * step * k1, 0.5);
      const double k3 = velocity(x0 + 0.5 * step * k2, 0.5);
      const double k4 = velocity(x0 + step * k3, 1.0);
      const double x1 = x0 + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (x1 < grid.x_min || x1 > grid.x_max) {
        raise(ErrorCode::domain,
              "particle " + std::to_string(j) + " left the domain at t = " +
                  format_double(psi.time + step));
      }
      moved[j] = x1;
    });

    current = moved;
    ensemble.times.push_back(psi_next.time);
    ensemble.frames.push_back(std::move(moved));
    psi = psi_next;
    v_now = v_next;
  }
}

LocalOperator LocalOperator::position(const OscillatorParams& p) {
  return LocalOperator{LocalKind::position, p, nullptr, 0.0};
}
LocalOperator LocalOperator::momentum(const OscillatorParams& p) {
  return LocalOperator{LocalKind::momentum, p, nullptr, 0.0};
}
LocalOperator LocalOperator::kinetic(const OscillatorParams& p) {
  return LocalOperator{LocalKind::kinetic, p, nullptr, 0.0};
}
LocalOperator LocalOperator::hamiltonian(const OscillatorParams& p,
                                         const RealField& potential) {
  return LocalOperator{LocalKind::hamiltonian, p, &potential, 0.0};
}
LocalOperator LocalOperator::heisenberg_q(const OscillatorParams& p,
                                          double s) {
  return LocalOperator{LocalKind::heisenberg_q, p, nullptr, s};
}

Wavefunction apply_local_operator(const LocalOperator& op,
                                  const Wavefunction& psi) {
  const double hbar = op.params.hbar;
  const double mass = op.params.mass;
  switch (op.kind) {
    case LocalKind::position:
      return apply_operator(OperatorKind::position, psi, nullptr, hbar, mass);
    case LocalKind::momentum:
      return apply_operator(OperatorKind::momentum, psi, nullptr, hbar, mass);
    case LocalKind::kinetic:
      return apply_operator(OperatorKind::kinetic, psi, nullptr, hbar, mass);
    case LocalKind::hamiltonian:
      if (op.potential == nullptr) {
        raise(ErrorCode::config, "hamiltonian kind needs a potential");
      }
      return apply_operator(OperatorKind::hamiltonian, psi, op.potential, hbar,
                            mass);
    case LocalKind::heisenberg_q: {
      // q(s) = q cos(omega s) + p sin(omega s)/(omega m); the recipe is
      // linear, so the local value is the same combination of local values.
      const double ws = op.params.omega * op.heisenberg_time;
      Wavefunction qpsi =
          apply_operator(OperatorKind::position, psi, nullptr, hbar, mass);
      const Wavefunction ppsi =
          apply_operator(OperatorKind::momentum, psi, nullptr, hbar, mass);
      const double cq = std::cos(ws);
      const double cp = std::sin(ws) / (op.params.omega * mass);
      for (int k = 0; k < psi.grid.n_points; ++k) {
        qpsi.amplitudes[k] = cq * qpsi.amplitudes[k] + cp * ppsi.amplitudes[k];
      }
      return qpsi;
    }
  }
  raise(ErrorCode::internal, "unknown local operator kind");
}

namespace {

double local_ratio(const SpectralEvaluator& a_psi,
                   const SpectralEvaluator& psi, double node_threshold,
                   double x, const char* what) {
  const complex denom = psi(x);
  if (std::norm(denom) <= node_threshold) {
    raise(ErrorCode::node, std::string(what) + " at x = " + format_double(x) +
                               " hits a wavefunction node");
  }
  return (a_psi(x) / denom).real();
}

}  // namespace

double local_expectation(const LocalOperator& op, const Wavefunction& psi,
                         double x) {
  if (op.kind == LocalKind::position) return x;  // f(q) acts classically
  const Wavefunction a_psi = apply_local_operator(op, psi);
  const RealField p = probability_density(psi);
  const double threshold = kNodeFraction * density_peak(p.values);
  const SpectralEvaluator eval_a(a_psi);
  const SpectralEvaluator eval_psi(psi);
  return local_ratio(eval_a, eval_psi, threshold, x, "local expectation");
}

double bohm_expectation(const LocalOperator& op,
                        const TrajectoryEnsemble& ensemble,
                        const Wavefunction& psi_at_t, double t) {
  if (std::abs(psi_at_t.time - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    raise(ErrorCode::config,
          "psi_at_t carries timestamp " + format_double(psi_at_t.time) +
              " but the ensemble average is requested at t = " +
              format_double(t));
  }
  const std::vector<double> xs = ensemble.positions_at(t);
  const int n = ensemble.size();

  if (op.kind == LocalKind::position) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += ensemble.weights[j] * xs[j];
    return sum;
  }

  const Wavefunction a_psi = apply_local_operator(op, psi_at_t);
  const RealField p = probability_density(psi_at_t);
  const double threshold = kNodeFraction * density_peak(p.values);
  const SpectralEvaluator eval_a(a_psi);
  const SpectralEvaluator eval_psi(psi_at_t);

  std::vector<double> local(n);
  parallel_for(n, [&](int j) {
    const complex denom = eval_psi(xs[j]);
    if (std::norm(denom) <= threshold) {
      raise(ErrorCode::node, "particle " + std::to_string(j) +
                                 " sits at a wavefunction node (x = " +
                                 format_double(xs[j]) + ")");
    }
    local[j] = (eval_a(xs[j]) / denom).real();
  });

  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += ensemble.weights[j] * local[j];
  return sum;
}

}  // namespace pwc
