#include "pwc.h"

#include <cstring>
#include <string>

#include "pwc/bohm.hpp"
#include "pwc/config.hpp"
#include "pwc/correlators.hpp"
#include "pwc/evolution.hpp"
#include "pwc/fock.hpp"
#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"
#include "pwc/report.hpp"

using pwc::ErrorCode;

struct pwc_grid {
  pwc::Grid grid;
};

struct pwc_potential {
  pwc::RealField field;
};

struct pwc_state {
  pwc::Wavefunction psi;
  pwc::OscillatorParams params;
  pwc::RealField potential;  // oscillator potential on the state's grid
};

struct pwc_ensemble {
  pwc::TrajectoryEnsemble ensemble;
  pwc::Wavefunction psi0;
  pwc::OscillatorParams params;
  pwc::RealField potential;
};

struct pwc_fock {
  pwc::FockOperators ops;
};

struct pwc_config {
  pwc::RunConfig config;
};

struct pwc_report {
  pwc::RunReport report;
};

namespace {

thread_local std::string g_last_error = "no error";

pwc_status code_to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return PWC_ERROR_CONFIG;
    case ErrorCode::shape: return PWC_ERROR_SHAPE;
    case ErrorCode::domain: return PWC_ERROR_DOMAIN;
    case ErrorCode::node: return PWC_ERROR_NODE;
    case ErrorCode::horizon: return PWC_ERROR_HORIZON;
    case ErrorCode::truncation: return PWC_ERROR_TRUNCATION;
    case ErrorCode::consistency: return PWC_ERROR_CONSISTENCY;
    case ErrorCode::eigenrelation: return PWC_ERROR_EIGENRELATION;
    case ErrorCode::io: return PWC_ERROR_IO;
    case ErrorCode::internal: return PWC_ERROR_INTERNAL;
  }
  return PWC_ERROR_INTERNAL;
}

template <typename Fn>
pwc_status guarded(Fn&& fn) {
  try {
    fn();
    return PWC_OK;
  } catch (const pwc::Error& e) {
    g_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PWC_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PWC_ERROR_INTERNAL;
  }
}

pwc_status invalid(const char* message) {
  g_last_error = message;
  return PWC_ERROR_INVALID_ARGUMENT;
}

bool fill(const std::vector<double>& src, double* dst, int capacity) {
  if (dst == nullptr || capacity < static_cast<int>(src.size())) return false;
  std::memcpy(dst, src.data(), src.size() * sizeof(double));
  return true;
}

pwc::LocalOperator make_local_operator(const char* kind,
                                       const pwc_state* state,
                                       double heisenberg_time) {
  const std::string name = kind;
  if (name == "position") return pwc::LocalOperator::position(state->params);
  if (name == "momentum") return pwc::LocalOperator::momentum(state->params);
  if (name == "kinetic") return pwc::LocalOperator::kinetic(state->params);
  if (name == "hamiltonian") {
    return pwc::LocalOperator::hamiltonian(state->params, state->potential);
  }
  if (name == "heisenberg_q") {
    return pwc::LocalOperator::heisenberg_q(state->params, heisenberg_time);
  }
  pwc::raise(ErrorCode::config, "unknown observable kind '" + name + "'");
}

}  // namespace

extern "C" {

const char* pwc_version(void) { return "0.1.0"; }

const char* pwc_status_name(pwc_status status) {
  switch (status) {
    case PWC_OK: return "ok";
    case PWC_ERROR_CONFIG: return "config";
    case PWC_ERROR_SHAPE: return "shape";
    case PWC_ERROR_DOMAIN: return "domain";
    case PWC_ERROR_NODE: return "node";
    case PWC_ERROR_HORIZON: return "horizon";
    case PWC_ERROR_TRUNCATION: return "truncation";
    case PWC_ERROR_CONSISTENCY: return "consistency";
    case PWC_ERROR_EIGENRELATION: return "eigenrelation";
    case PWC_ERROR_IO: return "io";
    case PWC_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case PWC_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pwc_last_error_message(void) { return g_last_error.c_str(); }

/* --- grid ---------------------------------------------------------- */

pwc_status pwc_grid_create(double x_min, double x_max, int n_points,
                           pwc_grid** out) {
  if (out == nullptr) return invalid("out pointer is null");
  return guarded([&] {
    *out = new pwc_grid{pwc::Grid::make(x_min, x_max, n_points)};
  });
}

void pwc_grid_destroy(pwc_grid* grid) { delete grid; }

int pwc_grid_size(const pwc_grid* grid) {
  return grid == nullptr ? 0 : grid->grid.n_points;
}

double pwc_grid_spacing(const pwc_grid* grid) {
  return grid == nullptr ? 0.0 : grid->grid.dx;
}

pwc_status pwc_grid_coordinates(const pwc_grid* grid, double* xs,
                                int capacity) {
  if (grid == nullptr) return invalid("grid is null");
  if (!fill(grid->grid.points(), xs, capacity)) {
    return invalid("coordinate buffer too small");
  }
  return PWC_OK;
}

/* --- potentials ------------------------------------------------------ */

pwc_status pwc_potential_oscillator(const pwc_grid* grid, double mass,
                                    double omega, pwc_potential** out) {
  if (grid == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    pwc::OscillatorParams params;
    params.mass = mass;
    params.omega = omega;
    *out = new pwc_potential{
        pwc::oscillator_potential(params, grid->grid)};
  });
}

pwc_status pwc_potential_from_values(const pwc_grid* grid, const double* v,
                                     int length, pwc_potential** out) {
  if (grid == nullptr || v == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    if (length != grid->grid.n_points) {
      pwc::raise(ErrorCode::shape, "potential length does not match the grid");
    }
    pwc::RealField field = pwc::RealField::zero(grid->grid);
    std::memcpy(field.values.data(), v, length * sizeof(double));
    *out = new pwc_potential{std::move(field)};
  });
}

void pwc_potential_destroy(pwc_potential* potential) { delete potential; }

/* --- states ----------------------------------------------------------- */

pwc_status pwc_state_create(const pwc_grid* grid, double mass, double omega,
                            double hbar, const char* spec, pwc_state** out) {
  if (grid == nullptr || spec == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    pwc::OscillatorParams params;
    params.mass = mass;
    params.omega = omega;
    params.hbar = hbar;
    params.validate();
    const pwc::StateSpec parsed = pwc::StateSpec::parse(spec);
    *out = new pwc_state{pwc::build_state(parsed, params, grid->grid), params,
                         pwc::oscillator_potential(params, grid->grid)};
  });
}

void pwc_state_destroy(pwc_state* state) { delete state; }

double pwc_state_time(const pwc_state* state) {
  return state == nullptr ? 0.0 : state->psi.time;
}

pwc_status pwc_state_norm(const pwc_state* state, double* out) {
  if (state == nullptr || out == nullptr) return invalid("null argument");
  *out = state->psi.norm();
  return PWC_OK;
}

pwc_status pwc_state_amplitudes(const pwc_state* state, double* re, double* im,
                                int capacity) {
  if (state == nullptr || re == nullptr || im == nullptr) {
    return invalid("null argument");
  }
  const int n = state->psi.grid.n_points;
  if (capacity < n) return invalid("amplitude buffer too small");
  for (int k = 0; k < n; ++k) {
    re[k] = state->psi.amplitudes[k].real();
    im[k] = state->psi.amplitudes[k].imag();
  }
  return PWC_OK;
}

pwc_status pwc_state_density(const pwc_state* state, double* out,
                             int capacity) {
  if (state == nullptr) return invalid("state is null");
  return guarded([&] {
    if (!fill(pwc::probability_density(state->psi).values, out, capacity)) {
      pwc::raise(ErrorCode::shape, "density buffer too small");
    }
  });
}

pwc_status pwc_state_current(const pwc_state* state, double* out,
                             int capacity) {
  if (state == nullptr) return invalid("state is null");
  return guarded([&] {
    const pwc::RealField j = pwc::probability_current(
        state->psi, state->params.hbar, state->params.mass);
    if (!fill(j.values, out, capacity)) {
      pwc::raise(ErrorCode::shape, "current buffer too small");
    }
  });
}

pwc_status pwc_state_velocity(const pwc_state* state, double* out,
                              int capacity) {
  if (state == nullptr) return invalid("state is null");
  return guarded([&] {
    const pwc::VelocityField v = pwc::velocity_field(
        state->psi, state->params.hbar, state->params.mass);
    if (!fill(v.values, out, capacity)) {
      pwc::raise(ErrorCode::shape, "velocity buffer too small");
    }
  });
}

pwc_status pwc_state_evolve(const pwc_state* state, double dt, long n_steps,
                            pwc_state** out) {
  if (state == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new pwc_state{
        pwc::evolve(state->psi, state->potential, dt, n_steps,
                    state->params.hbar, state->params.mass),
        state->params, state->potential};
  });
}

pwc_status pwc_state_evolve_in(const pwc_state* state,
                               const pwc_potential* potential, double dt,
                               long n_steps, pwc_state** out) {
  if (state == nullptr || potential == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    *out = new pwc_state{
        pwc::evolve(state->psi, potential->field, dt, n_steps,
                    state->params.hbar, state->params.mass),
        state->params, state->potential};
  });
}

pwc_status pwc_state_local_expectation(const pwc_state* state,
                                       const char* kind, double x,
                                       double heisenberg_time, double* out) {
  if (state == nullptr || kind == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const pwc::LocalOperator op =
        make_local_operator(kind, state, heisenberg_time);
    *out = pwc::local_expectation(op, state->psi, x);
  });
}

pwc_status pwc_state_csv(const pwc_state* state, char** out) {
  if (state == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    const std::string csv = pwc::wavefunction_csv(state->psi);
    char* buffer = new char[csv.size() + 1];
    std::memcpy(buffer, csv.c_str(), csv.size() + 1);
    *out = buffer;
  });
}

void pwc_string_free(char* text) { delete[] text; }

/* --- ensembles --------------------------------------------------------- */

pwc_status pwc_ensemble_sample(const pwc_state* state, int n,
                               const char* scheme, unsigned long long seed,
                               pwc_ensemble** out) {
  if (state == nullptr || scheme == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const std::string name = scheme;
    pwc::SamplingScheme s;
    if (name == "quantile") {
      s = pwc::SamplingScheme::quantile;
    } else if (name == "random") {
      s = pwc::SamplingScheme::random;
    } else {
      pwc::raise(ErrorCode::config,
                 "scheme must be quantile or random, got '" + name + "'");
    }
    *out = new pwc_ensemble{
        pwc::sample_initial_positions(state->psi, n, s, seed),
        state->psi, state->params, state->potential};
  });
}

void pwc_ensemble_destroy(pwc_ensemble* ensemble) { delete ensemble; }

int pwc_ensemble_size(const pwc_ensemble* ensemble) {
  return ensemble == nullptr ? 0 : ensemble->ensemble.size();
}

pwc_status pwc_ensemble_integrate(pwc_ensemble* ensemble, double t_final,
                                  double dt) {
  if (ensemble == nullptr) return invalid("ensemble is null");
  return guarded([&] {
    pwc::integrate_trajectories(ensemble->ensemble, ensemble->psi0,
                                ensemble->potential, t_final, dt,
                                ensemble->params.hbar, ensemble->params.mass);
  });
}

pwc_status pwc_ensemble_positions_at(const pwc_ensemble* ensemble, double t,
                                     double* out, int capacity) {
  if (ensemble == nullptr) return invalid("ensemble is null");
  return guarded([&] {
    if (!fill(ensemble->ensemble.positions_at(t), out, capacity)) {
      pwc::raise(ErrorCode::shape, "position buffer too small");
    }
  });
}

pwc_status pwc_ensemble_expectation(const pwc_ensemble* ensemble,
                                    const pwc_state* state_at_t,
                                    const char* kind, double t,
                                    double heisenberg_time, double* out) {
  if (ensemble == nullptr || state_at_t == nullptr || kind == nullptr ||
      out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const pwc::LocalOperator op =
        make_local_operator(kind, state_at_t, heisenberg_time);
    *out = pwc::bohm_expectation(op, ensemble->ensemble, state_at_t->psi, t);
  });
}

pwc_status pwc_ensemble_correlation(const pwc_ensemble* ensemble, double s,
                                    double t, double* value,
                                    double* symmetrized) {
  if (ensemble == nullptr || value == nullptr || symmetrized == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const pwc::CorrelationRecord record =
        pwc::bohm_two_time_correlation(ensemble->ensemble, s, t);
    *value = record.value.real();
    *symmetrized = record.symmetrized;
  });
}

/* --- correlations ------------------------------------------------------ */

pwc_status pwc_state_correlation(const pwc_state* state, double s, double t,
                                 double dt, double* re, double* im,
                                 double* symmetrized) {
  if (state == nullptr || re == nullptr || im == nullptr ||
      symmetrized == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const pwc::CorrelationRecord record = pwc::qm_two_time_correlation(
        state->psi, state->potential, s, t, dt, state->params.hbar,
        state->params.mass);
    *re = record.value.real();
    *im = record.value.imag();
    *symmetrized = record.symmetrized;
  });
}

pwc_status pwc_heisenberg_local_expectation(double xi, double s, double mass,
                                            double omega, double hbar,
                                            double* out) {
  if (out == nullptr) return invalid("out pointer is null");
  return guarded([&] {
    pwc::OscillatorParams params;
    params.mass = mass;
    params.omega = omega;
    params.hbar = hbar;
    *out = pwc::heisenberg_local_expectation(xi, s, params);
  });
}

/* --- truncated basis ---------------------------------------------------- */

pwc_status pwc_fock_create(int dimension, double mass, double omega,
                           double hbar, pwc_fock** out) {
  if (out == nullptr) return invalid("out pointer is null");
  return guarded([&] {
    pwc::OscillatorParams params;
    params.mass = mass;
    params.omega = omega;
    params.hbar = hbar;
    *out = new pwc_fock{pwc::FockOperators::build(dimension, params)};
  });
}

void pwc_fock_destroy(pwc_fock* fock) { delete fock; }

pwc_status pwc_fock_correlation(const pwc_fock* fock, const char* spec,
                                double s, double t, double* re, double* im) {
  if (fock == nullptr || spec == nullptr || re == nullptr || im == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const pwc::StateSpec parsed = pwc::StateSpec::parse(spec);
    const std::vector<pwc::complex> coeffs =
        pwc::fock_state_coefficients(parsed, fock->ops.dimension);
    const pwc::complex value =
        pwc::oracle_two_time_correlation(coeffs, s, t, fock->ops);
    *re = value.real();
    *im = value.imag();
  });
}

pwc_status pwc_fock_heisenberg_element(const pwc_fock* fock, const char* which,
                                       double t, int row, int col, double* re,
                                       double* im) {
  if (fock == nullptr || which == nullptr || re == nullptr || im == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const std::string name = which;
    pwc::HeisenbergObservable observable;
    if (name == "position") {
      observable = pwc::HeisenbergObservable::position;
    } else if (name == "momentum") {
      observable = pwc::HeisenbergObservable::momentum;
    } else {
      pwc::raise(ErrorCode::config,
                 "observable must be position or momentum, got '" + name +
                     "'");
    }
    if (row < 0 || row >= fock->ops.dimension || col < 0 ||
        col >= fock->ops.dimension) {
      pwc::raise(ErrorCode::shape, "matrix index out of range");
    }
    const pwc::CMatrix a = pwc::heisenberg_operator(observable, t, fock->ops);
    *re = a(row, col).real();
    *im = a(row, col).imag();
  });
}

/* --- config / runner ----------------------------------------------------*/

pwc_status pwc_config_create(pwc_config** out) {
  if (out == nullptr) return invalid("out pointer is null");
  *out = new pwc_config{pwc::RunConfig::defaults()};
  return PWC_OK;
}

pwc_status pwc_config_load(const char* path, pwc_config** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new pwc_config{pwc::RunConfig::load_file(path)};
  });
}

pwc_status pwc_config_parse(const char* text, pwc_config** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new pwc_config{pwc::RunConfig::from_text(text)};
  });
}

pwc_status pwc_config_set(pwc_config* config, const char* key,
                          const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] { config->config.set(key, value); });
}

pwc_status pwc_config_get(const pwc_config* config, const char* key,
                          char* buffer, int capacity) {
  if (config == nullptr || key == nullptr || buffer == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const std::string value = config->config.get(key);
    if (capacity < static_cast<int>(value.size()) + 1) {
      pwc::raise(ErrorCode::shape, "value buffer too small");
    }
    std::memcpy(buffer, value.c_str(), value.size() + 1);
  });
}

void pwc_config_destroy(pwc_config* config) { delete config; }

pwc_status pwc_run(const pwc_config* config, const char* command,
                   pwc_report** out) {
  if (config == nullptr || command == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    *out = new pwc_report{pwc::run_command(config->config, command)};
  });
}

void pwc_report_destroy(pwc_report* report) { delete report; }

int pwc_report_exit_status(const pwc_report* report) {
  return report == nullptr ? 2 : report->report.exit_status;
}

const char* pwc_report_summary(const pwc_report* report) {
  return report == nullptr ? "" : report->report.summary.c_str();
}

int pwc_report_artifact_count(const pwc_report* report) {
  return report == nullptr
             ? 0
             : static_cast<int>(report->report.artifacts.size());
}

const char* pwc_report_artifact_name(const pwc_report* report, int index) {
  if (report == nullptr || index < 0 ||
      index >= static_cast<int>(report->report.artifacts.size())) {
    return nullptr;
  }
  return report->report.artifacts[index].first.c_str();
}

const char* pwc_report_artifact_content(const pwc_report* report, int index) {
  if (report == nullptr || index < 0 ||
      index >= static_cast<int>(report->report.artifacts.size())) {
    return nullptr;
  }
  return report->report.artifacts[index].second.c_str();
}

pwc_status pwc_report_write(const pwc_report* report, const char* directory,
                            const char* format) {
  if (report == nullptr || directory == nullptr || format == nullptr) {
    return invalid("null argument");
  }
  return guarded(
      [&] { pwc::write_artifacts(report->report, directory, format); });
}

} /* extern "C" */
