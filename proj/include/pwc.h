#ifndef PWC_H
#define PWC_H

/* pwc - pilot-wave correlation lab for the 1D harmonic oscillator.
 *
 * C interface to the shared library. Every object is an opaque handle
 * created by a pwc_*_create / pwc_*_sample function and released by the
 * matching pwc_*_destroy. Functions return PWC_OK on success or an error
 * code; pwc_last_error_message() describes the most recent failure on the
 * calling thread. Output buffers are caller-allocated with the capacity
 * passed explicitly.
 *
 * States are described by spec strings: "eigenstate:0", "coherent:1.0+0.0i"
 * or "superposition:[0.70710678,0.70710678]". Observables for the local
 * (per-position) expectation machinery are named "position", "momentum",
 * "kinetic", "hamiltonian" and "heisenberg_q" (the last takes the Heisenberg
 * time argument).
 *
 * The high-level runner mirrors the CLI: build a config, call pwc_run with
 * "verify", "demo-contradiction", "trajectories" or "correlate", then read
 * the named artifacts (JSON/CSV documents) from the report handle.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwc_status {
  PWC_OK = 0,
  PWC_ERROR_CONFIG = 1,        /* bad parameters or unparseable input */
  PWC_ERROR_SHAPE = 2,         /* mismatched grids or array lengths */
  PWC_ERROR_DOMAIN = 3,        /* state or particle does not fit the domain */
  PWC_ERROR_NODE = 4,          /* evaluation at a wavefunction node */
  PWC_ERROR_HORIZON = 5,       /* time outside the integrated range */
  PWC_ERROR_TRUNCATION = 6,    /* occupied top levels of a truncated basis */
  PWC_ERROR_CONSISTENCY = 7,   /* internal cross-check failed */
  PWC_ERROR_EIGENRELATION = 8, /* state failed H psi = E psi validation */
  PWC_ERROR_IO = 9,
  PWC_ERROR_INVALID_ARGUMENT = 10,
  PWC_ERROR_INTERNAL = 11
} pwc_status;

const char* pwc_version(void);
const char* pwc_status_name(pwc_status status);

/* Message for the most recent error on this thread; never NULL. */
const char* pwc_last_error_message(void);

typedef struct pwc_grid pwc_grid;
typedef struct pwc_potential pwc_potential;
typedef struct pwc_state pwc_state;
typedef struct pwc_ensemble pwc_ensemble;
typedef struct pwc_fock pwc_fock;
typedef struct pwc_config pwc_config;
typedef struct pwc_report pwc_report;

/* --- spatial grid --------------------------------------------------- */

pwc_status pwc_grid_create(double x_min, double x_max, int n_points,
                           pwc_grid** out);
void pwc_grid_destroy(pwc_grid* grid);
int pwc_grid_size(const pwc_grid* grid);
double pwc_grid_spacing(const pwc_grid* grid);
pwc_status pwc_grid_coordinates(const pwc_grid* grid, double* xs,
                                int capacity);

/* --- potentials ------------------------------------------------------ */

pwc_status pwc_potential_oscillator(const pwc_grid* grid, double mass,
                                    double omega, pwc_potential** out);
pwc_status pwc_potential_from_values(const pwc_grid* grid, const double* v,
                                     int length, pwc_potential** out);
void pwc_potential_destroy(pwc_potential* potential);

/* --- wavefunctions ---------------------------------------------------- */

/* Builds the state described by spec on the grid; the oscillator parameters
 * stay attached to the handle and drive evolution and sampling. */
pwc_status pwc_state_create(const pwc_grid* grid, double mass, double omega,
                            double hbar, const char* spec, pwc_state** out);
void pwc_state_destroy(pwc_state* state);

double pwc_state_time(const pwc_state* state);
pwc_status pwc_state_norm(const pwc_state* state, double* out);
pwc_status pwc_state_amplitudes(const pwc_state* state, double* re, double* im,
                                int capacity);
pwc_status pwc_state_density(const pwc_state* state, double* out,
                             int capacity);
pwc_status pwc_state_current(const pwc_state* state, double* out,
                             int capacity);
pwc_status pwc_state_velocity(const pwc_state* state, double* out,
                              int capacity);

/* Split-operator evolution in the state's own oscillator potential. */
pwc_status pwc_state_evolve(const pwc_state* state, double dt, long n_steps,
                            pwc_state** out);
/* Same stepper under a caller-supplied potential field. */
pwc_status pwc_state_evolve_in(const pwc_state* state,
                               const pwc_potential* potential, double dt,
                               long n_steps, pwc_state** out);

/* Local expectation value Re[(A psi)(x) / psi(x)] at x. heisenberg_time is
 * read only for kind "heisenberg_q". */
pwc_status pwc_state_local_expectation(const pwc_state* state,
                                       const char* kind, double x,
                                       double heisenberg_time, double* out);

/* CSV document "x,re,im,p_density"; caller frees with pwc_string_free. */
pwc_status pwc_state_csv(const pwc_state* state, char** out);
void pwc_string_free(char* text);

/* --- trajectory ensembles --------------------------------------------- */

/* scheme is "quantile" or "random" (seed used by the latter). */
pwc_status pwc_ensemble_sample(const pwc_state* state, int n,
                               const char* scheme, unsigned long long seed,
                               pwc_ensemble** out);
void pwc_ensemble_destroy(pwc_ensemble* ensemble);

int pwc_ensemble_size(const pwc_ensemble* ensemble);
pwc_status pwc_ensemble_integrate(pwc_ensemble* ensemble, double t_final,
                                  double dt);
pwc_status pwc_ensemble_positions_at(const pwc_ensemble* ensemble, double t,
                                     double* out, int capacity);

/* Ensemble average of local expectation values at time t; state_at_t must
 * be the wavefunction evolved to t. */
pwc_status pwc_ensemble_expectation(const pwc_ensemble* ensemble,
                                    const pwc_state* state_at_t,
                                    const char* kind, double t,
                                    double heisenberg_time, double* out);

/* Trajectory correlation sum_j w_j x_j(s) x_j(t) and its symmetrized
 * (doubled) value. */
pwc_status pwc_ensemble_correlation(const pwc_ensemble* ensemble, double s,
                                    double t, double* value,
                                    double* symmetrized);

/* --- grid-side two-time correlation ------------------------------------ */

/* <psi| q(s) q(t) |psi> by state evolution with step dt; also returns the
 * symmetrized Hermitian combination. */
pwc_status pwc_state_correlation(const pwc_state* state, double s, double t,
                                 double dt, double* re, double* im,
                                 double* symmetrized);

/* Ground-state local value of the Heisenberg operator q(s) at xi:
 * xi cos(omega s). */
pwc_status pwc_heisenberg_local_expectation(double xi, double s, double mass,
                                            double omega, double hbar,
                                            double* out);

/* --- truncated-basis oracle -------------------------------------------- */

pwc_status pwc_fock_create(int dimension, double mass, double omega,
                           double hbar, pwc_fock** out);
void pwc_fock_destroy(pwc_fock* fock);

/* c^dag q(s) q(t) c for the state described by spec. */
pwc_status pwc_fock_correlation(const pwc_fock* fock, const char* spec,
                                double s, double t, double* re, double* im);

/* One element of the Heisenberg operator q(t) or p(t) ("position" /
 * "momentum"). */
pwc_status pwc_fock_heisenberg_element(const pwc_fock* fock, const char* which,
                                       double t, int row, int col, double* re,
                                       double* im);

/* --- configuration and runners ----------------------------------------- */

pwc_status pwc_config_create(pwc_config** out);
pwc_status pwc_config_load(const char* path, pwc_config** out);
pwc_status pwc_config_parse(const char* text, pwc_config** out);
pwc_status pwc_config_set(pwc_config* config, const char* key,
                          const char* value);
/* Text form of one key (resolved numbers for times); buffer must hold the
 * value including the terminator. */
pwc_status pwc_config_get(const pwc_config* config, const char* key,
                          char* buffer, int capacity);
void pwc_config_destroy(pwc_config* config);

/* command: "verify", "demo-contradiction", "trajectories", "correlate". */
pwc_status pwc_run(const pwc_config* config, const char* command,
                   pwc_report** out);
void pwc_report_destroy(pwc_report* report);

/* 0 = pass, 1 = scientific check failed. */
int pwc_report_exit_status(const pwc_report* report);
const char* pwc_report_summary(const pwc_report* report);
int pwc_report_artifact_count(const pwc_report* report);
const char* pwc_report_artifact_name(const pwc_report* report, int index);
const char* pwc_report_artifact_content(const pwc_report* report, int index);

/* Writes the artifacts into directory; format is "csv", "json" or "both". */
pwc_status pwc_report_write(const pwc_report* report, const char* directory,
                            const char* format);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PWC_H */
