// Exercises the shared-library C surface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "pwc.h"

namespace {
const double kPeriod = 2.0 * std::numbers::pi;
}

TEST_CASE("version and status names") {
  CHECK(std::strlen(pwc_version()) > 0);
  CHECK(std::string(pwc_status_name(PWC_OK)) == "ok");
  CHECK(std::string(pwc_status_name(PWC_ERROR_NODE)) == "node");
}

TEST_CASE("grid handles") {
  pwc_grid* grid = nullptr;
  REQUIRE(pwc_grid_create(-10.0, 10.0, 1024, &grid) == PWC_OK);
  CHECK(pwc_grid_size(grid) == 1024);
  CHECK(pwc_grid_spacing(grid) == doctest::Approx(20.0 / 1024));

  std::vector<double> xs(1024);
  REQUIRE(pwc_grid_coordinates(grid, xs.data(), 1024) == PWC_OK);
  CHECK(xs.front() == doctest::Approx(-10.0));
  CHECK(pwc_grid_coordinates(grid, xs.data(), 10) ==
        PWC_ERROR_INVALID_ARGUMENT);
  pwc_grid_destroy(grid);

  pwc_grid* bad = nullptr;
  CHECK(pwc_grid_create(-1.0, 1.0, 100, &bad) == PWC_ERROR_CONFIG);
  CHECK(std::strlen(pwc_last_error_message()) > 0);
}

TEST_CASE("states, densities and local values") {
  pwc_grid* grid = nullptr;
  REQUIRE(pwc_grid_create(-10.0, 10.0, 1024, &grid) == PWC_OK);

  pwc_state* ground = nullptr;
  REQUIRE(pwc_state_create(grid, 1.0, 1.0, 1.0, "eigenstate:0", &ground) ==
          PWC_OK);
  double norm = 0.0;
  REQUIRE(pwc_state_norm(ground, &norm) == PWC_OK);
  CHECK(std::abs(norm - 1.0) <= 1e-9);

  std::vector<double> density(1024);
  REQUIRE(pwc_state_density(ground, density.data(), 1024) == PWC_OK);
  CHECK(std::abs(density[512] - 1.0 / std::sqrt(std::numbers::pi)) <= 1e-6);

  std::vector<double> current(1024), velocity(1024);
  REQUIRE(pwc_state_current(ground, current.data(), 1024) == PWC_OK);
  REQUIRE(pwc_state_velocity(ground, velocity.data(), 1024) == PWC_OK);
  const double p_floor = 1e-8 / std::sqrt(std::numbers::pi);
  for (int k = 0; k < 1024; ++k) {
    CHECK(std::abs(current[k]) <= 1e-9);
    if (density[k] > p_floor) CHECK(std::abs(velocity[k]) <= 1e-9);
  }

  double value = 0.0;
  REQUIRE(pwc_state_local_expectation(ground, "heisenberg_q", 2.0,
                                      0.5 * kPeriod, &value) == PWC_OK);
  CHECK(std::abs(value + 2.0) <= 1e-6);
  CHECK(pwc_state_local_expectation(ground, "charm", 0.0, 0.0, &value) ==
        PWC_ERROR_CONFIG);

  char* csv = nullptr;
  REQUIRE(pwc_state_csv(ground, &csv) == PWC_OK);
  CHECK(std::strncmp(csv, "x,re,im,p_density\n", 18) == 0);
  pwc_string_free(csv);

  pwc_state* bad = nullptr;
  CHECK(pwc_state_create(grid, 1.0, 1.0, 1.0, "coherent:9.0", &bad) ==
        PWC_ERROR_CONFIG);

  pwc_state_destroy(ground);
  pwc_grid_destroy(grid);
}

TEST_CASE("evolution and correlations through the C surface") {
  pwc_grid* grid = nullptr;
  REQUIRE(pwc_grid_create(-10.0, 10.0, 1024, &grid) == PWC_OK);
  pwc_state* alpha = nullptr;
  REQUIRE(pwc_state_create(grid, 1.0, 1.0, 1.0, "coherent:1.0+0.0i", &alpha) ==
          PWC_OK);

  pwc_state* half = nullptr;
  REQUIRE(pwc_state_evolve(alpha, kPeriod / 1000.0, 500, &half) == PWC_OK);
  CHECK(pwc_state_time(half) == doctest::Approx(0.5 * kPeriod));

  // <q> flips sign after half a period; read it through the density.
  std::vector<double> xs(1024), density(1024);
  REQUIRE(pwc_grid_coordinates(grid, xs.data(), 1024) == PWC_OK);
  REQUIRE(pwc_state_density(half, density.data(), 1024) == PWC_OK);
  double mean = 0.0;
  for (int k = 0; k < 1024; ++k) mean += xs[k] * density[k] * (20.0 / 1024);
  CHECK(std::abs(mean + std::numbers::sqrt2) <= 1e-4);

  double re = 0.0, im = 0.0, sym = 0.0;
  pwc_state* ground = nullptr;
  REQUIRE(pwc_state_create(grid, 1.0, 1.0, 1.0, "eigenstate:0", &ground) ==
          PWC_OK);
  REQUIRE(pwc_state_correlation(ground, 0.5 * kPeriod, 0.0, kPeriod / 1000.0,
                                &re, &im, &sym) == PWC_OK);
  CHECK(std::abs(re + 0.5) <= 1e-4);
  CHECK(std::abs(sym + 1.0) <= 2e-4);

  pwc_fock* fock = nullptr;
  REQUIRE(pwc_fock_create(16, 1.0, 1.0, 1.0, &fock) == PWC_OK);
  double fre = 0.0, fim = 0.0;
  REQUIRE(pwc_fock_correlation(fock, "eigenstate:0", 0.5 * kPeriod, 0.0, &fre,
                               &fim) == PWC_OK);
  CHECK(std::abs(fre + 0.5) <= 1e-12);
  CHECK(std::abs(re - fre) <= 1e-4);

  double qre = 0.0, qim = 0.0;
  REQUIRE(pwc_fock_heisenberg_element(fock, "position", 0.5 * kPeriod, 0, 1,
                                      &qre, &qim) == PWC_OK);
  CHECK(std::abs(qre + 1.0 / std::numbers::sqrt2) <= 1e-12);
  CHECK(pwc_fock_heisenberg_element(fock, "position", 0.0, 40, 0, &qre,
                                    &qim) == PWC_ERROR_SHAPE);

  double closed = 0.0;
  REQUIRE(pwc_heisenberg_local_expectation(0.7, 0.25 * kPeriod, 1.0, 1.0, 1.0,
                                           &closed) == PWC_OK);
  CHECK(std::abs(closed) <= 1e-12);

  // A hand-built potential matching the oscillator evolves identically.
  std::vector<double> v_values(1024);
  for (int k = 0; k < 1024; ++k) {
    const double x = -10.0 + k * (20.0 / 1024);
    v_values[k] = 0.5 * x * x;
  }
  pwc_potential* custom = nullptr;
  REQUIRE(pwc_potential_from_values(grid, v_values.data(), 1024, &custom) ==
          PWC_OK);
  pwc_state* via_custom = nullptr;
  REQUIRE(pwc_state_evolve_in(alpha, custom, kPeriod / 1000.0, 100,
                              &via_custom) == PWC_OK);
  pwc_state* via_builtin = nullptr;
  REQUIRE(pwc_state_evolve(alpha, kPeriod / 1000.0, 100, &via_builtin) ==
          PWC_OK);
  std::vector<double> re_a(1024), im_a(1024), re_b(1024), im_b(1024);
  REQUIRE(pwc_state_amplitudes(via_custom, re_a.data(), im_a.data(), 1024) ==
          PWC_OK);
  REQUIRE(pwc_state_amplitudes(via_builtin, re_b.data(), im_b.data(), 1024) ==
          PWC_OK);
  for (int k = 0; k < 1024; ++k) {
    CHECK(re_a[k] == re_b[k]);
    CHECK(im_a[k] == im_b[k]);
  }
  CHECK(pwc_potential_from_values(grid, v_values.data(), 77, &custom) ==
        PWC_ERROR_SHAPE);
  pwc_state_destroy(via_custom);
  pwc_state_destroy(via_builtin);
  pwc_potential_destroy(custom);

  pwc_fock_destroy(fock);
  pwc_state_destroy(ground);
  pwc_state_destroy(half);
  pwc_state_destroy(alpha);
  pwc_grid_destroy(grid);
}

TEST_CASE("ensembles through the C surface") {
  pwc_grid* grid = nullptr;
  REQUIRE(pwc_grid_create(-10.0, 10.0, 1024, &grid) == PWC_OK);
  pwc_state* ground = nullptr;
  REQUIRE(pwc_state_create(grid, 1.0, 1.0, 1.0, "eigenstate:0", &ground) ==
          PWC_OK);

  pwc_ensemble* ens = nullptr;
  REQUIRE(pwc_ensemble_sample(ground, 2000, "quantile", 0, &ens) == PWC_OK);
  CHECK(pwc_ensemble_size(ens) == 2000);
  REQUIRE(pwc_ensemble_integrate(ens, 0.5 * kPeriod, kPeriod / 1000.0) ==
          PWC_OK);

  std::vector<double> positions(2000);
  REQUIRE(pwc_ensemble_positions_at(ens, 0.25 * kPeriod, positions.data(),
                                    2000) == PWC_OK);

  double value = 0.0, sym = 0.0;
  REQUIRE(pwc_ensemble_correlation(ens, 0.5 * kPeriod, 0.0, &value, &sym) ==
          PWC_OK);
  CHECK(std::abs(value - 0.5) <= 2e-3);
  CHECK(std::abs(sym - 1.0) <= 4e-3);
  CHECK(pwc_ensemble_correlation(ens, kPeriod, 0.0, &value, &sym) ==
        PWC_ERROR_HORIZON);

  double avg = 0.0;
  REQUIRE(pwc_ensemble_expectation(ens, ground, "position", 0.0, 0.0, &avg) ==
          PWC_OK);
  CHECK(std::abs(avg) <= 1e-6);

  CHECK(pwc_ensemble_sample(ground, 16, "sobol", 0, &ens) ==
        PWC_ERROR_CONFIG);

  pwc_ensemble_destroy(ens);
  pwc_state_destroy(ground);
  pwc_grid_destroy(grid);
}

TEST_CASE("config and runner through the C surface") {
  pwc_config* cfg = nullptr;
  REQUIRE(pwc_config_create(&cfg) == PWC_OK);
  REQUIRE(pwc_config_set(cfg, "ensemble_n", "800") == PWC_OK);
  REQUIRE(pwc_config_set(cfg, "lags", "0, 0.5T") == PWC_OK);
  CHECK(pwc_config_set(cfg, "flux_capacitor", "1") == PWC_ERROR_CONFIG);

  char buffer[64];
  REQUIRE(pwc_config_get(cfg, "ensemble_n", buffer, sizeof(buffer)) == PWC_OK);
  CHECK(std::string(buffer) == "800");

  pwc_report* report = nullptr;
  REQUIRE(pwc_run(cfg, "correlate", &report) == PWC_OK);
  CHECK(pwc_report_exit_status(report) == 0);
  const int count = pwc_report_artifact_count(report);
  REQUIRE(count == 2);
  bool saw_json = false, saw_csv = false;
  for (int i = 0; i < count; ++i) {
    const std::string name = pwc_report_artifact_name(report, i);
    const char* content = pwc_report_artifact_content(report, i);
    REQUIRE(content != nullptr);
    if (name == "correlate.json") saw_json = true;
    if (name == "correlate.csv") {
      saw_csv = true;
      CHECK(std::strncmp(content, "tau,", 4) == 0);
    }
  }
  CHECK(saw_json);
  CHECK(saw_csv);
  pwc_report_destroy(report);

  // Runner rejections surface as config errors.
  pwc_report* bad = nullptr;
  CHECK(pwc_run(cfg, "collide", &bad) == PWC_ERROR_CONFIG);
  REQUIRE(pwc_config_set(cfg, "state", "coherent:1.0+0.0i") == PWC_OK);
  CHECK(pwc_run(cfg, "demo-contradiction", &bad) == PWC_ERROR_CONFIG);
  CHECK(std::string(pwc_last_error_message()).find("eigenstate:0") !=
        std::string::npos);

  pwc_config_destroy(cfg);
  CHECK(pwc_run(nullptr, "verify", &bad) == PWC_ERROR_INVALID_ARGUMENT);
}
