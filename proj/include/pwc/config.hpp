#ifndef PWC_CONFIG_HPP
#define PWC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pwc/bohm.hpp"
#include "pwc/grid.hpp"
#include "pwc/oscillator.hpp"

namespace pwc {

/// Run configuration shared by every subcommand. Times may be written as
/// plain numbers, as fractions of the oscillator period ("0.5T"), or as
/// period divisions ("T/1000").
struct RunConfig {
  OscillatorParams params;
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = 1024;
  std::string dt_spec = "0.001T";
  std::string state_spec = "eigenstate:0";
  int ensemble_n = 10000;
  SamplingScheme scheme = SamplingScheme::quantile;
  std::uint64_t seed = 1;
  std::vector<std::string> lag_specs = {"0",      "0.125T", "0.25T",
                                        "0.375T", "0.5T",   "0.625T",
                                        "0.75T",  "1T"};
  std::string t_final_spec = "1T";
  std::string out_dir = ".";

  static RunConfig defaults() { return RunConfig{}; }
  static RunConfig load_file(const std::string& path);
  static RunConfig from_text(const std::string& text);

  /// Sets one key from its text form; unknown keys and bad values raise
  /// config errors.
  void set(const std::string& key, const std::string& value);

  /// Text form of one key; raises on unknown keys.
  std::string get(const std::string& key) const;

  double parse_time(const std::string& spec) const;

  double dt() const { return parse_time(dt_spec); }
  double t_final() const { return parse_time(t_final_spec); }
  std::vector<double> lags() const;
  StateSpec state() const { return StateSpec::parse(state_spec); }
  Grid grid() const { return Grid::make(x_min, x_max, n_points); }

  /// Runs every parse/validation path; raises on the first problem.
  void validate() const;

  std::string scheme_name() const;
};

}  // namespace pwc

#endif
