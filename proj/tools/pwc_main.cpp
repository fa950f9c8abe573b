// pwc command-line tool. Talks to the core library exclusively through the
// C interface in pwc.h.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pwc.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string format = "both";
  std::vector<std::string> overrides;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "configuration file (key = value lines)");
  cmd->add_option("--out", opts.out_dir,
                  "output directory (default: out_dir from the config)");
  cmd->add_option("--format", opts.format, "artifact formats to write")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--set", opts.overrides,
                  "override one config key, e.g. --set ensemble_n=64")
      ->type_name("KEY=VALUE");
}

int fail(pwc_status status) {
  std::fprintf(stderr, "error (%s): %s\n", pwc_status_name(status),
               pwc_last_error_message());
  return status == PWC_ERROR_CONFIG || status == PWC_ERROR_IO ||
                 status == PWC_ERROR_INVALID_ARGUMENT
             ? 2
             : 1;
}

int run_subcommand(const std::string& command, const CommonOptions& opts) {
  pwc_config* config = nullptr;
  pwc_status status = opts.config_path.empty()
                          ? pwc_config_create(&config)
                          : pwc_config_load(opts.config_path.c_str(), &config);
  if (status != PWC_OK) return fail(status);

  for (const std::string& kv : opts.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error (config): --set expects KEY=VALUE, got '%s'\n",
                   kv.c_str());
      pwc_config_destroy(config);
      return 2;
    }
    status = pwc_config_set(config, kv.substr(0, eq).c_str(),
                            kv.substr(eq + 1).c_str());
    if (status != PWC_OK) {
      pwc_config_destroy(config);
      return fail(status);
    }
  }
  if (!opts.out_dir.empty()) {
    status = pwc_config_set(config, "out_dir", opts.out_dir.c_str());
    if (status != PWC_OK) {
      pwc_config_destroy(config);
      return fail(status);
    }
  }

  pwc_report* report = nullptr;
  status = pwc_run(config, command.c_str(), &report);
  if (status != PWC_OK) {
    pwc_config_destroy(config);
    return fail(status);
  }

  // Resolve the output directory: --out wins, then the config value.
  std::string out_dir = opts.out_dir;
  if (out_dir.empty()) {
    char buffer[4096];
    if (pwc_config_get(config, "out_dir", buffer, sizeof(buffer)) == PWC_OK) {
      out_dir = buffer;
    }
    if (out_dir.empty()) out_dir = ".";
  }
  status = pwc_report_write(report, out_dir.c_str(), opts.format.c_str());
  if (status != PWC_OK) {
    pwc_report_destroy(report);
    pwc_config_destroy(config);
    return fail(status);
  }

  const int count = pwc_report_artifact_count(report);
  for (int i = 0; i < count; ++i) {
    const std::string name = pwc_report_artifact_name(report, i);
    const bool is_json = name.size() > 5 &&
                         name.compare(name.size() - 5, 5, ".json") == 0;
    if ((opts.format == "json" && !is_json) ||
        (opts.format == "csv" && is_json)) {
      continue;
    }
    std::printf("wrote %s/%s\n", out_dir.c_str(), name.c_str());
  }
  const int exit_status = pwc_report_exit_status(report);
  std::printf("%s: %s\n", exit_status == 0 ? "PASS" : "FAIL",
              pwc_report_summary(report));

  pwc_report_destroy(report);
  pwc_config_destroy(config);
  return exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pwc - harmonic-oscillator two-time correlations computed three ways: "
      "grid quantum mechanics, a truncated eigenbasis oracle, and pilot-wave "
      "trajectory ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pwc_version()));

  CommonOptions opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant suite and acceptance checks");
  CLI::App* demo = app.add_subcommand(
      "demo-contradiction",
      "tabulate the opposite-sign correlations of the ground state");
  CLI::App* traj = app.add_subcommand(
      "trajectories", "integrate and export a trajectory ensemble");
  CLI::App* corr = app.add_subcommand(
      "correlate", "sweep correlation lags for the configured state");
  for (CLI::App* cmd : {verify, demo, traj, corr}) {
    add_common_options(cmd, opts);
  }

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return run_subcommand("verify", opts);
  if (demo->parsed()) return run_subcommand("demo-contradiction", opts);
  if (traj->parsed()) return run_subcommand("trajectories", opts);
  return run_subcommand("correlate", opts);
}
