#ifndef PWC_REPORT_HPP
#define PWC_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "pwc/checks.hpp"
#include "pwc/config.hpp"

namespace pwc {

/// Result of one subcommand: named artifacts (file name -> content) plus the
/// process exit status (0 pass, 1 scientific failure; config errors are
/// raised instead and map to status 2).
struct RunReport {
  int exit_status = 0;
  std::vector<std::pair<std::string, std::string>> artifacts;
  std::string summary;

  const std::string* artifact(const std::string& name) const;
};

/// Full invariant suite plus the acceptance checks; verify.json lists every
/// check with measured value and tolerance.
RunReport run_verify(const RunConfig& config);

/// The flagship ground-state demonstration: correlation table over the
/// configured lags, exit 0 only when the half-period row shows the sign
/// contradiction at the documented tolerances. Refuses non-ground states.
RunReport run_contradiction_demo(const RunConfig& config);

/// Correlation table for the configured state.
RunReport run_correlate(const RunConfig& config);

/// Trajectory ensemble export plus initial/final wavefunction snapshots.
RunReport run_trajectories(const RunConfig& config);

/// Dispatch by subcommand name: verify, demo-contradiction, trajectories,
/// correlate.
RunReport run_command(const RunConfig& config, const std::string& command);

/// Writes artifacts into a directory, filtered by format ("csv", "json" or
/// "both"); returns the paths written.
std::vector<std::string> write_artifacts(const RunReport& report,
                                         const std::string& directory,
                                         const std::string& format);

}  // namespace pwc

#endif
