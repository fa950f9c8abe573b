#ifndef PWC_CHECKS_HPP
#define PWC_CHECKS_HPP

#include <string>
#include <vector>

#include "pwc/config.hpp"

namespace pwc {

/// One measured quantity; passes when measured <= tolerance.
struct CheckItem {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckGroup {
  std::string id;
  std::string title;
  std::vector<CheckItem> items;

  bool passed() const;
  double worst_margin() const;  // max measured/tolerance over items
};

/// The nine headline acceptance checks, ids "A1".."A9". Tolerances are
/// pinned here; grid, state parameters and the ensemble size come from the
/// config (defaults reproduce the documented numbers).
std::vector<CheckGroup> acceptance_checks(const RunConfig& config);

/// Per-module invariants beyond the headline checks.
std::vector<CheckGroup> invariant_checks(const RunConfig& config);

}  // namespace pwc

#endif
