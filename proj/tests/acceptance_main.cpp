// Acceptance suite: runs the nine headline checks at their pinned tolerances
// and prints one line per criterion.
#include <cstdio>
#include <vector>

#include "pwc/checks.hpp"

int main() {
  const pwc::RunConfig config = pwc::RunConfig::defaults();
  std::vector<pwc::CheckGroup> groups;
  try {
    groups = pwc::acceptance_checks(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 1;
  }

  int failed = 0;
  for (const pwc::CheckGroup& group : groups) {
    const bool ok = group.passed();
    if (!ok) ++failed;
    std::printf("[%s] %s: %s (worst margin %.3g of tolerance)\n",
                ok ? "PASS" : "FAIL", group.id.c_str(), group.title.c_str(),
                group.worst_margin());
    for (const pwc::CheckItem& item : group.items) {
      if (!item.passed) {
        std::printf("       FAILED %s: measured %.6g, tolerance %.6g\n",
                    item.name.c_str(), item.measured, item.tolerance);
      }
    }
  }
  std::printf("%d of %zu acceptance criteria passed\n",
              static_cast<int>(groups.size()) - failed, groups.size());
  return failed == 0 ? 0 : 1;
}
