#ifndef PWC_PARALLEL_HPP
#define PWC_PARALLEL_HPP

#include <functional>

namespace pwc {

/// Number of workers used by parallel_for: hardware concurrency, capped by
/// the PWC_THREADS environment variable (read once per process).
int worker_count();

/// Deterministic parallel map over [0, count): every index writes only its
/// own slots, so results are identical for any worker count.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace pwc

#endif
