#pragma once

#include <functional>

namespace cvqkd::detail {

// Runs body(i) once for every i in [0, n) across the given number of worker
// threads and joins before returning. Callers keep determinism by writing
// into per-index slots and reducing in index order afterwards.
void parallel_for(long long n, int threads, const std::function<void(long long)>& body);

}  // namespace cvqkd::detail
