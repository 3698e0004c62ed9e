#pragma once

#include <functional>

namespace randlink {

/// Worker-thread cap: RANDLINK_THREADS if set (must parse as a positive
/// integer), otherwise hardware concurrency. Re-read on every call.
int thread_budget();

/// Runs body(0..n-1) on up to thread_budget() threads. Nested calls run
/// serially on the caller's thread. Each index must write only its own
/// output slot; scheduling never changes results.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace randlink
