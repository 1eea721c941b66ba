#pragma once

#include <cstddef>
#include <functional>

namespace forge {

/// Worker count: hardware concurrency, capped by the FIBRATION_FORGE_THREADS
/// environment variable when set (minimum 1).
int worker_count();

/// Runs fn(i) for i in [0, count). Chunks are distributed over worker
/// threads; results must be written to per-index slots so the outcome does
/// not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace forge
