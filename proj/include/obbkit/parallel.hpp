#pragma once

#include <cstddef>
#include <functional>

namespace obbkit {

/// Worker count used by commands that fan out over independent work items.
/// The OBBKIT_WORKERS environment variable overrides the requested value;
/// requests <= 0 fall back to the hardware concurrency.
int resolve_workers(int requested);

/// Runs chunk_fn over contiguous index ranges covering [0, count) on up to
/// `workers` threads. Chunk boundaries are deterministic; callers that need
/// deterministic results write per-index outputs and reduce serially.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t begin, std::size_t end)>& chunk_fn);

}  // namespace obbkit
