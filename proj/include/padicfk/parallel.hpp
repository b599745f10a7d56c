#pragma once

#include <cstdint>
#include <functional>

namespace padicfk {

// Runs fn(i) for i in [0, count) on `threads` workers over contiguous chunks.
// Each index must write only to its own preallocated slot; reductions happen
// after the join, in index order, so results are identical for any thread
// count. threads <= 1 runs inline.
void parallel_for(long long count, int threads, const std::function<void(long long)>& fn);

// Thread count resolution: explicit argument if > 0, else the PADIC_FK_THREADS
// environment variable, else 1.
int resolve_threads(int requested);

} // namespace padicfk
