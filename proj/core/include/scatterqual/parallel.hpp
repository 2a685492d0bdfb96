#pragma once

#include <cstddef>
#include <functional>

namespace scatterqual {

/// Process-wide default worker count; 0 means hardware concurrency.
/// The CLI harness owns this; library calls with threads = 0 pick it up.
void set_default_threads(int n);
int default_threads();

/// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, count).
/// Chunk boundaries depend only on `count` and `chunk`, never on the thread
/// count, so chunk-local accumulations combined in chunk order give identical
/// results for every --threads setting.
void parallel_chunks(std::size_t count, std::size_t chunk, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Runs fn(i) for i in [0, count) with results written to caller-owned slots.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace scatterqual
