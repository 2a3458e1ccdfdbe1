#pragma once

#include <cstddef>
#include <functional>

namespace wiretap {

/// Worker count: `requested` if non-zero, else WIRETAP_THREADS if set and
/// non-zero, else the hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

/// Splits [0, count) into contiguous chunks and runs body(begin, end, chunk)
/// on up to `threads` workers. Chunk boundaries depend only on `count` and
/// `threads`; callers must combine per-chunk results order-independently.
void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Runs body(i) for i in [0, count) on up to `threads` workers, claiming
/// indices dynamically.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace wiretap
