#pragma once

#include <functional>

namespace igamcf {

/// Number of worker threads used by element loops. Defaults to 1.
int thread_count();
void set_thread_count(int n);

/// Calls body(chunk, begin, end) for `chunks` contiguous slices of [0, n).
/// Slices are fixed by (n, chunks) alone, so callers that merge per-chunk
/// results in chunk order get the same bits for any thread count.
void parallel_chunks(int n, int chunks, const std::function<void(int chunk, int begin, int end)>& body);

}  // namespace igamcf
