#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace campanato {

// Worker count for parallel_for: hardware concurrency clamped to [1, 16],
// further capped by the CAMPANATO_THREADS environment variable when set.
unsigned thread_count();

// Runs fn(i) for every i in [0, n), splitting the range into contiguous
// chunks, one per worker.  Callers must write results into per-index slots;
// reductions happen afterwards on the caller side, so the outcome is
// independent of the number of threads.  The first exception thrown by any
// worker is rethrown here.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (cascade) summation.  Deterministic for a fixed input order and
// considerably more accurate than a running sum on long quadrature vectors.
double pairwise_sum(std::span<const double> xs);

}  // namespace campanato
