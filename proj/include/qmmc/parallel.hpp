#ifndef QMMC_PARALLEL_HPP
#define QMMC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qmmc {

// Clamp a requested worker count to [1, hardware_concurrency].
unsigned effective_threads(unsigned requested);

// Run fn(first, last, worker) over contiguous slices of [0, count).
// Workers own disjoint slices; results depend only on the slice contents, so
// output is identical for every worker count. Exceptions are rethrown on the
// calling thread (lowest worker index wins).
void parallel_ranges(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& fn);

}  // namespace qmmc

#endif  // QMMC_PARALLEL_HPP
