#pragma once

#include <cstddef>
#include <functional>

namespace randsvd {

/// Set the kernel worker-thread budget (1 = fully sequential, the default).
/// Kernels only ever split work into disjoint output ranges with a fixed
/// per-element evaluation order, so results are bit-identical for any
/// thread count.
void set_max_threads(unsigned n);

unsigned max_threads();

/// Run body(begin, end) over [0, count) split into contiguous chunks,
/// one chunk per worker. Falls back to a single direct call when the
/// budget is 1 or the range is small.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace randsvd
