#pragma once

// OpenMP plumbing shared by the Monte-Carlo kernels. Work is cut into
// fixed-size blocks independent of the thread count; each work item (or
// shot block) draws from its own rng.split stream and partial results are
// reduced in block order, so the parallel kernels return the same value for
// any number of threads.

#include <cstddef>

namespace bargmann::parallel {

/// Threads available to the kernels (1 when built without OpenMP).
int max_threads();

/// Caps the worker count used by subsequent kernels; 0 restores the default.
void set_threads(int n);

constexpr std::size_t block_count(std::size_t items, std::size_t block) {
  return (items + block - 1) / block;
}

}  // namespace bargmann::parallel
