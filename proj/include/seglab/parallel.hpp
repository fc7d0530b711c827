#ifndef SEGLAB_PARALLEL_HPP
#define SEGLAB_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace seglab {

/// Worker-pool width: SEGLAB_THREADS when set (clamped to >= 1), otherwise
/// the hardware concurrency.
int thread_budget();

/// Runs fn(0), ..., fn(count - 1) on up to `threads` workers. Tasks must be
/// independent; any task exception is rethrown on the caller after all
/// workers finish.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& fn,
                  int threads = thread_budget());

}  // namespace seglab

#endif  // SEGLAB_PARALLEL_HPP
