#ifndef NENKF_PARALLEL_HPP
#define NENKF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nenkf {

// Static-partition parallel loop over [0, n). body(i) must only touch
// state owned by index i; numerical results are then independent of the
// worker count. threads <= 1 runs inline; threads == 0 uses the hardware
// concurrency. Exceptions thrown by body are captured and rethrown (the
// first one, by index order) on the calling thread.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

int resolve_thread_count(int threads);

}  // namespace nenkf

#endif  // NENKF_PARALLEL_HPP
