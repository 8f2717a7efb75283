#ifndef WQED_PARALLEL_HPP
#define WQED_PARALLEL_HPP

#include <functional>

namespace wqed {

// Number of worker threads: hardware concurrency capped by WQED_THREADS.
int worker_count();

// Run fn(begin, end) over [0, n) split across workers; fn must write only to
// disjoint slots so the merge stays deterministic. Work is kept on the
// calling thread below `grain` items.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t grain = 1024);

} // namespace wqed

#endif
