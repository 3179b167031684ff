#ifndef MFG_PARALLEL_HPP
#define MFG_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mfg {

// Thread count used by parallel_for: MFG_THREADS when set, else hardware
// concurrency, at least 1.
int worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads. Each index must
// write only to its own output slot, so results are identical for any
// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mfg

#endif  // MFG_PARALLEL_HPP
