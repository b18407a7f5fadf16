#ifndef GERBECALC_PARALLEL_HPP
#define GERBECALC_PARALLEL_HPP

#include <functional>

namespace gerbecalc {

/// Worker count: hardware concurrency, capped by GERBECALC_THREADS when set.
int worker_count();

/// Runs body(i) for i in [0, n); each index is visited exactly once. The first
/// exception thrown by any worker is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace gerbecalc

#endif
