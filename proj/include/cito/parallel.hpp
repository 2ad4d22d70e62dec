#pragma once

#include <functional>

namespace cito {

// Worker cap: CITO_WORKERS env var if set, else hardware concurrency.
int default_workers();

// Runs fn(i) for i in [0, n). Work items must communicate results only
// through disjoint output slots so the outcome is independent of
// scheduling. Exceptions are rethrown for the lowest failing index.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace cito
