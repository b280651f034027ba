#pragma once

#include <cstddef>
#include <functional>

namespace subplanck {

/// Worker count: SUBPLANCK_THREADS if set and positive, else the hardware
/// concurrency (0 in the variable also means auto).
unsigned worker_count();

/// Calls body(i) for i in [0, n) across worker_count() threads using a fixed
/// static partition. Bodies must only write to per-index storage, so results
/// never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace subplanck
