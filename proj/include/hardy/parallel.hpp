#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count taken from HARDY_SPECTRA_THREADS (0 or unset = hardware
/// concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, count). Work items are independent, so the
/// result never depends on the schedule. Exceptions thrown by body are
/// rethrown on the calling thread (the one from the lowest index wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hardy
