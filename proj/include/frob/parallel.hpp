#pragma once

#include <cstddef>
#include <functional>

namespace frob {

// Honors FROB_THREADS when set, otherwise the OpenMP default.
void configure_threads_from_env();

int worker_count();

// OpenMP work-sharing loop; bodies must be independent. Exceptions thrown by
// the body are rethrown on the calling thread after the loop completes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Serial reference with identical semantics, kept for differential testing
// and benchmarking against the OpenMP path.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace frob
