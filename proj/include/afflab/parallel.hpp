#pragma once

#include <cstdint>
#include <functional>

namespace afflab {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(chunk) for chunk in [0, chunks) on the worker pool. Chunks are
/// handed out dynamically, so body must not depend on which thread runs it.
void parallel_chunks(std::uint64_t chunks, const std::function<void(std::uint64_t)>& body);

}  // namespace afflab
