#pragma once

#include <cstddef>
#include <functional>

namespace rdk {

/// Worker count used by parallel_for. Defaults to RADKIT_THREADS if set,
/// otherwise the hardware concurrency. Thread-safe to read; set it once
/// at startup.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n). Every index is
/// processed exactly once and writes to distinct outputs, so results do
/// not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace rdk
