#pragma once

#include <cstdint>
#include <functional>

namespace distfree {

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Indices are handed out in contiguous blocks; the body must
/// only write to its own slot. If body throws, remaining work is abandoned
/// and one of the exceptions is rethrown once every worker has stopped.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body);

}  // namespace distfree
