#pragma once

#include <cstddef>
#include <functional>

namespace negdep {

// Runs fn(block) for block in [0, nblocks) on up to `threads` workers pulling
// block indices from a shared counter. Blocks are a fixed decomposition of
// the work, so numeric results cannot depend on the worker count; the first
// exception thrown by any block is rethrown to the caller.
void parallel_for_blocks(std::size_t nblocks, int threads,
                         const std::function<void(std::size_t)>& fn);

}  // namespace negdep
