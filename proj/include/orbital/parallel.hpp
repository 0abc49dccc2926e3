#pragma once

#include <cstddef>
#include <functional>

namespace orbital {

// Upper bound on worker threads used by the library. 0 restores the
// hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(b) for b in [0, blocks). Blocks are claimed dynamically, so
// callers must write results into per-block slots and reduce them in block
// order afterwards; output then does not depend on the thread count.
void parallel_for_blocks(std::size_t blocks,
                         const std::function<void(std::size_t)>& body);

}  // namespace orbital
