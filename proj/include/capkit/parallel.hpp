#pragma once

namespace capkit {

// Execution context handed from the CLI down to the kernels.  threads == 1
// selects the serial path everywhere; larger values enable the OpenMP
// kernels.  Every parallel kernel in this project reduces deterministically,
// so results do not depend on scheduling (search results additionally key on
// whether the root frontier was split, see search.hpp).
struct Parallelism {
    int threads = 1;

    bool parallel() const { return threads > 1; }
};

} // namespace capkit
