#pragma once

#include "capkit/fp.hpp"
#include "capkit/intset.hpp"
#include "capkit/parallel.hpp"

#include <cstdint>

namespace capkit {

// Behrend digit-sphere construction: for each base D in {2 .. ceil(e^sqrt(ln N)) + 2}
// and each squared radius r, the integers in [1, N] whose base-D digits all
// lie in [0, ceil(D/2)) and have squared norm exactly r.  Digit sums never
// carry in that range, so sphere membership rules out progressions; the
// output is re-verified by the exact checker anyway.  Largest bucket wins,
// ties to smallest D then smallest r.
IntegerSet behrend_set(std::uint64_t limit, Parallelism par = {});

// Seeded random-order greedy fixture generators: keep a point iff it
// completes no progression with the kept points.  Output is maximal.
FpPointSet greedy_ap3_free(int p, int n, std::uint64_t seed,
                           std::uint64_t space_cap = kDefaultSpaceCap);
Z4PointSet greedy_ap3_free_z4(int n, std::uint64_t seed,
                              std::uint64_t space_cap = kDefaultSpaceCap);

} // namespace capkit
