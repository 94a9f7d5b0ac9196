#pragma once

#include "capkit/fp.hpp"
#include "capkit/parallel.hpp"

#include <cstdint>
#include <vector>

namespace capkit {

// Three-term progressions are triples of pairwise distinct points with
// x + z = 2y in the ambient group.  The empty set is vacuously free.
bool is_ap3_free(const FpPointSet& s);
bool is_ap3_free(const Z4PointSet& s);

// Number of ordered triples (x, y, z) in s^3 with x + z = 2y, including the
// degenerate x = y = z triples.  Equals |s| exactly when s is 3AP-free.
std::uint64_t count_ap3(const FpPointSet& s, Parallelism par = {});

// {a1 + a2 : a1, a2 distinct in a}.
FpPointSet restricted_sumset(const FpPointSet& a);
Z4PointSet restricted_sumset(const Z4PointSet& a);
F2Set restricted_sumset(const F2Set& a);

// {2s : s in S} c {0,2}^n, returned through rho as a subset of F_2^n.
F2Set double_set(const Z4PointSet& s);

// Partition of s by cosets of F_n = {0,2}^n.  The representative of each
// nonempty coset is its unique element with all coordinates in {0,1}; each
// slice holds rho(F_n n (s - t)).  Slices are emitted sorted by t.
std::vector<CosetSlice> coset_decompose(const Z4PointSet& s);

// Inverse of coset_decompose, used by round-trip checks.
Z4PointSet coset_recompose(int n, const std::vector<CosetSlice>& slices);

} // namespace capkit
