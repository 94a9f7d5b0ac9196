#pragma once

#include "capkit/fp.hpp"
#include "capkit/intset.hpp"
#include "capkit/parallel.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace capkit {

// A family of subsets of {1..n}, each member an n-bit mask (bit i-1 = i).
struct SetFamily {
    int n = 0;
    std::vector<std::uint64_t> members; // sorted, duplicate-free, < 2^n
};

SetFamily make_set_family(int n, std::vector<std::uint64_t> members);

// True iff no triple of pairwise distinct members has all three pairwise
// intersections equal.
bool is_sunflower_free(const SetFamily& f);

// Text format: header "n <value>", then one hexadecimal mask per line.
SetFamily parse_set_family(std::istream& in);
void emit_set_family(std::ostream& out, const SetFamily& f);

template <typename Witness>
struct SearchResult {
    std::size_t size = 0;
    Witness witness;
    std::uint64_t nodes_explored = 0;
    bool proven_optimal = false;
};

struct SearchOptions {
    std::uint64_t budget = 0; // node limit, 0 = unlimited
    std::uint64_t seed = 0;   // seeds the greedy incumbent restarts
    Parallelism par{};
};

// Exact branch and bound over lexicographic element inclusion with a seeded
// randomized-greedy incumbent and 3AP constraint propagation: including x
// removes every candidate that would complete a progression with two chosen
// points.  If the node budget is not exhausted the result is the exact
// maximum and proven_optimal is set.
//
// With par.threads > 1 the root frontier is split into one task per first
// chosen element; tasks are fully independent (each gets an equal share of
// the budget), so size and optimality do not depend on scheduling, and the
// witness is deterministic for any fixed thread count.
SearchResult<FpPointSet> max_ap3_free(int p, int n, const SearchOptions& opts = {},
                                      std::uint64_t space_cap = kDefaultSpaceCap);

SearchResult<IntegerSet> max_ap3_free_interval(std::uint64_t limit,
                                               const SearchOptions& opts = {});

SearchResult<SetFamily> max_sunflower_free(int n, const SearchOptions& opts = {},
                                           std::uint64_t family_cap = 16);

} // namespace capkit
