#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace capkit {

// A subset of the interval [1, N], stored sorted ascending.
struct IntegerSet {
    std::uint64_t limit = 0; // N
    std::vector<std::uint64_t> members;
};

IntegerSet make_integer_set(std::uint64_t limit, std::vector<std::uint64_t> members);

// True iff the set has no x, x+d, x+2d with d >= 1.
bool is_ap3_free(const IntegerSet& s);

// Text format: header "N <value>", then one member per line.
IntegerSet parse_integer_set(std::istream& in);
void emit_integer_set(std::ostream& out, const IntegerSet& s);

} // namespace capkit
