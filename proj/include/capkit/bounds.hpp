#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace capkit {

// A finite abelian group in invariant-factor form Z_{d1} + ... + Z_{dr},
// d1 | d2 | ... | dr, each di >= 2.  rank = r.
struct AbelianGroupShape {
    std::vector<std::uint64_t> invariant_factors;
};

AbelianGroupShape make_group_shape(std::vector<std::uint64_t> factors);

// rank of 2G = {2g : g in G}: invariant factors di with di / gcd(2, di) > 1.
int rank_2g(const AbelianGroupShape& g);

// floor(2 |G| / rank(2G)); throws std::invalid_argument when rank(2G) = 0
// (the bound is vacuous, e.g. for Z_2^n).
mpz_class lev_bound(const AbelianGroupShape& g);

struct ConstantReport {
    std::string name;
    bool has_value = false;
    long double value = 0.0L;
    std::string value_str; // decimal rendering, empty for formula-only entries
    std::string formula;
    std::string provenance;
};

ConstantReport behrend_constant();       // 2 sqrt(ln 4)
ConstantReport elsholtz_constant();      // 2 sqrt(ln(24/7) ln 2)
ConstantReport naslund_sawin_base();     // 3 / 2^{2/3} = 1.889881574...
ConstantReport asu_base();               // sqrt(1 + 2.7552) = 1.9378...

// Formula-only registry for asymptotic results whose constants are not
// pinned down; throws std::invalid_argument for unknown names.
ConstantReport formula_report(const std::string& name);

// every registry entry, valued constants first
std::vector<ConstantReport> all_reports();

} // namespace capkit
