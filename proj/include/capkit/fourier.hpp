#pragma once

#include "capkit/fp.hpp"
#include "capkit/parallel.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace capkit {

// Character sums of a set indicator: values[gamma] = sum_{x in S} w^{gamma.x}
// with w = exp(2*pi*i/p).  values[0] is exactly |S|.
struct CharacterTable {
    int p = 3;
    int n = 0;
    std::vector<std::complex<double>> values; // indexed by frequency index

    const std::complex<double>& at(std::uint64_t gamma) const { return values[gamma]; }
};

// Evaluated axis by axis (tensor decomposition of the transform), so the
// work is O(n p^n) instead of O(p^{2n}).  Lines along an axis are
// independent, which keeps the OpenMP path bit-identical to the serial one.
CharacterTable dft(const FpPointSet& s, Parallelism par = {},
                   std::uint64_t space_cap = kDefaultSpaceCap);

// Sum of |values[gamma]|^2; equals p^n |S| by Parseval.
double parseval_sum(const CharacterTable& t);

// #{(x,y,z) in S^3 : x + z = 2y} through the identity
//   count = p^{-n} sum_gamma S^(gamma)^2 S^(-2 gamma),
// rounded to the nearest integer.  Throws NumericsError if the rounding
// residue exceeds 1e-3.
std::uint64_t count_ap3_fourier(const FpPointSet& s, Parallelism par = {},
                                std::uint64_t space_cap = kDefaultSpaceCap);

// Densest affine hyperplane {x : gamma.x = c}.  Directions are scanned up to
// scalar equivalence (first nonzero coordinate fixed to 1); ties break to
// the lexicographically smallest direction, then the smallest level.
struct IncrementCertificate {
    std::vector<std::uint8_t> direction; // gamma, nonzero
    int level = 0;                       // c
    std::uint64_t density_num = 0;       // |S n H|
    std::uint64_t density_den = 1;       // p^{n-1}
    std::uint64_t baseline_num = 0;      // |S|
    std::uint64_t baseline_den = 1;      // p^n
};

// Requires 1 <= |s| < p^n and n >= 1; the returned density is always >= the
// baseline density |S|/p^n (pigeonhole over the p levels).
IncrementCertificate best_affine_hyperplane(const FpPointSet& s, Parallelism par = {});

} // namespace capkit
