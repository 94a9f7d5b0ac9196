#pragma once

#include "capkit/fp.hpp"
#include "capkit/intset.hpp"
#include "capkit/polymethod.hpp"
#include "capkit/search.hpp"

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <vector>

namespace capkit::reference {

// Definitional serial implementations.  These are the oracles the fast
// kernels are tested against (and the baselines the benchmark compares);
// nothing in the production paths calls into this namespace.

// ordered triples x + z = 2y by the three-loop definition
std::uint64_t count_ap3_triple_loop(const FpPointSet& s);

bool is_ap3_free_triple_loop(const FpPointSet& s);
bool is_ap3_free_triple_loop(const Z4PointSet& s);

// character sums straight from the definition, O(p^{2n})
std::vector<std::complex<double>> dft_direct(const FpPointSet& s);

// exhaustive hyperplane scan over every nonzero direction (no scalar
// deduplication); returns the maximum point count on any affine hyperplane
std::uint64_t best_hyperplane_count_exhaustive(const FpPointSet& s);

// textbook dense elimination over F_2 on unpacked rows
std::vector<std::vector<std::uint8_t>> kernel_basis_dense(
    std::vector<std::vector<std::uint8_t>> rows, std::size_t cols);

// term-by-term multilinear evaluation (no containment shortcut)
int eval_multilinear_naive(const MultilinearPoly& f, std::uint64_t x);

// 3 * sum of multinomials by direct recursive enumeration of exponent
// count vectors; feasible for small n only
mpz_class multinomial_bound_enumerated(int n, int p);

// full subset enumeration maxima (tiny universes only)
std::size_t max_ap3_free_enumerated(int p, int n);
std::size_t max_ap3_free_interval_enumerated(std::uint64_t limit);
std::size_t max_sunflower_free_enumerated(int n);

} // namespace capkit::reference
