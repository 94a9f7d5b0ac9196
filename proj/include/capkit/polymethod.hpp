#pragma once

#include "capkit/fp.hpp"
#include "capkit/parallel.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace capkit {

// A polynomial over F_2 in n variables whose monomials are all square-free.
// A monomial is the n-bit mask of its variable set; present masks carry
// coefficient 1.  The zero polynomial has degree 0 by convention.
struct MultilinearPoly {
    int n = 0;
    std::vector<std::uint64_t> monomials; // sorted by (popcount, mask)

    int degree() const;
    bool zero() const { return monomials.empty(); }
    bool constant_term() const { return !monomials.empty() && monomials.front() == 0; }
};

// Number of square-free monomials of degree <= d: sum_{i=0}^{d} C(n, i).
mpz_class monomial_count(int n, int d);

// Value of f at x (support mask): parity of the monomials contained in x.
int eval_multilinear(const MultilinearPoly& f, std::uint64_t x);

// The linear space of degree-<= d multilinear polynomials vanishing on a
// prescribed point set, as an explicit basis.
struct VanishingSpace {
    int n = 0;
    int d = 0;
    std::vector<MultilinearPoly> basis;

    std::size_t dim() const { return basis.size(); }
};

// Exact kernel of the evaluation map.  Two elimination routes are kept: a
// coefficient-space route (rows = points) and a value-space route on the
// complement (better when the point set is dense); the cheaper one is chosen
// by size, and both are exact, so the choice never changes the dimension.
VanishingSpace vanishing_space(const F2Set& points, int d, Parallelism par = {});

namespace detail {
// the two routes individually, for cross-checking
VanishingSpace vanishing_space_direct(const F2Set& points, int d, Parallelism par = {});
VanishingSpace vanishing_space_complement(const F2Set& points, int d, Parallelism par = {});
} // namespace detail

// Smallest d with a nonzero degree-<= d multilinear polynomial vanishing on
// `points`.  Throws std::invalid_argument when points == F_2^n.
int min_vanishing_degree(const F2Set& points, Parallelism par = {});

struct Lemma1Report {
    int n = 0;
    int d = 0;
    std::size_t set_size = 0;
    mpz_class threshold;             // 2 * sum_{i <= d/2} C(n, i)
    bool threshold_met = false;
    std::size_t difference_count = 0;
    std::size_t dim = 0;             // vanishing space of the difference set
    std::vector<MultilinearPoly> violations; // basis elements with f(0) != 0
};

// Pairwise-difference harness: D = {a1 ^ a2 : a1 != a2 in a}; every basis
// polynomial of the degree-<= d vanishing space of D is checked at 0.  With
// the threshold |a| > 2 sum_{i <= d/2} C(n, i) met, violations must be empty.
Lemma1Report lemma1_verify(const F2Set& a, int d, Parallelism par = {});

// Slice-level 3AP test over Z_4^n: true iff for every coset slice (t, S_t)
// the restricted sumset of rho(S_t), shifted by rho(2t), misses rho(2*S).
// Equivalent to is_ap3_free(s).
bool clp_disjointness_check(const Z4PointSet& s);

struct ClpBoundCertificate {
    int n = 0;
    int d_star = 0;
    mpz_class n_star;   // surviving slice size
    mpz_class s_max;    // largest |S| not refuted
    double exponent = 0.0; // log_4(s_max) / n
};

// Largest |S| <= 4^n that the dimension-count + difference-set argument does
// not refute.  A set size survives if some admissible slice size N (with
// N * 2^n >= |S| and N <= min(|S|, 2^n)) keeps the minimal polynomial degree
// d = min{d : sum_{i<=d} C(n,i) > 2^n - |S|/N} below the applicability bar
// N <= 2 sum_{i <= d/2} C(n, i).  Binary search over |S|, sweep over d.
ClpBoundCertificate clp_bound(int n);

// survival probe for one set size (the binary search's predicate)
bool clp_survives_size(int n, const mpz_class& size);

// Dyadic regularization report: keeps the slice-size class [2^k, 2^{k+1})
// of maximum retained mass, trimming each kept slice to exactly 2^k points.
struct SliceRegularization {
    int n = 0;
    std::uint64_t chosen_size = 0;  // N (0 for the empty set)
    std::size_t kept_slices = 0;
    std::size_t retained = 0;       // kept_slices * N
    Z4PointSet kept;
    std::vector<std::size_t> class_mass; // total points per dyadic class
};

SliceRegularization regularize_slices(const Z4PointSet& s);

// Serialization: one line per monomial, "mask_hex 1".
void emit_poly(std::ostream& out, const MultilinearPoly& f);
void emit_vanishing_space(std::ostream& out, const VanishingSpace& v);

} // namespace capkit
