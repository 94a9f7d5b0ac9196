#pragma once

#include "capkit/fp.hpp"
#include "capkit/parallel.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace capkit {

// Value of prod_i (1 - (x_i + y_i + z_i)^2) over F_3 at three points of
// F_3^n (point indices).  Always 0 or 1; equals 1 exactly when x + y + z = 0.
int diagonal_tensor_value(int n, std::uint64_t x, std::uint64_t y, std::uint64_t z);

// The tensor restricted to A^3.  Materialized densely for |A| <= 200 points,
// formula-backed above that.
class Tensor3 {
public:
    static Tensor3 on_set(const FpPointSet& domain);

    const FpPointSet& domain() const { return domain_; }
    // positions index into domain().indices()
    int value(std::size_t xi, std::size_t yi, std::size_t zi) const;
    bool materialized() const { return !dense_.empty(); }

private:
    FpPointSet domain_;
    std::vector<std::uint8_t> dense_; // |A|^3 entries when materialized
};

Tensor3 diagonal_tensor(const FpPointSet& s);

// True iff the tensor restricted to s^3 is the diagonal indicator
// (1 exactly when x = y = z); equals is_ap3_free(s) for p = 3.
bool diagonal_check(const FpPointSet& s);

// One rank-one slice g(axis) * h(other two), tabulated as functions.
struct Slice {
    int axis = 0;                         // 0 = x, 1 = y, 2 = z
    std::vector<std::uint8_t> univariate; // 3^n values, indexed by point
    std::vector<std::uint8_t> bivariate;  // 3^{2n} values, index a*3^n + b
};

struct SliceDecomposition {
    int n = 0;
    std::vector<Slice> slices;

    // pointwise sum of the slices at (x, y, z)
    int value(std::uint64_t x, std::uint64_t y, std::uint64_t z) const;
};

// Expands the product tensor into monomials (exponents in {0,1,2}) and
// groups them by the first block of degree <= 2n/3, in axis order x, y, z;
// monomials sharing a univariate factor merge into one slice.  The slice
// count is bounded by multinomial_bound(n, 3).
SliceDecomposition slice_decompose(int n, int n_cap = 4, Parallelism par = {});

// The |A|-slice decomposition of the diagonal tensor on A^3: one x-slice
// g = 1_{x=a}, h = 1_{y=a, z=a} per element.  Witnesses the upper-bound
// direction of the slice-rank of the diagonal.
SliceDecomposition diagonal_decomposition(const FpPointSet& a);

struct MultinomialBound {
    int n = 0;
    int p = 3;
    mpz_class value;            // 3 * #{monomial blocks of degree <= (p-1)n/3}
    double exponent_base = 0.0; // value^{1/n}
};

// Exact big-integer count: p = 3 enumerates compositions (a, b, c) with
// b + 2c <= 2n/3; general p counts exponent strings over {0..p-1} with
// digit sum <= (p-1)n/3 by a rolling-window DP.  Both routes are exact and
// cross-check each other in the tests.
MultinomialBound multinomial_bound(int n, int p, Parallelism par = {});

struct SliceExponentResult {
    int p = 3;
    double base = 0.0;  // lim value^{1/n}
    double kappa = 0.0; // log_p(base)
};

// Constrained entropy maximum: distributions on exponents {0..p-1} with mean
// at most (p-1)/3.  The stationarity condition q_j proportional to x^j is
// solved for x by bisection with exact rational sign evaluation.
SliceExponentResult slice_exponent(int p);

} // namespace capkit
