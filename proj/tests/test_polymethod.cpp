#include "capkit/ap3.hpp"
#include "capkit/constructions.hpp"
#include "capkit/gf2.hpp"
#include "capkit/polymethod.hpp"
#include "capkit/reference.hpp"
#include "capkit/rng.hpp"

#include "support/biguint.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>

using namespace capkit;

namespace {

F2Set random_f2_set(int n, std::size_t size, std::uint64_t seed) {
    std::vector<std::uint64_t> universe(std::uint64_t{1} << n);
    for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = i;
    Rng rng(seed);
    rng.shuffle(universe);
    universe.resize(std::min(universe.size(), size));
    return F2Set::from_masks(n, std::move(universe));
}

bool vanishes_on(const MultilinearPoly& f, const F2Set& pts) {
    for (auto x : pts.masks())
        if (eval_multilinear(f, x) != 0) return false;
    return true;
}

std::vector<std::uint64_t> basis_monomial_union(const VanishingSpace& v) {
    std::vector<std::uint64_t> all;
    for (const auto& f : v.basis) all.insert(all.end(), f.monomials.begin(), f.monomials.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// span equality via ranks of stacked coefficient vectors
bool same_span(const VanishingSpace& a, const VanishingSpace& b) {
    if (a.dim() != b.dim()) return false;
    const std::size_t cols = std::uint64_t{1} << a.n;
    auto fill = [cols](BitMatrix& m, std::size_t row0, const VanishingSpace& v) {
        for (std::size_t i = 0; i < v.basis.size(); ++i)
            for (auto mono : v.basis[i].monomials) m.set(row0 + i, static_cast<std::size_t>(mono));
        (void)cols;
    };
    BitMatrix stacked(a.dim() + b.dim(), cols);
    fill(stacked, 0, a);
    fill(stacked, a.dim(), b);
    return gf2_rank(std::move(stacked)) == a.dim();
}

void verify_certificate_independent(const ClpBoundCertificate& cert) {
    using testsupport::BigUint;
    const auto row = testsupport::binomial_row(cert.n);
    auto head = [&](int d) {
        BigUint h(0);
        for (int i = 0; i <= d; ++i) h += row[static_cast<std::size_t>(i)];
        return h;
    };
    const BigUint s_max = BigUint::from_decimal(cert.s_max.get_str());
    const BigUint n_star = BigUint::from_decimal(cert.n_star.get_str());
    const BigUint two_n = BigUint::pow2(static_cast<unsigned>(cert.n));
    CHECK(n_star <= head(cert.d_star / 2).times_small(2));
    CHECK(head(cert.d_star) * n_star + s_max > n_star * two_n);
    CHECK(n_star <= two_n);
    CHECK(n_star <= s_max);
}

} // namespace

TEST_SUITE("polymethod") {

TEST_CASE("monomial_count") {
    CHECK(monomial_count(5, 5) == 32);
    CHECK(monomial_count(7, 0) == 1);
    CHECK(monomial_count(4, 2) == 11); // 1 + 4 + 6
    CHECK_THROWS_AS(monomial_count(3, 4), std::invalid_argument);
}

TEST_CASE("eval_multilinear examples") {
    MultilinearPoly zero;
    zero.n = 3;
    CHECK(eval_multilinear(zero, 0b101) == 0);
    CHECK(zero.degree() == 0);

    MultilinearPoly x1x2;
    x1x2.n = 2;
    x1x2.monomials = {0b11};
    CHECK(eval_multilinear(x1x2, 0b11) == 1);
    CHECK(eval_multilinear(x1x2, 0b10) == 0);
    CHECK(x1x2.degree() == 2);
    CHECK_THROWS_AS(eval_multilinear(x1x2, 0b100), std::invalid_argument);
}

TEST_CASE("eval_multilinear matches term-by-term expansion") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        MultilinearPoly f;
        f.n = 6;
        for (std::uint64_t m = 0; m < 64; ++m)
            if (rng.coin()) f.monomials.push_back(m);
        const std::uint64_t x = rng.below(64);
        CHECK(eval_multilinear(f, x) == reference::eval_multilinear_naive(f, x));
    }
}

TEST_CASE("vanishing_space on the empty set") {
    const auto v = vanishing_space(F2Set(2), 1);
    CHECK(v.dim() == 3);
    CHECK(basis_monomial_union(v) == std::vector<std::uint64_t>{0b00, 0b01, 0b10});
}

TEST_CASE("vanishing_space on the full cube is trivial") {
    std::vector<std::uint64_t> all(8);
    for (std::uint64_t i = 0; i < 8; ++i) all[i] = i;
    const auto v = vanishing_space(F2Set::from_masks(3, std::move(all)), 3);
    CHECK(v.dim() == 0);
}

TEST_CASE("vanishing_space two-point example") {
    const auto v = vanishing_space(F2Set::from_masks(2, {0b00, 0b11}), 1);
    REQUIRE(v.dim() == 1);
    CHECK(v.basis[0].monomials == std::vector<std::uint64_t>{0b01, 0b10}); // x1 + x2
}

TEST_CASE("vanishing_space dimension bound and soundness") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 3 + static_cast<int>(seed % 4);
        const auto pts = random_f2_set(n, 1 + seed % (std::uint64_t{1} << n), seed);
        const int d = static_cast<int>(seed % (static_cast<std::uint64_t>(n) + 1));
        const auto v = vanishing_space(pts, d);
        mpz_class lower = monomial_count(n, d) - static_cast<unsigned long>(pts.size());
        CHECK(mpz_cmp_ui(lower.get_mpz_t(), v.dim()) <= 0);
        for (const auto& f : v.basis) {
            CHECK(f.degree() <= d);
            CHECK(!f.zero());
            CHECK(vanishes_on(f, pts));
        }
    }
}

TEST_CASE("both elimination routes produce the same space") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 4 + static_cast<int>(seed % 3);
        const auto pts = random_f2_set(n, (std::uint64_t{1} << n) / 2 + seed % 5, seed + 77);
        const int d = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n));
        const auto direct = detail::vanishing_space_direct(pts, d);
        const auto complement = detail::vanishing_space_complement(pts, d);
        CHECK(same_span(direct, complement));
    }
}

TEST_CASE("vanishing_space dim vs brute-force enumeration (tiny)") {
    // count all coefficient vectors that vanish, which must be 2^dim
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 3, d = 2;
        const auto pts = random_f2_set(n, 1 + seed % 7, seed + 1000);
        const auto v = vanishing_space(pts, d);
        // monomials of degree <= 2 over 3 variables: 1 + 3 + 3 = 7
        std::vector<std::uint64_t> monos;
        for (std::uint64_t m = 0; m < 8; ++m)
            if (std::popcount(m) <= d) monos.push_back(m);
        std::size_t vanishing = 0;
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << monos.size()); ++pick) {
            MultilinearPoly f;
            f.n = n;
            for (std::size_t i = 0; i < monos.size(); ++i)
                if (pick & (std::uint64_t{1} << i)) f.monomials.push_back(monos[i]);
            if (vanishes_on(f, pts)) ++vanishing;
        }
        CHECK(vanishing == (std::size_t{1} << v.dim()));
    }
}

TEST_CASE("min_vanishing_degree") {
    CHECK(min_vanishing_degree(F2Set(3)) == 0);           // constant 1
    CHECK(min_vanishing_degree(F2Set::from_masks(3, {5})) == 1);
    std::vector<std::uint64_t> all(16);
    for (std::uint64_t i = 0; i < 16; ++i) all[i] = i;
    CHECK_THROWS_AS(min_vanishing_degree(F2Set::from_masks(4, std::move(all))),
                    std::invalid_argument);
}

TEST_CASE("min_vanishing_degree matches a dense-elimination scan (n = 6)") {
    const int n = 6;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto pts = random_f2_set(n, 62, seed + 31); // 2^n - 2 points
        const int got = min_vanishing_degree(pts);

        int expect = -1;
        for (int d = 0; d <= n && expect < 0; ++d) {
            std::vector<std::uint64_t> monos;
            for (std::uint64_t m = 0; m < 64; ++m)
                if (std::popcount(m) <= d) monos.push_back(m);
            std::vector<std::vector<std::uint8_t>> rows(
                pts.size(), std::vector<std::uint8_t>(monos.size(), 0));
            for (std::size_t r = 0; r < pts.size(); ++r)
                for (std::size_t c = 0; c < monos.size(); ++c)
                    rows[r][c] = (monos[c] & pts.masks()[r]) == monos[c] ? 1 : 0;
            if (!reference::kernel_basis_dense(std::move(rows), monos.size()).empty()) expect = d;
        }
        CHECK(got == expect);

        // the counting threshold is an upper bound for the minimal degree
        int counting = 0;
        while (monomial_count(n, counting) <= static_cast<long>(pts.size())) ++counting;
        CHECK(got <= counting);
    }
}

TEST_CASE("lemma1 sub-threshold counterexample (n = 1)") {
    const auto rep = lemma1_verify(F2Set::from_masks(1, {0, 1}), 1);
    CHECK(rep.threshold == 2);
    CHECK_FALSE(rep.threshold_met); // |A| = 2 is not > 2
    CHECK(rep.difference_count == 1);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].monomials == std::vector<std::uint64_t>{0, 1}); // 1 + x
}

TEST_CASE("lemma1 holds on seeded instances above the threshold") {
    Rng mix(99);
    int checked = 0;
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(trial % 9); // up to 10
        const int d = static_cast<int>(trial % (static_cast<std::uint64_t>(n) + 1));
        const mpz_class threshold = 2 * monomial_count(n, d / 2);
        if (mpz_cmp_ui(threshold.get_mpz_t(), std::uint64_t{1} << n) >= 0) continue;
        const std::size_t size = threshold.get_ui() + 1 + mix.below(4);
        const auto a = random_f2_set(n, size, trial + 500);
        if (mpz_cmp_ui(threshold.get_mpz_t(), a.size()) >= 0) continue;
        const auto rep = lemma1_verify(a, d);
        CHECK(rep.threshold_met);
        CHECK(rep.violations.empty());
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("clp_disjointness_check against is_ap3_free") {
    // singleton
    CHECK(clp_disjointness_check(Z4PointSet::from_indices(2, {9})));

    // greedy fixtures are free; maximality means any added point breaks them
    const auto g = greedy_ap3_free_z4(3, 7);
    CHECK(is_ap3_free(g));
    CHECK(clp_disjointness_check(g));
    for (std::uint64_t extra = 0; extra < 64; ++extra) {
        if (g.contains(extra)) continue;
        auto idx = g.indices();
        idx.push_back(extra);
        const auto planted = Z4PointSet::from_indices(3, std::move(idx));
        CHECK_FALSE(is_ap3_free(planted));
        CHECK_FALSE(clp_disjointness_check(planted));
    }

    // exhaustive over Z_4^1: all 16 subsets
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < 4; ++i)
            if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
        const auto s = Z4PointSet::from_indices(1, std::move(idx));
        CHECK(clp_disjointness_check(s) == is_ap3_free(s));
    }

    // seeded over Z_4^2
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < 16; ++i)
            if (rng.coin()) idx.push_back(i);
        const auto s = Z4PointSet::from_indices(2, std::move(idx));
        CHECK(clp_disjointness_check(s) == is_ap3_free(s));
    }
}

TEST_CASE("clp_bound at n = 1 refutes nothing") {
    const auto cert = clp_bound(1);
    CHECK(cert.s_max == 4);
    CHECK(cert.exponent == doctest::Approx(1.0));
    verify_certificate_independent(cert);
}

TEST_CASE("clp survival is a prefix of sizes (n <= 5)") {
    for (int n = 1; n <= 5; ++n) {
        const auto cert = clp_bound(n);
        mpz_class space4;
        mpz_ui_pow_ui(space4.get_mpz_t(), 4, static_cast<unsigned long>(n));
        bool prefix = true;
        for (mpz_class s = 1; s <= space4; ++s)
            if (clp_survives_size(n, s) != (s <= cert.s_max)) prefix = false;
        CHECK(prefix);
        verify_certificate_independent(cert);
    }
}

TEST_CASE("clp_bound exponents shrink below 1") {
    const auto c100 = clp_bound(100);
    CHECK(c100.exponent < 1.0);
    CHECK(c100.exponent >= 0.5);
    verify_certificate_independent(c100);

    const auto c50 = clp_bound(50);
    CHECK(c50.exponent < 1.0);
    CHECK(c100.exponent < c50.exponent);
}

TEST_CASE("regularize_slices keeps a dyadic class with enough mass") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(seed);
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < 256; ++i)
            if (rng.below(3) == 0) idx.push_back(i);
        const auto s = Z4PointSet::from_indices(4, std::move(idx));
        const auto rep = regularize_slices(s);
        if (s.empty()) {
            CHECK(rep.chosen_size == 0);
            continue;
        }
        CHECK(rep.retained == rep.kept.size());
        CHECK(std::popcount(rep.chosen_size) == 1);
        // every kept slice has exactly N points, and the kept set is a subset
        for (const auto& sl : coset_decompose(rep.kept))
            CHECK(sl.points.size() == rep.chosen_size);
        for (auto i : rep.kept.indices()) CHECK(s.contains(i));
        // dyadic classes lose at most half of the best class
        CHECK(2 * (static_cast<std::uint64_t>(s.n()) + 1) * rep.retained >= s.size());
    }
}

TEST_CASE("regularize_slices empty input") {
    const auto rep = regularize_slices(Z4PointSet(3));
    CHECK(rep.chosen_size == 0);
    CHECK(rep.retained == 0);
    CHECK(rep.kept.empty());
}

} // TEST_SUITE
