#include "capkit/ap3.hpp"
#include "capkit/fp.hpp"
#include "capkit/reference.hpp"
#include "capkit/rng.hpp"

#include <doctest.h>

#include <sstream>

using namespace capkit;

namespace {

FpPointSet fp_set(int p, int n, std::vector<std::uint64_t> idx) {
    return FpPointSet::from_indices(p, n, std::move(idx));
}

FpPointSet random_fp_subset(int p, int n, std::uint64_t seed, std::uint32_t keep_one_in) {
    Rng rng(seed);
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < fp_space_size(p, n); ++i)
        if (rng.below(keep_one_in) == 0) idx.push_back(i);
    return fp_set(p, n, std::move(idx));
}

Z4PointSet random_z4_subset(int n, std::uint64_t seed, std::uint32_t keep_one_in) {
    Rng rng(seed);
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i)
        if (rng.below(keep_one_in) == 0) idx.push_back(i);
    return Z4PointSet::from_indices(n, std::move(idx));
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("vector validation") {
    CHECK_THROWS_AS(FpVector(2, {0, 1}), std::invalid_argument);  // p = 2 rejected
    CHECK_THROWS_AS(FpVector(9, {0, 1}), std::invalid_argument);  // composite
    CHECK_THROWS_AS(FpVector(3, {0, 3}), std::invalid_argument);  // coordinate range
    CHECK_NOTHROW(FpVector(3, {0, 2, 1}));
    CHECK_THROWS_AS(Z4Vector(2, {0, 4}), std::invalid_argument);
}

TEST_CASE("index round trips keep lexicographic order") {
    std::uint8_t d[4];
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < fp_space_size(5, 3); ++i) {
        fp_decode(i, 5, 3, d);
        CHECK(fp_encode(d, 5, 3) == i);
        if (i > 0) CHECK(i > prev);
        prev = i;
    }
    for (std::uint64_t i = 0; i < 256; ++i) {
        std::uint8_t z[4];
        z4_decode(i, 4, z);
        CHECK(z4_encode(z, 4) == i);
    }
}

TEST_CASE("z4 word arithmetic matches digitwise reference") {
    const int n = 5;
    Rng rng(1);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t a = rng.below(std::uint64_t{1} << (2 * n));
        const std::uint64_t b = rng.below(std::uint64_t{1} << (2 * n));
        std::uint8_t da[8], db[8], ds[8];
        z4_decode(a, n, da);
        z4_decode(b, n, db);
        for (int i = 0; i < n; ++i) ds[i] = static_cast<std::uint8_t>((da[i] + db[i]) % 4);
        CHECK(z4_add(a, b, n) == z4_encode(ds, n));
        for (int i = 0; i < n; ++i) ds[i] = static_cast<std::uint8_t>((4 - da[i]) % 4);
        CHECK(z4_neg(a, n) == z4_encode(ds, n));
        for (int i = 0; i < n; ++i) ds[i] = static_cast<std::uint8_t>((2 * da[i]) % 4);
        CHECK(z4_double(a, n) == z4_encode(ds, n));
    }
}

TEST_CASE("rho is a group isomorphism (exhaustive, n <= 8)") {
    for (int n = 1; n <= 8; ++n) {
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
                const std::uint64_t fu = z4_unrho(u, n), fv = z4_unrho(v, n);
                CHECK(z4_rho(z4_add(fu, fv, n), n) == (u ^ v));
            }
        }
    }
}

TEST_CASE("is_ap3_free examples") {
    CHECK(is_ap3_free(fp_set(3, 1, {})));          // vacuous
    CHECK_FALSE(is_ap3_free(fp_set(3, 1, {0, 1, 2})));
    // {(0,0),(0,1),(1,0),(1,1)} in F_3^2
    const auto cap = fp_set(3, 2, {0, 1, 3, 4});
    CHECK(is_ap3_free(cap));
    CHECK(reference::is_ap3_free_triple_loop(cap));
}

TEST_CASE("is_ap3_free agrees with the triple loop on random sets") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto s = random_fp_subset(3, 3, seed, 3);
        CHECK(is_ap3_free(s) == reference::is_ap3_free_triple_loop(s));
        const auto z = random_z4_subset(2, seed, 3);
        CHECK(is_ap3_free(z) == reference::is_ap3_free_triple_loop(z));
    }
}

TEST_CASE("count_ap3 examples and oracle") {
    CHECK(count_ap3(fp_set(3, 1, {0, 1, 2})) == 9); // p^(2n): z determined by (x, y)
    CHECK(count_ap3(fp_set(3, 2, {4})) == 1);       // degenerate triple only
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = random_fp_subset(3, 4, seed, 6);
        CHECK(count_ap3(s) == reference::count_ap3_triple_loop(s));
    }
}

TEST_CASE("ap3-free iff count equals size") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = random_fp_subset(5, 2, seed, 3);
        CHECK(is_ap3_free(s) == (count_ap3(s) == s.size()));
    }
}

TEST_CASE("restricted_sumset examples") {
    CHECK(restricted_sumset(fp_set(3, 1, {2})).empty());
    const auto s01 = restricted_sumset(fp_set(3, 1, {0, 1}));
    CHECK(s01.indices() == std::vector<std::uint64_t>{1});
    const auto s012 = restricted_sumset(fp_set(5, 1, {0, 1, 2}));
    CHECK(s012.indices() == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("restricted_sumset size bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = random_fp_subset(3, 3, seed, 4);
        const auto sums = restricted_sumset(a);
        CHECK(sums.size() <= a.size() * (a.size() + 1) / 2);
        if (a.size() < 2) CHECK(sums.empty());
    }
}

TEST_CASE("double_set examples and oracle") {
    // {(1,3)}: doubling gives (2,2), rho maps to (1,1)
    const auto one = Z4PointSet::from_points(2, {Z4Vector(2, {1, 3})});
    CHECK(double_set(one).masks() == std::vector<std::uint64_t>{3});
    const auto zero = Z4PointSet::from_points(2, {Z4Vector(2, {0, 0})});
    CHECK(double_set(zero).masks() == std::vector<std::uint64_t>{0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_z4_subset(3, seed, 3);
        std::vector<std::uint64_t> expect;
        for (const auto& v : s.points()) {
            std::uint64_t mask = 0;
            for (int i = 0; i < 3; ++i)
                if ((2 * v.coords[static_cast<std::size_t>(i)]) % 4 == 2)
                    mask |= std::uint64_t{1} << (2 - i);
            expect.push_back(mask);
        }
        CHECK(double_set(s) == F2Set::from_masks(3, std::move(expect)));
    }
}

TEST_CASE("coset_decompose examples") {
    // {(0),(2)} in Z_4^1: one slice at t = (0) with points {0, 1}
    const auto even = Z4PointSet::from_indices(1, {0, 2});
    auto slices = coset_decompose(even);
    REQUIRE(slices.size() == 1);
    CHECK(slices[0].t.coords == std::vector<std::uint8_t>{0});
    CHECK(slices[0].points.masks() == std::vector<std::uint64_t>{0, 1});

    // {(1),(3)}: t = (1), same slice points
    const auto odd = Z4PointSet::from_indices(1, {1, 3});
    slices = coset_decompose(odd);
    REQUIRE(slices.size() == 1);
    CHECK(slices[0].t.coords == std::vector<std::uint8_t>{1});
    CHECK(slices[0].points.masks() == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("coset_decompose partitions and reconstructs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto s = random_z4_subset(3, seed, 3);
        const auto slices = coset_decompose(s);
        std::size_t total = 0;
        for (const auto& sl : slices) {
            total += sl.points.size();
            // representative has all coordinates in {0,1}
            for (auto c : sl.t.coords) CHECK(c <= 1);
        }
        CHECK(total == s.size());
        CHECK(coset_recompose(3, slices) == s);
    }
}

TEST_CASE("slice-level disjointness mirrors 3AP-freeness (random, n <= 4)") {
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto s = random_z4_subset(n, seed, 4);
            const auto doubled = double_set(s);
            bool disjoint = true;
            for (const auto& sl : coset_decompose(s)) {
                const std::uint64_t shift = z4_rho(z4_double(sl.t.index(), n), n);
                for (auto v : restricted_sumset(sl.points).masks())
                    if (doubled.contains(v ^ shift)) disjoint = false;
            }
            CHECK(disjoint == is_ap3_free(s));
        }
    }
}

TEST_CASE("point-set file round trip") {
    const auto s = fp_set(3, 2, {0, 1, 3, 4});
    std::ostringstream out;
    emit_point_set(out, s);
    std::istringstream in(out.str());
    const auto parsed = parse_point_set(in);
    REQUIRE(parsed.kind == PointSetKind::Fp);
    CHECK(parsed.fp == s);

    const auto z = Z4PointSet::from_indices(2, {1, 7, 11});
    std::ostringstream zout;
    emit_point_set(zout, z);
    std::istringstream zin(zout.str());
    const auto zparsed = parse_point_set(zin);
    REQUIRE(zparsed.kind == PointSetKind::Z4);
    CHECK(zparsed.z4 == z);
}

TEST_CASE("point-set parser rejects bad input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_point_set(in);
    };
    CHECK_THROWS_AS(parse("3 2\n0 0\n0 0\n"), std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(parse("2 2\n0 0\n"), std::invalid_argument);       // p = 2
    CHECK_THROWS_AS(parse("3 2\n0\n"), std::invalid_argument);         // arity
    CHECK_THROWS_AS(parse("3 2\n0 3\n"), std::invalid_argument);       // range
    CHECK_THROWS_AS(parse(""), std::invalid_argument);                 // empty
    CHECK_NOTHROW(parse("# comment\n3 2\n# another\n0 1\n"));
}

} // TEST_SUITE
