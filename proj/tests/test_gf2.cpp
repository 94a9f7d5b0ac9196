#include "capkit/gf2.hpp"
#include "capkit/reference.hpp"
#include "capkit/rng.hpp"

#include <doctest.h>

using namespace capkit;

namespace {

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, int density) {
    BitMatrix m(rows, cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng.below(static_cast<std::uint64_t>(density)) == 0) m.set(r, c);
    return m;
}

std::vector<std::vector<std::uint8_t>> unpack(const BitMatrix& m) {
    std::vector<std::vector<std::uint8_t>> rows(m.rows(), std::vector<std::uint8_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.get(r, c) ? 1 : 0;
    return rows;
}

bool in_kernel(const BitMatrix& m, const std::vector<std::uint64_t>& v) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        int parity = 0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c) && ((v[c / 64] >> (c % 64)) & 1u)) parity ^= 1;
        if (parity) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("gf2") {

TEST_CASE("kernel dimension and membership vs dense reference") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t rows = 3 + seed % 20, cols = 4 + (seed * 7) % 25;
        const auto m = random_matrix(rows, cols, seed, 3);
        const auto kernel = gf2_kernel_basis(m);
        const auto ref = reference::kernel_basis_dense(unpack(m), cols);
        CHECK(kernel.size() == ref.size());
        for (const auto& v : kernel) CHECK(in_kernel(m, v));
        CHECK(gf2_rank(m) == cols - kernel.size());
    }
}

TEST_CASE("zero and identity edge cases") {
    BitMatrix zero(4, 6);
    CHECK(gf2_rank(zero) == 0);
    CHECK(gf2_kernel_basis(zero).size() == 6);

    BitMatrix eye(5, 5);
    for (std::size_t i = 0; i < 5; ++i) eye.set(i, i);
    CHECK(gf2_rank(eye) == 5);
    CHECK(gf2_kernel_basis(eye).empty());
}

TEST_CASE("empty-row matrix has full kernel") {
    BitMatrix none(0, 7);
    CHECK(gf2_kernel_basis(none).size() == 7);
}

TEST_CASE("parallel elimination is bit-identical to serial") {
    for (std::uint64_t seed = 100; seed < 104; ++seed) {
        const auto m = random_matrix(300, 300, seed, 2);
        const auto serial = gf2_kernel_basis(m, {1});
        const auto parallel = gf2_kernel_basis(m, {4});
        CHECK(serial == parallel);
    }
}

} // TEST_SUITE
