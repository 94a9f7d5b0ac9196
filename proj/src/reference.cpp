#include "capkit/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capkit::reference {

std::uint64_t count_ap3_triple_loop(const FpPointSet& s) {
    const auto& idx = s.indices();
    const int p = s.p(), n = s.n();
    std::uint64_t count = 0;
    for (auto x : idx)
        for (auto y : idx)
            for (auto z : idx)
                if (fp_add(x, z, p, n) == fp_scale(y, 2, p, n)) ++count;
    return count;
}

bool is_ap3_free_triple_loop(const FpPointSet& s) {
    const auto& idx = s.indices();
    const int p = s.p(), n = s.n();
    for (auto x : idx)
        for (auto y : idx)
            for (auto z : idx) {
                if (x == y || y == z || x == z) continue;
                if (fp_add(x, z, p, n) == fp_scale(y, 2, p, n)) return false;
            }
    return true;
}

bool is_ap3_free_triple_loop(const Z4PointSet& s) {
    const auto& idx = s.indices();
    const int n = s.n();
    for (auto x : idx)
        for (auto y : idx)
            for (auto z : idx) {
                if (x == y || y == z || x == z) continue;
                if (z4_add(x, z, n) == z4_double(y, n)) return false;
            }
    return true;
}

std::vector<std::complex<double>> dft_direct(const FpPointSet& s) {
    const int p = s.p(), n = s.n();
    const std::uint64_t space = fp_space_size(p, n);
    std::vector<std::complex<double>> out(space);
    std::uint8_t gd[kMaxDim], xd[kMaxDim];
    for (std::uint64_t g = 0; g < space; ++g) {
        fp_decode(g, p, n, gd);
        std::complex<double> acc{0.0, 0.0};
        for (auto x : s.indices()) {
            fp_decode(x, p, n, xd);
            int dot = 0;
            for (int i = 0; i < n; ++i) dot += gd[i] * xd[i];
            const double a = 2.0 * std::numbers::pi * (dot % p) / p;
            acc += std::complex<double>{std::cos(a), std::sin(a)};
        }
        out[g] = acc;
    }
    return out;
}

std::uint64_t best_hyperplane_count_exhaustive(const FpPointSet& s) {
    const int p = s.p(), n = s.n();
    const std::uint64_t space = fp_space_size(p, n);
    std::uint64_t best = 0;
    std::uint8_t gd[kMaxDim], xd[kMaxDim];
    for (std::uint64_t g = 1; g < space; ++g) {
        fp_decode(g, p, n, gd);
        std::vector<std::uint64_t> buckets(static_cast<std::size_t>(p), 0);
        for (auto x : s.indices()) {
            fp_decode(x, p, n, xd);
            int dot = 0;
            for (int i = 0; i < n; ++i) dot += gd[i] * xd[i];
            ++buckets[static_cast<std::size_t>(dot % p)];
        }
        for (auto c : buckets) best = std::max(best, c);
    }
    return best;
}

std::vector<std::vector<std::uint8_t>> kernel_basis_dense(
    std::vector<std::vector<std::uint8_t>> rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
        std::size_t pr = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r)
            if (rows[r][c]) {
                pr = r;
                break;
            }
        if (pr == rows.size()) continue;
        std::swap(rows[next], rows[pr]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next || !rows[r][c]) continue;
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[next][k];
        }
        pivot_cols.push_back(c);
        ++next;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

int eval_multilinear_naive(const MultilinearPoly& f, std::uint64_t x) {
    int acc = 0;
    for (auto m : f.monomials) {
        int term = 1;
        for (int i = 0; i < f.n; ++i)
            if (m & (std::uint64_t{1} << i)) term &= static_cast<int>((x >> i) & 1u);
        acc ^= term;
    }
    return acc;
}

namespace {

void enumerate_counts(int slots_left, int digit, long degree_left, int p,
                      const mpz_class& partial, mpz_class& total) {
    if (digit == p - 1) {
        // remaining slots all take the top digit
        if (static_cast<long>(digit) * slots_left <= degree_left) total += partial;
        return;
    }
    mpz_class term = partial;
    for (int c = 0; c <= slots_left; ++c) {
        if (c > 0) {
            term *= static_cast<unsigned long>(slots_left - c + 1);
            mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(c));
        }
        const long used = static_cast<long>(digit) * c;
        if (used > degree_left) break;
        enumerate_counts(slots_left - c, digit + 1, degree_left - used, p, term, total);
    }
}

} // namespace

mpz_class multinomial_bound_enumerated(int n, int p) {
    mpz_class total = 0;
    enumerate_counts(n, 0, (static_cast<long>(p) - 1) * n / 3, p, 1, total);
    return 3 * total;
}

namespace {

template <typename Checker>
std::size_t max_subset(std::uint64_t universe, Checker ok) {
    if (universe > 24) throw std::invalid_argument("universe too large to enumerate");
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > best && ok(mask)) best = size;
    }
    return best;
}

} // namespace

std::size_t max_ap3_free_enumerated(int p, int n) {
    const std::uint64_t space = fp_space_size(p, n);
    return max_subset(space, [&](std::uint64_t mask) {
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < space; ++i)
            if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
        return is_ap3_free_triple_loop(FpPointSet::from_indices(p, n, std::move(idx)));
    });
}

std::size_t max_ap3_free_interval_enumerated(std::uint64_t limit) {
    return max_subset(limit, [&](std::uint64_t mask) {
        std::vector<std::uint64_t> m;
        for (std::uint64_t i = 0; i < limit; ++i)
            if (mask & (std::uint64_t{1} << i)) m.push_back(i + 1);
        return is_ap3_free(make_integer_set(limit, std::move(m)));
    });
}

std::size_t max_sunflower_free_enumerated(int n) {
    const std::uint64_t universe = std::uint64_t{1} << n;
    return max_subset(universe, [&](std::uint64_t mask) {
        std::vector<std::uint64_t> members;
        for (std::uint64_t i = 0; i < universe; ++i)
            if (mask & (std::uint64_t{1} << i)) members.push_back(i);
        return is_sunflower_free(make_set_family(n, std::move(members)));
    });
}

} // namespace capkit::reference
