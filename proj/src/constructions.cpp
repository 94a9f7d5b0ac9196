#include "capkit/constructions.hpp"

#include "capkit/ap3.hpp"
#include "capkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace capkit {

namespace {

struct Bucket {
    std::uint64_t count = 0;
    std::uint64_t base = 0;   // D
    std::uint64_t radius = 0; // r
};

bool better(const Bucket& a, const Bucket& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.base != b.base) return a.base < b.base;
    return a.radius < b.radius;
}

// Enumerate digit vectors (most significant first) with digits < bound and
// value <= limit-1; calls fn(value, squared_norm).
template <typename F>
void scan_digit_vectors(std::uint64_t base, std::uint64_t bound, int k,
                        std::uint64_t max_value, F&& fn) {
    std::vector<std::uint64_t> pw(static_cast<std::size_t>(k) + 1, 1);
    for (int i = 1; i <= k; ++i) pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * base;

    // explicit stack: (position, value, norm)
    struct Frame {
        int pos;
        std::uint64_t value, norm, digit;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.pos == k) {
            fn(f.value, f.norm);
            continue;
        }
        const int rem = k - f.pos - 1;
        for (std::uint64_t d = f.digit; d < bound; ++d) {
            const std::uint64_t v2 = f.value * base + d;
            if (v2 * pw[static_cast<std::size_t>(rem)] > max_value) break; // larger digits only grow
            stack.push_back({f.pos + 1, v2, f.norm + d * d, 0});
        }
    }
}

} // namespace

IntegerSet behrend_set(std::uint64_t limit, Parallelism par) {
    if (limit < 1) throw std::invalid_argument("behrend_set requires N >= 1");
    if (limit > (std::uint64_t{1} << 40)) throw SizeCapError("interval too large");
    if (limit == 1) return make_integer_set(1, {1});
    if (limit == 2) return make_integer_set(2, {1, 2});

    const double ln_n = std::log(static_cast<double>(limit));
    const std::uint64_t d_max =
        static_cast<std::uint64_t>(std::ceil(std::exp(std::sqrt(ln_n)))) + 2;
    const std::uint64_t max_value = limit - 1;

    std::vector<Bucket> per_base(static_cast<std::size_t>(d_max) + 1);
    const std::int64_t first = 2, last = static_cast<std::int64_t>(d_max);
#pragma omp parallel for schedule(dynamic) num_threads(par.threads) if (par.parallel())
    for (std::int64_t base = first; base <= last; ++base) {
        const std::uint64_t d = static_cast<std::uint64_t>(base);
        const std::uint64_t bound = (d + 1) / 2; // digits in [0, ceil(D/2))
        int k = 0;
        for (std::uint64_t pw = 1; pw <= max_value; pw *= d) ++k;
        std::unordered_map<std::uint64_t, std::uint64_t> counts;
        scan_digit_vectors(d, bound, k, max_value,
                           [&](std::uint64_t, std::uint64_t norm) { ++counts[norm]; });
        Bucket best;
        best.base = d;
        for (const auto& [r, c] : counts) {
            const Bucket cand{c, d, r};
            if (best.count == 0 || better(cand, best)) best = cand;
        }
        per_base[static_cast<std::size_t>(base)] = best;
    }

    Bucket winner;
    for (std::int64_t base = first; base <= last; ++base) {
        const Bucket& b = per_base[static_cast<std::size_t>(base)];
        if (b.count == 0) continue;
        if (winner.count == 0 || better(b, winner)) winner = b;
    }
    if (winner.count == 0) throw std::logic_error("digit scan produced no members");

    std::vector<std::uint64_t> members;
    {
        const std::uint64_t d = winner.base;
        const std::uint64_t bound = (d + 1) / 2;
        int k = 0;
        for (std::uint64_t pw = 1; pw <= max_value; pw *= d) ++k;
        scan_digit_vectors(d, bound, k, max_value, [&](std::uint64_t value, std::uint64_t norm) {
            if (norm == winner.radius) members.push_back(value + 1);
        });
    }
    auto out = make_integer_set(limit, std::move(members));
    if (!is_ap3_free(out)) throw std::logic_error("digit-sphere set failed the progression check");
    return out;
}

FpPointSet greedy_ap3_free(int p, int n, std::uint64_t seed, std::uint64_t space_cap) {
    const std::uint64_t space = fp_space_size(p, n);
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (space > space_cap) throw SizeCapError("p^n exceeds the cap");

    std::vector<std::uint32_t> order(static_cast<std::size_t>(space));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::uint8_t> blocked(static_cast<std::size_t>(space), 0);
    std::vector<std::uint64_t> kept;
    for (auto x : order) {
        if (blocked[x]) continue;
        for (auto a : kept) {
            blocked[fp_sub(fp_scale(a, 2, p, n), x, p, n)] = 1;
            blocked[fp_sub(fp_scale(x, 2, p, n), a, p, n)] = 1;
            blocked[fp_midpoint(a, x, p, n)] = 1;
        }
        kept.push_back(x);
    }
    return FpPointSet::from_indices(p, n, std::move(kept));
}

Z4PointSet greedy_ap3_free_z4(int n, std::uint64_t seed, std::uint64_t space_cap) {
    const std::uint64_t space = std::uint64_t{1} << (2 * n);
    if (n < 1 || n > 16) throw std::invalid_argument("dimension out of range");
    if (space > space_cap) throw SizeCapError("4^n exceeds the cap");

    std::vector<std::uint32_t> order(static_cast<std::size_t>(space));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    Rng rng(seed);
    rng.shuffle(order);

    const std::uint64_t lo = 0x5555555555555555ULL >> (64 - 2 * n);
    std::vector<std::uint8_t> blocked(static_cast<std::size_t>(space), 0);
    std::vector<std::uint64_t> kept;
    for (auto xi : order) {
        if (blocked[xi]) continue;
        const std::uint64_t x = xi;
        for (auto a : kept) {
            blocked[z4_sub(z4_double(a, n), x, n)] = 1; // y + x = 2a
            blocked[z4_sub(z4_double(x, n), a, n)] = 1; // y + a = 2x
            const std::uint64_t s = z4_add(a, x, n);    // a + x = 2y
            if ((s & lo) == 0) {
                // halvings form a coset of F_n: (s >> 1) + {0,2}^n, no carries
                const std::uint64_t y0 = s >> 1;
                for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
                    blocked[y0 | z4_unrho(m, n)] = 1;
            }
        }
        kept.push_back(x);
    }
    return Z4PointSet::from_indices(n, std::move(kept));
}

} // namespace capkit
