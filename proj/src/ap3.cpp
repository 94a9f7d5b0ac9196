#include "capkit/ap3.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace capkit {

bool is_ap3_free(const FpPointSet& s) {
    const auto& idx = s.indices();
    const int p = s.p(), n = s.n();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            // midpoint is automatically distinct from both endpoints for odd p
            if (s.contains(fp_midpoint(idx[i], idx[j], p, n))) return false;
        }
    }
    return true;
}

bool is_ap3_free(const Z4PointSet& s) {
    const auto& idx = s.indices();
    const int n = s.n();
    // 2y ranges over {0,2}^n, so bucket points by their double.
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> by_double;
    for (auto y : idx) by_double[z4_double(y, n)].push_back(y);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            auto it = by_double.find(z4_add(idx[i], idx[j], n));
            if (it == by_double.end()) continue;
            // 2y = x + z with x != z forces y distinct from x and z
            if (!it->second.empty()) return false;
        }
    }
    return true;
}

std::uint64_t count_ap3(const FpPointSet& s, Parallelism par) {
    const auto& idx = s.indices();
    const int p = s.p(), n = s.n();
    const std::int64_t m = static_cast<std::int64_t>(idx.size());
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total) num_threads(par.threads) if (par.parallel())
    for (std::int64_t i = 0; i < m; ++i) {
        std::uint64_t row = 0;
        for (std::int64_t j = 0; j < m; ++j)
            row += s.contains(fp_midpoint(idx[i], idx[j], p, n)) ? 1u : 0u;
        total += row;
    }
    return total;
}

FpPointSet restricted_sumset(const FpPointSet& a) {
    const auto& idx = a.indices();
    std::vector<std::uint64_t> sums;
    sums.reserve(idx.size() * (idx.size() + 1) / 2);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            sums.push_back(fp_add(idx[i], idx[j], a.p(), a.n()));
    return FpPointSet::from_indices(a.p(), a.n(), std::move(sums));
}

Z4PointSet restricted_sumset(const Z4PointSet& a) {
    const auto& idx = a.indices();
    std::vector<std::uint64_t> sums;
    sums.reserve(idx.size() * (idx.size() + 1) / 2);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            sums.push_back(z4_add(idx[i], idx[j], a.n()));
    return Z4PointSet::from_indices(a.n(), std::move(sums));
}

F2Set restricted_sumset(const F2Set& a) {
    const auto& ms = a.masks();
    std::vector<std::uint64_t> sums;
    sums.reserve(ms.size() * (ms.size() + 1) / 2);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            sums.push_back(ms[i] ^ ms[j]);
    return F2Set::from_masks(a.n(), std::move(sums));
}

F2Set double_set(const Z4PointSet& s) {
    std::vector<std::uint64_t> masks;
    masks.reserve(s.size());
    for (auto x : s.indices()) masks.push_back(z4_rho(z4_double(x, s.n()), s.n()));
    return F2Set::from_masks(s.n(), std::move(masks));
}

std::vector<CosetSlice> coset_decompose(const Z4PointSet& s) {
    const int n = s.n();
    const std::uint64_t lo = n == 0 ? 0 : (0x5555555555555555ULL >> (64 - 2 * n));
    std::map<std::uint64_t, std::vector<std::uint64_t>> groups;
    for (auto x : s.indices()) {
        const std::uint64_t t = x & lo;          // coordinates mod 2
        groups[t].push_back(z4_rho(x & ~lo, n)); // (x - t)/2 as a bit mask
    }
    std::vector<CosetSlice> out;
    out.reserve(groups.size());
    for (auto& [t, masks] : groups) {
        CosetSlice slice;
        std::vector<std::uint8_t> coords(static_cast<std::size_t>(n));
        z4_decode(t, n, coords.data());
        slice.t = Z4Vector(n, std::move(coords));
        slice.points = F2Set::from_masks(n, std::move(masks));
        out.push_back(std::move(slice));
    }
    return out;
}

Z4PointSet coset_recompose(int n, const std::vector<CosetSlice>& slices) {
    std::vector<std::uint64_t> idx;
    for (const auto& slice : slices) {
        const std::uint64_t t = slice.t.index();
        for (auto m : slice.points.masks()) idx.push_back(z4_add(t, z4_unrho(m, n), n));
    }
    return Z4PointSet::from_indices(n, std::move(idx));
}

} // namespace capkit
