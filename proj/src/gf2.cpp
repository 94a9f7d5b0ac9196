#include "capkit/gf2.hpp"

#include <algorithm>

namespace capkit {

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + wpr_, row(b));
}

std::vector<std::size_t> BitMatrix::reduce(Parallelism par) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols_ && next_row < rows_; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pr = rows_;
        for (std::size_t r = next_row; r < rows_; ++r) {
            if (data_[r * wpr_ + w] & bit) {
                pr = r;
                break;
            }
        }
        if (pr == rows_) continue;
        swap_rows(next_row, pr);
        const std::uint64_t* prow = row(next_row);
        const std::int64_t m = static_cast<std::int64_t>(rows_);
#pragma omp parallel for schedule(static) num_threads(par.threads) if (par.parallel() && rows_ > 256)
        for (std::int64_t r = 0; r < m; ++r) {
            if (static_cast<std::size_t>(r) == next_row) continue;
            std::uint64_t* rr = data_.data() + static_cast<std::size_t>(r) * wpr_;
            if (rr[w] & bit)
                for (std::size_t k = 0; k < wpr_; ++k) rr[k] ^= prow[k];
        }
        pivots.push_back(c);
        ++next_row;
    }
    return pivots;
}

std::vector<std::vector<std::uint64_t>> gf2_kernel_basis(BitMatrix a, Parallelism par) {
    const std::size_t cols = a.cols();
    const std::size_t wpc = (cols + 63) / 64;
    const auto pivots = a.reduce(par);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint64_t> v(wpc, 0);
        v[f / 64] |= std::uint64_t{1} << (f % 64);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (a.get(i, f)) v[pivots[i] / 64] |= std::uint64_t{1} << (pivots[i] % 64);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t gf2_rank(BitMatrix a, Parallelism par) {
    return a.reduce(par).size();
}

} // namespace capkit
