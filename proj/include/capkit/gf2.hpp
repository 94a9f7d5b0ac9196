#pragma once

#include "capkit/parallel.hpp"

#include <cstdint>
#include <vector>

namespace capkit {

// Dense GF(2) matrix, rows packed 64 columns per word.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c) { data_[r * wpr_ + c / 64] |= std::uint64_t{1} << (c % 64); }
    void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

    std::uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }

    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    // In-place Gauss-Jordan to reduced row echelon form.  Returns the pivot
    // columns in increasing order; the i-th pivot lives in row i.  Row
    // updates within one elimination step are independent, so the OpenMP
    // path is bit-identical to the serial one.
    std::vector<std::size_t> reduce(Parallelism par = {});

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

// Basis of {v : A v = 0}, one packed vector of A.cols() bits per basis
// element, pivot-free-variable form, ordered by free column.  Consumes A.
std::vector<std::vector<std::uint64_t>> gf2_kernel_basis(BitMatrix a, Parallelism par = {});

std::size_t gf2_rank(BitMatrix a, Parallelism par = {});

} // namespace capkit
