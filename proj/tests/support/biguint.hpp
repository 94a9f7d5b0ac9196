#pragma once

// Minimal unsigned big integer, independent of the GMP-backed production
// routes.  Just what the certificate re-verification needs: decimal parsing,
// addition, multiplication, comparison, powers of two, Pascal-row binomials.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {
        while (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            v >>= 32;
        }
    }

    static BigUint from_decimal(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty decimal");
        BigUint out;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad decimal digit");
            out = out.times_small(10);
            out += BigUint(static_cast<std::uint64_t>(c - '0'));
        }
        return out;
    }

    static BigUint pow2(unsigned k) {
        BigUint out;
        out.limbs_.assign(k / 32 + 1, 0);
        out.limbs_.back() = std::uint32_t{1} << (k % 32);
        return out;
    }

    BigUint& operator+=(const BigUint& o) {
        if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t v = carry + limbs_[i];
            if (i < o.limbs_.size()) v += o.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) {
        a += b;
        return a;
    }

    BigUint times_small(std::uint32_t m) const {
        BigUint out;
        out.limbs_.resize(limbs_.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            const std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) * m + carry;
            out.limbs_[i] = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        out.limbs_[limbs_.size()] = static_cast<std::uint32_t>(carry);
        out.trim();
        return out;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        BigUint out;
        if (a.limbs_.empty() || b.limbs_.empty()) return out;
        out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                const std::uint64_t v = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                        out.limbs_[i + j] + carry;
                out.limbs_[i + j] = static_cast<std::uint32_t>(v);
                carry = v >> 32;
            }
            out.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
        }
        out.trim();
        return out;
    }

    int cmp(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
        return 0;
    }

    bool operator==(const BigUint& o) const { return cmp(o) == 0; }
    bool operator<(const BigUint& o) const { return cmp(o) < 0; }
    bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }
    bool operator>(const BigUint& o) const { return cmp(o) > 0; }

private:
    std::vector<std::uint32_t> limbs_; // little-endian, trimmed

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
};

// Pascal-row binomials C(n, 0..n), by additions only.
inline std::vector<BigUint> binomial_row(int n) {
    std::vector<BigUint> row{BigUint(1)};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigUint> next(static_cast<std::size_t>(i) + 1);
        next[0] = BigUint(1);
        next[static_cast<std::size_t>(i)] = BigUint(1);
        for (std::size_t k = 1; k < static_cast<std::size_t>(i); ++k)
            next[k] = row[k - 1] + row[k];
        row = std::move(next);
    }
    return row;
}

} // namespace testsupport
