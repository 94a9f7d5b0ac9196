#include "capkit/slicerank.hpp"

#include "capkit/ap3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace capkit {

namespace {

void require_p3(const FpPointSet& s) {
    if (s.p() != 3) throw std::invalid_argument("the diagonal tensor is defined over F_3");
}

// exponent -> value tables over F_3: v^e mod 3 with 0^0 = 1
constexpr std::uint8_t kPow3[3][3] = {{1, 0, 0}, {1, 1, 1}, {1, 2, 1}};

// per-coordinate expansion of 1 - (x + y + z)^2 over F_3:
// 1 + 2x^2 + 2y^2 + 2z^2 + xy + xz + yz
struct FactorTerm {
    std::uint8_t ex, ey, ez, coeff;
};
constexpr std::array<FactorTerm, 7> kFactorTerms = {{
    {0, 0, 0, 1},
    {2, 0, 0, 2},
    {0, 2, 0, 2},
    {0, 0, 2, 2},
    {1, 1, 0, 1},
    {1, 0, 1, 1},
    {0, 1, 1, 1},
}};

int eval_monomial(const std::uint8_t* exps, const std::uint8_t* digits, int n) {
    int v = 1;
    for (int i = 0; i < n; ++i) {
        v = (v * kPow3[digits[i]][exps[i]]) % 3;
        if (v == 0) return 0;
    }
    return v;
}

} // namespace

int diagonal_tensor_value(int n, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    std::uint8_t dx[kMaxDim], dy[kMaxDim], dz[kMaxDim];
    fp_decode(x, 3, n, dx);
    fp_decode(y, 3, n, dy);
    fp_decode(z, 3, n, dz);
    for (int i = 0; i < n; ++i)
        if ((dx[i] + dy[i] + dz[i]) % 3 != 0) return 0;
    return 1;
}

Tensor3 Tensor3::on_set(const FpPointSet& domain) {
    require_p3(domain);
    Tensor3 t;
    t.domain_ = domain;
    const std::size_t m = domain.size();
    if (m <= 200) {
        t.dense_.resize(m * m * m);
        const auto& idx = domain.indices();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t c = 0; c < m; ++c)
                    t.dense_[(a * m + b) * m + c] = static_cast<std::uint8_t>(
                        diagonal_tensor_value(domain.n(), idx[a], idx[b], idx[c]));
    }
    return t;
}

int Tensor3::value(std::size_t xi, std::size_t yi, std::size_t zi) const {
    const std::size_t m = domain_.size();
    if (!dense_.empty()) return dense_[(xi * m + yi) * m + zi];
    const auto& idx = domain_.indices();
    return diagonal_tensor_value(domain_.n(), idx[xi], idx[yi], idx[zi]);
}

Tensor3 diagonal_tensor(const FpPointSet& s) { return Tensor3::on_set(s); }

bool diagonal_check(const FpPointSet& s) {
    require_p3(s);
    const auto& idx = s.indices();
    const std::size_t m = idx.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                const int want = (a == b && b == c) ? 1 : 0;
                if (diagonal_tensor_value(s.n(), idx[a], idx[b], idx[c]) != want) return false;
            }
    return true;
}

int SliceDecomposition::value(std::uint64_t x, std::uint64_t y, std::uint64_t z) const {
    const std::uint64_t side = fp_space_size(3, n);
    int acc = 0;
    for (const auto& s : slices) {
        std::uint64_t u, a, b;
        switch (s.axis) {
            case 0: u = x; a = y; b = z; break;
            case 1: u = y; a = x; b = z; break;
            default: u = z; a = x; b = y; break;
        }
        acc = (acc + s.univariate[u] * s.bivariate[a * side + b]) % 3;
    }
    return acc;
}

SliceDecomposition slice_decompose(int n, int n_cap, Parallelism par) {
    if (n < 1) throw std::invalid_argument("slice_decompose requires n >= 1");
    if (n > n_cap) throw SizeCapError("dimension exceeds the slice-decomposition cap");

    const std::uint64_t side = fp_space_size(3, n);

    // Expand the product of the per-coordinate factors; every choice of one
    // term per coordinate yields a distinct exponent triple (I, J, K).
    struct Term {
        std::vector<std::uint8_t> ex, ey, ez;
        std::uint8_t coeff;
    };
    std::vector<Term> terms;
    {
        Term cur;
        cur.ex.resize(static_cast<std::size_t>(n));
        cur.ey.resize(static_cast<std::size_t>(n));
        cur.ez.resize(static_cast<std::size_t>(n));
        cur.coeff = 1;
        // iterative odometer over the 7^n factor choices
        std::vector<int> pick(static_cast<std::size_t>(n), 0);
        while (true) {
            int coeff = 1;
            for (int i = 0; i < n; ++i) {
                const auto& f = kFactorTerms[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
                cur.ex[static_cast<std::size_t>(i)] = f.ex;
                cur.ey[static_cast<std::size_t>(i)] = f.ey;
                cur.ez[static_cast<std::size_t>(i)] = f.ez;
                coeff = (coeff * f.coeff) % 3;
            }
            cur.coeff = static_cast<std::uint8_t>(coeff);
            terms.push_back(cur);
            int i = n - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == 6) pick[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
        }
    }

    auto block_degree = [n](const std::vector<std::uint8_t>& e) {
        int d = 0;
        for (int i = 0; i < n; ++i) d += e[static_cast<std::size_t>(i)];
        return d;
    };

    // Group by (axis, univariate exponent vector); axis chosen as the first
    // block of degree <= 2n/3 in the order x, y, z.
    struct Group {
        std::vector<std::uint8_t> uni_exps;
        std::vector<const Term*> members;
    };
    std::map<std::pair<int, std::vector<std::uint8_t>>, Group> groups;
    for (const auto& t : terms) {
        int axis;
        const std::vector<std::uint8_t>* uni;
        if (3 * block_degree(t.ex) <= 2 * n) {
            axis = 0;
            uni = &t.ex;
        } else if (3 * block_degree(t.ey) <= 2 * n) {
            axis = 1;
            uni = &t.ey;
        } else {
            axis = 2;
            uni = &t.ez; // forced <= 2n/3: total degree is at most 2n
        }
        auto& g = groups[{axis, *uni}];
        g.uni_exps = *uni;
        g.members.push_back(&t);
    }

    SliceDecomposition dec;
    dec.n = n;
    dec.slices.reserve(groups.size());
    std::vector<std::uint8_t> digits_a(static_cast<std::size_t>(side) * n);
    for (std::uint64_t a = 0; a < side; ++a)
        fp_decode(a, 3, n, digits_a.data() + a * static_cast<std::uint64_t>(n));

    for (const auto& [key, g] : groups) {
        Slice s;
        s.axis = key.first;
        s.univariate.resize(side);
        for (std::uint64_t a = 0; a < side; ++a)
            s.univariate[a] = static_cast<std::uint8_t>(
                eval_monomial(g.uni_exps.data(), digits_a.data() + a * static_cast<std::uint64_t>(n), n));

        s.bivariate.assign(side * side, 0);
        const std::int64_t pairs = static_cast<std::int64_t>(side * side);
#pragma omp parallel for schedule(static) num_threads(par.threads) if (par.parallel() && pairs >= 4096)
        for (std::int64_t ab = 0; ab < pairs; ++ab) {
            const std::uint64_t a = static_cast<std::uint64_t>(ab) / side;
            const std::uint64_t b = static_cast<std::uint64_t>(ab) % side;
            const std::uint8_t* da = digits_a.data() + a * static_cast<std::uint64_t>(n);
            const std::uint8_t* db = digits_a.data() + b * static_cast<std::uint64_t>(n);
            int acc = 0;
            for (const Term* t : g.members) {
                const std::vector<std::uint8_t>*e1, *e2;
                switch (key.first) {
                    case 0: e1 = &t->ey; e2 = &t->ez; break;
                    case 1: e1 = &t->ex; e2 = &t->ez; break;
                    default: e1 = &t->ex; e2 = &t->ey; break;
                }
                acc = (acc + t->coeff * eval_monomial(e1->data(), da, n) *
                                 eval_monomial(e2->data(), db, n)) %
                      3;
            }
            s.bivariate[static_cast<std::size_t>(ab)] = static_cast<std::uint8_t>(acc);
        }
        dec.slices.push_back(std::move(s));
    }
    return dec;
}

SliceDecomposition diagonal_decomposition(const FpPointSet& a) {
    require_p3(a);
    const std::uint64_t side = fp_space_size(3, a.n());
    SliceDecomposition dec;
    dec.n = a.n();
    for (auto pt : a.indices()) {
        Slice s;
        s.axis = 0;
        s.univariate.assign(side, 0);
        s.univariate[pt] = 1;
        s.bivariate.assign(side * side, 0);
        s.bivariate[pt * side + pt] = 1;
        dec.slices.push_back(std::move(s));
    }
    return dec;
}

// ------------------------------ counting bound ------------------------------

namespace {

// #strings over {0..p-1} of length n with digit sum <= cap, by a rolling
// window: new[s] = new[s-1] + old[s] - old[s-p].
mpz_class bounded_digit_strings(int n, int p, long cap) {
    std::vector<mpz_class> dp(static_cast<std::size_t>(cap) + 1, 0);
    dp[0] = 1;
    std::vector<mpz_class> next(static_cast<std::size_t>(cap) + 1);
    for (int step = 0; step < n; ++step) {
        mpz_class window = 0;
        for (long s = 0; s <= cap; ++s) {
            window += dp[static_cast<std::size_t>(s)];
            if (s - p >= 0) window -= dp[static_cast<std::size_t>(s - p)];
            next[static_cast<std::size_t>(s)] = window;
        }
        std::swap(dp, next);
    }
    mpz_class total = 0;
    for (auto& v : dp) total += v;
    return total;
}

// p = 3 route: compositions (a, b, c) of n with b + 2c <= 2n/3, summing
// n!/(a! b! c!) with per-row incremental updates.  Rows are independent, so
// the OpenMP path sums the same exact integers.
mpz_class composition_sum_p3(int n, Parallelism par) {
    const long cap = (2L * n) / 3;
    const long bmax = std::min<long>(cap, n);
    std::vector<mpz_class> row_sums(static_cast<std::size_t>(bmax) + 1);
#pragma omp parallel for schedule(dynamic) num_threads(par.threads) if (par.parallel())
    for (long b = 0; b <= bmax; ++b) {
        mpz_class term;
        mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(b)); // c = 0 term
        mpz_class acc = term;
        const long cmax = std::min<long>((cap - b) / 2, n - b);
        for (long c = 1; c <= cmax; ++c) {
            // multiply by remaining free slots, divide by new c count
            term *= static_cast<unsigned long>(n - b - c + 1);
            mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(c));
            acc += term;
        }
        row_sums[static_cast<std::size_t>(b)] = acc;
    }
    mpz_class total = 0;
    for (auto& v : row_sums) total += v;
    return total;
}

} // namespace

MultinomialBound multinomial_bound(int n, int p, Parallelism par) {
    if (n < 1) throw std::invalid_argument("multinomial_bound requires n >= 1");
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");

    MultinomialBound b;
    b.n = n;
    b.p = p;
    if (p == 3)
        b.value = 3 * composition_sum_p3(n, par);
    else
        b.value = 3 * bounded_digit_strings(n, p, (static_cast<long>(p) - 1) * n / 3);

    signed long int exp2;
    const double mant = mpz_get_d_2exp(&exp2, b.value.get_mpz_t());
    b.exponent_base = std::exp2((std::log2(mant) + static_cast<double>(exp2)) / n);
    return b;
}

SliceExponentResult slice_exponent(int p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");

    // Find x in (0, 1) with sum_j (3j - (p-1)) x^j = 0; the weights x^j then
    // realize mean block degree exactly (p-1)/3.  The polynomial has exactly
    // one sign change, so bisection on exact rational sign evaluation works.
    auto sign_at = [p](const mpq_class& x) {
        mpq_class acc = 0, pw = 1;
        for (int j = 0; j < p; ++j) {
            acc += (3 * j - (p - 1)) * pw;
            pw *= x;
        }
        return sgn(acc);
    };

    mpq_class lo(0), hi(1);
    if (sign_at(hi) <= 0) throw NumericsError("stationarity bracket failed");
    constexpr int kIterations = 140; // interval width 2^-140 at exit
    for (int it = 0; it < kIterations; ++it) {
        mpq_class mid = (lo + hi) / 2;
        const int s = sign_at(mid);
        if (s == 0) {
            lo = hi = mid;
            break;
        }
        (s < 0 ? lo : hi) = mid;
    }
    if (hi - lo > mpq_class(1, 1024)) throw NumericsError("slice-exponent bisection did not converge");

    const long double x = static_cast<long double>(mpq_get_d(mpq_class((lo + hi) / 2).get_mpq_t()));
    long double geom = 0.0L, pw = 1.0L;
    for (int j = 0; j < p; ++j) {
        geom += pw;
        pw *= x;
    }
    const long double base = geom * std::pow(x, -static_cast<long double>(p - 1) / 3.0L);

    SliceExponentResult r;
    r.p = p;
    r.base = static_cast<double>(base);
    r.kappa = static_cast<double>(std::log(base) / std::log(static_cast<long double>(p)));
    return r;
}

} // namespace capkit
