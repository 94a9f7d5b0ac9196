#include "capkit/polymethod.hpp"

#include "capkit/ap3.hpp"
#include "capkit/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace capkit {

namespace {

constexpr int kMaxPolyDim = 24;

void check_poly_dim(int n) {
    if (n < 0 || n > kMaxPolyDim) throw SizeCapError("F_2^n dimension above polynomial-method cap");
}

// Masks of popcount <= d in (degree, value) order, via Gosper iteration.
std::vector<std::uint64_t> monomials_up_to(int n, int d) {
    std::vector<std::uint64_t> out;
    out.push_back(0);
    const std::uint64_t space = std::uint64_t{1} << n;
    for (int i = 1; i <= d; ++i) {
        std::uint64_t m = (std::uint64_t{1} << i) - 1;
        while (m < space) {
            out.push_back(m);
            const std::uint64_t c = m & (~m + 1);
            const std::uint64_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    return out;
}

// In-place subset-sum (zeta) transform over F_2; self-inverse.
void zeta_f2(std::vector<std::uint8_t>& a, int n) {
    for (int b = 0; b < n; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t m = 0; m < a.size(); ++m)
            if (m & bit) a[m] ^= a[m ^ bit];
    }
}

MultilinearPoly poly_from_monomials(int n, std::vector<std::uint64_t> monomials) {
    std::sort(monomials.begin(), monomials.end(), [](std::uint64_t a, std::uint64_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    MultilinearPoly f;
    f.n = n;
    f.monomials = std::move(monomials);
    return f;
}

} // namespace

namespace detail {

VanishingSpace vanishing_space_direct(const F2Set& points, int d, Parallelism par) {
    const int n = points.n();
    const auto monos = monomials_up_to(n, d);
    BitMatrix a(points.size(), monos.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        const std::uint64_t x = points.masks()[r];
        for (std::size_t c = 0; c < monos.size(); ++c)
            if ((monos[c] & x) == monos[c]) a.set(r, c);
    }
    auto kernel = gf2_kernel_basis(std::move(a), par);

    VanishingSpace v;
    v.n = n;
    v.d = d;
    v.basis.reserve(kernel.size());
    for (const auto& vec : kernel) {
        std::vector<std::uint64_t> ms;
        for (std::size_t c = 0; c < monos.size(); ++c)
            if ((vec[c / 64] >> (c % 64)) & 1u) ms.push_back(monos[c]);
        v.basis.push_back(poly_from_monomials(n, std::move(ms)));
    }
    return v;
}

// Value-space route: a polynomial vanishing on `points` is a function
// supported on the complement K; the degree cap becomes linear constraints
// "coefficient of every monomial of degree > d is zero", with the
// coefficients read off K through the subset parity.
VanishingSpace vanishing_space_complement(const F2Set& points, int d, Parallelism par) {
    const int n = points.n();
    const std::uint64_t space = std::uint64_t{1} << n;

    std::vector<std::uint64_t> comp;
    comp.reserve(static_cast<std::size_t>(space) - points.size());
    {
        auto it = points.masks().begin();
        for (std::uint64_t m = 0; m < space; ++m) {
            if (it != points.masks().end() && *it == m)
                ++it;
            else
                comp.push_back(m);
        }
    }

    // Rows: monomials of degree > d.  Entry [m][x] = [x subset of m].
    std::vector<std::uint64_t> high;
    for (std::uint64_t m = 0; m < space; ++m)
        if (std::popcount(m) > d) high.push_back(m);

    BitMatrix a(high.size(), comp.size());
    for (std::size_t r = 0; r < high.size(); ++r)
        for (std::size_t c = 0; c < comp.size(); ++c)
            if ((comp[c] & high[r]) == comp[c]) a.set(r, c);
    auto kernel = gf2_kernel_basis(std::move(a), par);

    VanishingSpace v;
    v.n = n;
    v.d = d;
    v.basis.reserve(kernel.size());
    std::vector<std::uint8_t> table(static_cast<std::size_t>(space));
    for (const auto& vec : kernel) {
        std::fill(table.begin(), table.end(), 0);
        for (std::size_t c = 0; c < comp.size(); ++c)
            if ((vec[c / 64] >> (c % 64)) & 1u) table[comp[c]] = 1;
        zeta_f2(table, n); // values -> coefficients
        std::vector<std::uint64_t> ms;
        for (std::uint64_t m = 0; m < space; ++m)
            if (table[m]) ms.push_back(m);
        v.basis.push_back(poly_from_monomials(n, std::move(ms)));
    }
    return v;
}

} // namespace detail

namespace {

double elimination_cost(double rows, double cols) {
    const double r = std::min(rows, cols);
    return r * rows * (cols / 64.0 + 1.0);
}

} // namespace

int MultilinearPoly::degree() const {
    int d = 0;
    for (auto m : monomials) d = std::max(d, std::popcount(m));
    return d;
}

mpz_class monomial_count(int n, int d) {
    if (n < 0 || d < 0 || d > n) throw std::invalid_argument("monomial_count requires 0 <= d <= n");
    mpz_class total = 0, term;
    for (int i = 0; i <= d; ++i) {
        mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(i));
        total += term;
    }
    return total;
}

int eval_multilinear(const MultilinearPoly& f, std::uint64_t x) {
    if (f.n < 64 && x >= (std::uint64_t{1} << f.n))
        throw std::invalid_argument("evaluation point outside F_2^n");
    int acc = 0;
    for (auto m : f.monomials) acc ^= ((m & x) == m) ? 1 : 0;
    return acc;
}

VanishingSpace vanishing_space(const F2Set& points, int d, Parallelism par) {
    const int n = points.n();
    check_poly_dim(n);
    if (d < 0 || d > n) throw std::invalid_argument("vanishing_space requires 0 <= d <= n");

    const double space = static_cast<double>(std::uint64_t{1} << n);
    const double m_cols = mpz_get_d(monomial_count(n, d).get_mpz_t());
    const double direct = elimination_cost(static_cast<double>(points.size()), m_cols);
    const double comp_sz = space - static_cast<double>(points.size());
    const double complement = elimination_cost(space - m_cols, comp_sz) + comp_sz * space / 64.0;
    if (direct <= complement) return detail::vanishing_space_direct(points, d, par);
    return detail::vanishing_space_complement(points, d, par);
}

int min_vanishing_degree(const F2Set& points, Parallelism par) {
    const int n = points.n();
    check_poly_dim(n);
    if (points.size() == (std::uint64_t{1} << n))
        throw std::invalid_argument("no nonzero multilinear polynomial vanishes on all of F_2^n");
    for (int d = 0; d <= n; ++d) {
        // dim = monomial_count - rank; basis not needed for the scan
        const auto monos = monomials_up_to(n, d);
        BitMatrix a(points.size(), monos.size());
        for (std::size_t r = 0; r < points.size(); ++r) {
            const std::uint64_t x = points.masks()[r];
            for (std::size_t c = 0; c < monos.size(); ++c)
                if ((monos[c] & x) == monos[c]) a.set(r, c);
        }
        const std::size_t rank = gf2_rank(std::move(a), par);
        if (monos.size() > rank) return d;
    }
    throw std::logic_error("unreachable: degree n always admits a vanishing polynomial");
}

Lemma1Report lemma1_verify(const F2Set& a, int d, Parallelism par) {
    const int n = a.n();
    check_poly_dim(n);
    if (d < 0 || d > n) throw std::invalid_argument("lemma1_verify requires 0 <= d <= n");

    Lemma1Report rep;
    rep.n = n;
    rep.d = d;
    rep.set_size = a.size();
    rep.threshold = 2 * monomial_count(n, d / 2);
    rep.threshold_met = mpz_cmp_ui(rep.threshold.get_mpz_t(), a.size()) < 0;

    // Difference set, with early exit once every nonzero mask is present.
    const std::uint64_t space = std::uint64_t{1} << n;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(space), 0);
    std::uint64_t found = 0;
    const auto& pts = a.masks();
    for (std::size_t i = 0; i < pts.size() && found + 1 < space; ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const std::uint64_t diff = pts[i] ^ pts[j];
            if (!seen[diff]) {
                seen[diff] = 1;
                if (++found + 1 == space) break;
            }
        }
    }
    std::vector<std::uint64_t> diffs;
    diffs.reserve(found);
    for (std::uint64_t m = 1; m < space; ++m)
        if (seen[m]) diffs.push_back(m);
    rep.difference_count = diffs.size();

    const auto vs = vanishing_space(F2Set::from_masks(n, std::move(diffs)), d, par);
    rep.dim = vs.dim();
    for (const auto& f : vs.basis)
        if (f.constant_term()) rep.violations.push_back(f);
    return rep;
}

bool clp_disjointness_check(const Z4PointSet& s) {
    const int n = s.n();
    const F2Set doubled = double_set(s);
    for (const auto& slice : coset_decompose(s)) {
        const std::uint64_t shift = z4_rho(z4_double(slice.t.index(), n), n);
        const F2Set sums = restricted_sumset(slice.points);
        for (auto v : sums.masks())
            if (doubled.contains(v ^ shift)) return false;
    }
    return true;
}

namespace {

// ceil(a / b) for positive b.
mpz_class cdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

struct ClpTables {
    int n;
    mpz_class space2;             // 2^n
    mpz_class space4;             // 4^n
    std::vector<mpz_class> head;  // head[d] = sum_{i<=d} C(n,i)
    std::vector<mpz_class> tail;  // tail[d] = 2^n - head[d]
};

ClpTables clp_tables(int n) {
    ClpTables t;
    t.n = n;
    mpz_ui_pow_ui(t.space2.get_mpz_t(), 2, static_cast<unsigned long>(n));
    mpz_ui_pow_ui(t.space4.get_mpz_t(), 4, static_cast<unsigned long>(n));
    t.head.resize(static_cast<std::size_t>(n) + 1);
    t.tail.resize(static_cast<std::size_t>(n) + 1);
    mpz_class acc = 0, term;
    for (int d = 0; d <= n; ++d) {
        mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(d));
        acc += term;
        t.head[static_cast<std::size_t>(d)] = acc;
        t.tail[static_cast<std::size_t>(d)] = t.space2 - acc;
    }
    return t;
}

// Whether some admissible slice size keeps `size` out of reach of the
// argument; when it does, reports the witnessing (d, N) with smallest d.
bool clp_survives(const ClpTables& t, const mpz_class& size, int* d_out, mpz_class* n_out) {
    const mpz_class n_floor = cdiv(size, t.space2);
    for (int d = 0; d <= t.n; ++d) {
        // N values for which d is the minimal polynomial degree:
        //   N * tail[d] < size   and   N * tail[d-1] >= size
        mpz_class lo = n_floor;
        if (lo < 1) lo = 1;
        if (d > 0) {
            const mpz_class& prev = t.tail[static_cast<std::size_t>(d) - 1];
            if (prev == 0) continue; // degree d-1 already always reachable
            lo = std::max(lo, cdiv(size, prev));
        }
        mpz_class hi = 2 * t.head[static_cast<std::size_t>(d / 2)];
        hi = std::min(hi, size);
        hi = std::min(hi, t.space2);
        const mpz_class& td = t.tail[static_cast<std::size_t>(d)];
        if (td != 0) {
            mpz_class strict = (size - 1) / td; // N * tail[d] < size
            hi = std::min(hi, strict);
        }
        if (lo <= hi) {
            if (d_out) *d_out = d;
            if (n_out) *n_out = lo;
            return true;
        }
    }
    return false;
}

} // namespace

bool clp_survives_size(int n, const mpz_class& size) {
    if (n < 1) throw std::invalid_argument("clp_survives_size requires n >= 1");
    if (size < 1) return false;
    return clp_survives(clp_tables(n), size, nullptr, nullptr);
}

ClpBoundCertificate clp_bound(int n) {
    if (n < 1) throw std::invalid_argument("clp_bound requires n >= 1");
    const ClpTables t = clp_tables(n);

    mpz_class lo = 1, hi = t.space4;
    if (!clp_survives(t, lo, nullptr, nullptr))
        throw std::logic_error("size 1 must survive");
    if (clp_survives(t, hi, nullptr, nullptr)) {
        lo = hi;
    } else {
        // survivors form a prefix of [1, 4^n]; binary search the boundary
        while (lo < hi) {
            mpz_class mid = (lo + hi + 1) / 2;
            if (clp_survives(t, mid, nullptr, nullptr))
                lo = mid;
            else
                hi = mid - 1;
        }
    }

    ClpBoundCertificate cert;
    cert.n = n;
    cert.s_max = lo;
    clp_survives(t, cert.s_max, &cert.d_star, &cert.n_star);

    // re-check the certificate inequalities before handing it out
    const mpz_class& head = t.head[static_cast<std::size_t>(cert.d_star) / 2];
    if (cert.n_star > 2 * head) throw std::logic_error("certificate violates the slice-size bound");
    if (t.head[static_cast<std::size_t>(cert.d_star)] * cert.n_star + cert.s_max <= cert.n_star * t.space2)
        throw std::logic_error("certificate violates the dimension count");

    signed long int exp2;
    const double mant = mpz_get_d_2exp(&exp2, cert.s_max.get_mpz_t());
    cert.exponent = (std::log2(mant) + static_cast<double>(exp2)) / (2.0 * n);
    return cert;
}

SliceRegularization regularize_slices(const Z4PointSet& s) {
    SliceRegularization rep;
    rep.n = s.n();
    rep.class_mass.assign(static_cast<std::size_t>(s.n()) + 1, 0);
    if (s.empty()) {
        rep.kept = Z4PointSet(s.n());
        return rep;
    }
    const auto slices = coset_decompose(s);
    for (const auto& sl : slices) {
        const int k = std::bit_width(sl.points.size()) - 1; // floor(log2)
        rep.class_mass[static_cast<std::size_t>(k)] += sl.points.size();
    }
    std::size_t best_k = 0, best_retained = 0;
    for (std::size_t k = 0; k < rep.class_mass.size(); ++k) {
        std::size_t count = 0;
        for (const auto& sl : slices) {
            const std::size_t kk = static_cast<std::size_t>(std::bit_width(sl.points.size()) - 1);
            if (kk == k) ++count;
        }
        const std::size_t retained = count << k;
        if (retained > best_retained) {
            best_retained = retained;
            best_k = k;
        }
    }
    const std::uint64_t n_size = std::uint64_t{1} << best_k;
    std::vector<std::uint64_t> kept_idx;
    std::size_t kept_slices = 0;
    for (const auto& sl : slices) {
        const std::size_t kk = static_cast<std::size_t>(std::bit_width(sl.points.size()) - 1);
        if (kk != best_k) continue;
        ++kept_slices;
        const std::uint64_t tt = sl.t.index();
        for (std::size_t i = 0; i < n_size; ++i)
            kept_idx.push_back(z4_add(tt, z4_unrho(sl.points.masks()[i], s.n()), s.n()));
    }
    rep.chosen_size = n_size;
    rep.kept_slices = kept_slices;
    rep.retained = kept_slices * n_size;
    rep.kept = Z4PointSet::from_indices(s.n(), std::move(kept_idx));
    return rep;
}

void emit_poly(std::ostream& out, const MultilinearPoly& f) {
    char buf[32];
    for (auto m : f.monomials) {
        std::snprintf(buf, sizeof buf, "%llx 1", static_cast<unsigned long long>(m));
        out << buf << '\n';
    }
}

void emit_vanishing_space(std::ostream& out, const VanishingSpace& v) {
    out << "dim " << v.dim() << '\n';
    for (std::size_t i = 0; i < v.basis.size(); ++i) {
        out << "poly " << i << '\n';
        emit_poly(out, v.basis[i]);
    }
}

} // namespace capkit
