#include "capkit/fp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace capkit {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; static_cast<long long>(d) * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t fp_space_size(int p, int n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
    std::uint64_t v = 1;
    for (int i = 0; i < n; ++i) {
        if (v > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p))
            throw SizeCapError("p^n does not fit in 62 bits");
        v *= static_cast<std::uint64_t>(p);
    }
    return v;
}

void fp_decode(std::uint64_t idx, int p, int n, std::uint8_t* out) {
    for (int i = n - 1; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>(idx % static_cast<std::uint64_t>(p));
        idx /= static_cast<std::uint64_t>(p);
    }
}

std::uint64_t fp_encode(const std::uint8_t* digits, int p, int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = v * static_cast<std::uint64_t>(p) + digits[i];
    return v;
}

namespace {

template <typename F>
std::uint64_t digitwise(std::uint64_t a, std::uint64_t b, int p, int n, F op) {
    std::uint8_t da[kMaxDim], db[kMaxDim], dr[kMaxDim];
    fp_decode(a, p, n, da);
    fp_decode(b, p, n, db);
    for (int i = 0; i < n; ++i) dr[i] = static_cast<std::uint8_t>(op(da[i], db[i]) % p);
    return fp_encode(dr, p, n);
}

} // namespace

std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, int p, int n) {
    return digitwise(a, b, p, n, [](int x, int y) { return x + y; });
}

std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, int p, int n) {
    return digitwise(a, b, p, n, [p](int x, int y) { return x - y + p; });
}

std::uint64_t fp_scale(std::uint64_t a, int k, int p, int n) {
    k %= p;
    if (k < 0) k += p;
    std::uint8_t da[kMaxDim], dr[kMaxDim];
    fp_decode(a, p, n, da);
    for (int i = 0; i < n; ++i) dr[i] = static_cast<std::uint8_t>((da[i] * k) % p);
    return fp_encode(dr, p, n);
}

std::uint64_t fp_midpoint(std::uint64_t a, std::uint64_t b, int p, int n) {
    const int inv2 = (p + 1) / 2;
    std::uint8_t da[kMaxDim], db[kMaxDim], dr[kMaxDim];
    fp_decode(a, p, n, da);
    fp_decode(b, p, n, db);
    for (int i = 0; i < n; ++i)
        dr[i] = static_cast<std::uint8_t>(((da[i] + db[i]) * inv2) % p);
    return fp_encode(dr, p, n);
}

FpVector::FpVector(int p_, std::vector<std::uint8_t> coords_)
    : p(p_), n(static_cast<int>(coords_.size())), coords(std::move(coords_)) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime (p >= 3)");
    if (n > kMaxDim) throw std::invalid_argument("dimension out of range");
    for (auto c : coords)
        if (c >= p) throw std::invalid_argument("coordinate out of range");
}

FpPointSet::FpPointSet(int p, int n) : p_(p), n_(n) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime (p >= 3)");
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
    fp_space_size(p, n);
}

FpPointSet FpPointSet::from_points(int p, int n, const std::vector<FpVector>& pts) {
    FpPointSet s(p, n);
    s.idx_.reserve(pts.size());
    for (const auto& v : pts) {
        if (v.p != p || v.n != n) throw std::invalid_argument("mixed (p, n) in point set");
        s.idx_.push_back(v.index());
    }
    std::sort(s.idx_.begin(), s.idx_.end());
    if (std::adjacent_find(s.idx_.begin(), s.idx_.end()) != s.idx_.end())
        throw std::invalid_argument("duplicate point in set");
    return s;
}

FpPointSet FpPointSet::from_indices(int p, int n, std::vector<std::uint64_t> idx) {
    FpPointSet s(p, n);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const std::uint64_t space = fp_space_size(p, n);
    if (!idx.empty() && idx.back() >= space) throw std::invalid_argument("point index out of range");
    s.idx_ = std::move(idx);
    return s;
}

bool FpPointSet::contains(std::uint64_t idx) const {
    return std::binary_search(idx_.begin(), idx_.end(), idx);
}

std::vector<FpVector> FpPointSet::points() const {
    std::vector<FpVector> out;
    out.reserve(idx_.size());
    for (auto i : idx_) {
        std::vector<std::uint8_t> c(static_cast<std::size_t>(n_));
        fp_decode(i, p_, n_, c.data());
        FpVector v;
        v.p = p_;
        v.n = n_;
        v.coords = std::move(c);
        out.push_back(std::move(v));
    }
    return out;
}

// --------------------------------- Z_4^n ----------------------------------

namespace {

std::uint64_t z4_full_mask(int n) {
    return n == 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * n)) - 1;
}

std::uint64_t z4_lo_bits(int n) {
    return 0x5555555555555555ULL & z4_full_mask(n);
}

} // namespace

Z4Vector::Z4Vector(int n_, std::vector<std::uint8_t> coords_)
    : n(n_), coords(std::move(coords_)) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
    if (static_cast<int>(coords.size()) != n) throw std::invalid_argument("coordinate count mismatch");
    for (auto c : coords)
        if (c >= 4) throw std::invalid_argument("coordinate out of range");
}

std::uint64_t Z4Vector::index() const { return z4_encode(coords.data(), n); }

std::uint64_t z4_encode(const std::uint8_t* digits, int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 2) | digits[i];
    return v;
}

void z4_decode(std::uint64_t idx, int n, std::uint8_t* out) {
    for (int i = n - 1; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>(idx & 3u);
        idx >>= 2;
    }
}

std::uint64_t z4_add(std::uint64_t a, std::uint64_t b, int n) {
    const std::uint64_t lo = z4_lo_bits(n);
    return (a ^ b ^ ((a & b & lo) << 1)) & z4_full_mask(n);
}

std::uint64_t z4_neg(std::uint64_t a, int n) {
    return z4_add(~a & z4_full_mask(n), z4_lo_bits(n), n);
}

std::uint64_t z4_sub(std::uint64_t a, std::uint64_t b, int n) {
    return z4_add(a, z4_neg(b, n), n);
}

std::uint64_t z4_double(std::uint64_t a, int n) {
    return ((a & z4_lo_bits(n)) << 1) & z4_full_mask(n);
}

std::uint64_t z4_rho(std::uint64_t a, int n) {
    std::uint64_t m = 0;
    for (int k = 0; k < n; ++k) m |= ((a >> (2 * k + 1)) & 1u) << k;
    return m;
}

std::uint64_t z4_unrho(std::uint64_t mask, int n) {
    std::uint64_t a = 0;
    for (int k = 0; k < n; ++k) a |= ((mask >> k) & 1u) << (2 * k + 1);
    return a;
}

Z4PointSet::Z4PointSet(int n) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
}

Z4PointSet Z4PointSet::from_points(int n, const std::vector<Z4Vector>& pts) {
    Z4PointSet s(n);
    s.idx_.reserve(pts.size());
    for (const auto& v : pts) {
        if (v.n != n) throw std::invalid_argument("mixed dimension in point set");
        s.idx_.push_back(v.index());
    }
    std::sort(s.idx_.begin(), s.idx_.end());
    if (std::adjacent_find(s.idx_.begin(), s.idx_.end()) != s.idx_.end())
        throw std::invalid_argument("duplicate point in set");
    return s;
}

Z4PointSet Z4PointSet::from_indices(int n, std::vector<std::uint64_t> idx) {
    Z4PointSet s(n);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (!idx.empty() && n < 32 && idx.back() > z4_full_mask(n))
        throw std::invalid_argument("point index out of range");
    s.idx_ = std::move(idx);
    return s;
}

bool Z4PointSet::contains(std::uint64_t idx) const {
    return std::binary_search(idx_.begin(), idx_.end(), idx);
}

std::vector<Z4Vector> Z4PointSet::points() const {
    std::vector<Z4Vector> out;
    out.reserve(idx_.size());
    for (auto i : idx_) {
        std::vector<std::uint8_t> c(static_cast<std::size_t>(n_));
        z4_decode(i, n_, c.data());
        Z4Vector v;
        v.n = n_;
        v.coords = std::move(c);
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------- F_2^n ---------------------------------

F2Set::F2Set(int n) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
}

F2Set F2Set::from_masks(int n, std::vector<std::uint64_t> masks) {
    F2Set s(n);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    if (!masks.empty() && n < 64 && masks.back() >= (std::uint64_t{1} << n))
        throw std::invalid_argument("mask out of range");
    s.masks_ = std::move(masks);
    return s;
}

bool F2Set::contains(std::uint64_t m) const {
    return std::binary_search(masks_.begin(), masks_.end(), m);
}

// ----------------------------------- I/O ----------------------------------

namespace {

std::vector<std::string> data_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

} // namespace

ParsedPointSet parse_point_set(std::istream& in) {
    auto lines = data_lines(in);
    if (lines.empty()) throw std::invalid_argument("empty point-set file");

    std::istringstream header(lines[0]);
    long p = 0, n = 0;
    if (!(header >> p >> n)) throw std::invalid_argument("bad point-set header (want 'p n')");
    std::string junk;
    if (header >> junk) throw std::invalid_argument("trailing tokens in header");
    if (p != 4 && !is_odd_prime(static_cast<int>(p)))
        throw std::invalid_argument("modulus must be 4 or an odd prime");
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");

    std::vector<std::vector<std::uint8_t>> pts;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::istringstream ls(lines[li]);
        std::vector<std::uint8_t> coords;
        long d;
        while (ls >> d) {
            if (d < 0 || d >= p) throw std::invalid_argument("coordinate out of range");
            coords.push_back(static_cast<std::uint8_t>(d));
        }
        if (static_cast<long>(coords.size()) != n)
            throw std::invalid_argument("wrong number of coordinates on line");
        pts.push_back(std::move(coords));
    }

    ParsedPointSet out;
    if (p == 4) {
        out.kind = PointSetKind::Z4;
        std::vector<Z4Vector> vs;
        vs.reserve(pts.size());
        for (auto& c : pts) vs.emplace_back(static_cast<int>(n), std::move(c));
        out.z4 = Z4PointSet::from_points(static_cast<int>(n), vs);
    } else {
        out.kind = PointSetKind::Fp;
        std::vector<FpVector> vs;
        vs.reserve(pts.size());
        for (auto& c : pts) vs.emplace_back(static_cast<int>(p), std::move(c));
        out.fp = FpPointSet::from_points(static_cast<int>(p), static_cast<int>(n), vs);
    }
    return out;
}

ParsedPointSet load_point_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_point_set(in);
}

namespace {

template <typename Set>
void emit_points(std::ostream& out, int modulus, const Set& s, int n) {
    out << modulus << ' ' << n << '\n';
    std::uint8_t d[kMaxDim];
    for (auto idx : s.indices()) {
        if constexpr (std::is_same_v<Set, Z4PointSet>)
            z4_decode(idx, n, d);
        else
            fp_decode(idx, modulus, n, d);
        for (int i = 0; i < n; ++i) out << (i ? " " : "") << static_cast<int>(d[i]);
        out << '\n';
    }
}

} // namespace

void emit_point_set(std::ostream& out, const FpPointSet& s) {
    emit_points(out, s.p(), s, s.n());
}

void emit_point_set(std::ostream& out, const Z4PointSet& s) {
    emit_points(out, 4, s, s.n());
}

} // namespace capkit
