#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace capkit {

// Thrown when an operation would exceed a configured universe cap.
struct SizeCapError : std::length_error {
    using std::length_error::length_error;
};

// Thrown when a floating-point route fails its exactness check.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDim = 32;

// Default universe cap for the transform and search front ends (3^10).
inline constexpr std::uint64_t kDefaultSpaceCap = 59049;

bool is_odd_prime(int p);

// p^n, throwing if it does not fit comfortably in 62 bits.
std::uint64_t fp_space_size(int p, int n);

// ---------------------------------------------------------------------------
// Index encoding.
//
// A point of F_p^n (or Z_4^n) is stored as a single integer in mixed radix,
// most significant digit first, so that numeric order on indices coincides
// with lexicographic order on coordinate tuples.  All set containers keep
// their indices sorted ascending; every emitted set is therefore in
// lexicographic order.
// ---------------------------------------------------------------------------

void fp_decode(std::uint64_t idx, int p, int n, std::uint8_t* out);
std::uint64_t fp_encode(const std::uint8_t* digits, int p, int n);

std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, int p, int n);
std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, int p, int n);
std::uint64_t fp_scale(std::uint64_t a, int k, int p, int n);
// (a + b) / 2, using 2^{-1} = (p+1)/2 mod p.  Requires odd p.
std::uint64_t fp_midpoint(std::uint64_t a, std::uint64_t b, int p, int n);

// An element of F_p^n.  p must be an odd prime, every coordinate < p.
struct FpVector {
    int p = 3;
    int n = 0;
    std::vector<std::uint8_t> coords;

    FpVector() = default;
    FpVector(int p_, std::vector<std::uint8_t> coords_);

    std::uint64_t index() const { return fp_encode(coords.data(), p, n); }
};

// A duplicate-free subset of F_p^n, stored as sorted point indices.
class FpPointSet {
public:
    FpPointSet() = default;
    FpPointSet(int p, int n);

    // Throws std::invalid_argument on mismatched (p, n) or duplicates.
    static FpPointSet from_points(int p, int n, const std::vector<FpVector>& pts);
    // Sorts and deduplicates; used by set-valued operations.
    static FpPointSet from_indices(int p, int n, std::vector<std::uint64_t> idx);

    int p() const { return p_; }
    int n() const { return n_; }
    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    bool contains(std::uint64_t idx) const;

    const std::vector<std::uint64_t>& indices() const { return idx_; }
    std::vector<FpVector> points() const;

    bool operator==(const FpPointSet&) const = default;

private:
    int p_ = 3;
    int n_ = 0;
    std::vector<std::uint64_t> idx_;
};

// ---------------------------------------------------------------------------
// Z_4^n.  Coordinates are packed two bits per digit (big-endian as above);
// digit arithmetic is done SWAR-style on the packed words.
// ---------------------------------------------------------------------------

struct Z4Vector {
    int n = 0;
    std::vector<std::uint8_t> coords;

    Z4Vector() = default;
    Z4Vector(int n_, std::vector<std::uint8_t> coords_);

    std::uint64_t index() const;
};

std::uint64_t z4_encode(const std::uint8_t* digits, int n);
void z4_decode(std::uint64_t idx, int n, std::uint8_t* out);

std::uint64_t z4_add(std::uint64_t a, std::uint64_t b, int n);
std::uint64_t z4_neg(std::uint64_t a, int n);
std::uint64_t z4_sub(std::uint64_t a, std::uint64_t b, int n);
// 2a, which always lands in the subgroup {0,2}^n.
std::uint64_t z4_double(std::uint64_t a, int n);

// rho: {0,2}^n -> F_2^n, digit 2 -> bit 1.  a must have all digits even.
std::uint64_t z4_rho(std::uint64_t a, int n);
// rho^{-1}: F_2^n -> {0,2}^n.
std::uint64_t z4_unrho(std::uint64_t mask, int n);

class Z4PointSet {
public:
    Z4PointSet() = default;
    explicit Z4PointSet(int n);

    static Z4PointSet from_points(int n, const std::vector<Z4Vector>& pts);
    static Z4PointSet from_indices(int n, std::vector<std::uint64_t> idx);

    int n() const { return n_; }
    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    bool contains(std::uint64_t idx) const;

    const std::vector<std::uint64_t>& indices() const { return idx_; }
    std::vector<Z4Vector> points() const;

    bool operator==(const Z4PointSet&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> idx_;
};

// A duplicate-free subset of F_2^n, stored as sorted n-bit masks.
// Coordinate i sits at bit (n-1-i), keeping numeric == lexicographic order.
class F2Set {
public:
    F2Set() = default;
    explicit F2Set(int n);

    static F2Set from_masks(int n, std::vector<std::uint64_t> masks);

    int n() const { return n_; }
    std::size_t size() const { return masks_.size(); }
    bool empty() const { return masks_.empty(); }
    bool contains(std::uint64_t m) const;

    const std::vector<std::uint64_t>& masks() const { return masks_; }

    bool operator==(const F2Set&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> masks_;
};

// One coset of F_n = {0,2}^n inside Z_4^n: the canonical representative t
// (every coordinate in {0,1}) and rho(S_t) as a set of bit masks.
struct CosetSlice {
    Z4Vector t;
    F2Set points;
};

// ---------------------------------------------------------------------------
// Point-set text format.
//
//   first line:  "p n"   (p = 4 selects Z_4^n)
//   then one point per line, n space-separated digits
//   lines starting with '#' are comments; duplicate points are an error
// ---------------------------------------------------------------------------

enum class PointSetKind { Fp, Z4 };

struct ParsedPointSet {
    PointSetKind kind;
    FpPointSet fp;   // valid when kind == Fp
    Z4PointSet z4;   // valid when kind == Z4
};

ParsedPointSet parse_point_set(std::istream& in);
ParsedPointSet load_point_set(const std::string& path);

void emit_point_set(std::ostream& out, const FpPointSet& s);
void emit_point_set(std::ostream& out, const Z4PointSet& s);

} // namespace capkit
