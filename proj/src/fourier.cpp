#include "capkit/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace capkit {

namespace {

void check_cap(const FpPointSet& s, std::uint64_t cap) {
    if (s.p() > 61) throw SizeCapError("prime too large for the transform kernels");
    if (fp_space_size(s.p(), s.n()) > cap)
        throw SizeCapError("p^n exceeds the transform cap");
}

std::vector<std::complex<double>> roots_of_unity(int p) {
    std::vector<std::complex<double>> w(static_cast<std::size_t>(p));
    w[0] = {1.0, 0.0};
    for (int k = 1; k < p; ++k) {
        const double a = 2.0 * std::numbers::pi * k / p;
        w[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    return w;
}

} // namespace

CharacterTable dft(const FpPointSet& s, Parallelism par, std::uint64_t space_cap) {
    check_cap(s, space_cap);
    const int p = s.p(), n = s.n();
    const std::uint64_t space = fp_space_size(p, n);

    CharacterTable t;
    t.p = p;
    t.n = n;
    t.values.assign(space, {0.0, 0.0});
    for (auto x : s.indices()) t.values[x] = {1.0, 0.0};

    const auto w = roots_of_unity(p);
    std::vector<std::complex<double>> scratch;

    std::uint64_t stride = space / static_cast<std::uint64_t>(p); // axis 0 first
    for (int axis = 0; axis < n; ++axis) {
        const std::uint64_t block = stride * static_cast<std::uint64_t>(p);
        const std::int64_t lines = static_cast<std::int64_t>(space / static_cast<std::uint64_t>(p));
#pragma omp parallel for schedule(static) num_threads(par.threads) if (par.parallel() && lines >= 64)
        for (std::int64_t line = 0; line < lines; ++line) {
            const std::uint64_t b = static_cast<std::uint64_t>(line) / stride;
            const std::uint64_t off = static_cast<std::uint64_t>(line) % stride;
            const std::uint64_t base = b * block + off;
            std::complex<double> in[64];
            for (int k = 0; k < p; ++k) in[k] = t.values[base + static_cast<std::uint64_t>(k) * stride];
            for (int j = 0; j < p; ++j) {
                std::complex<double> acc{0.0, 0.0};
                for (int k = 0; k < p; ++k) acc += w[static_cast<std::size_t>((j * k) % p)] * in[k];
                t.values[base + static_cast<std::uint64_t>(j) * stride] = acc;
            }
        }
        stride /= static_cast<std::uint64_t>(p);
    }
    return t;
}

double parseval_sum(const CharacterTable& t) {
    double acc = 0.0;
    for (const auto& v : t.values) acc += std::norm(v);
    return acc;
}

std::uint64_t count_ap3_fourier(const FpPointSet& s, Parallelism par, std::uint64_t space_cap) {
    const auto t = dft(s, par, space_cap);
    const int p = s.p(), n = s.n();
    const std::uint64_t space = fp_space_size(p, n);

    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t g = 0; g < space; ++g) {
        const std::uint64_t m2g = fp_scale(g, p - 2, p, n); // -2 gamma
        acc += t.values[g] * t.values[g] * t.values[m2g];
    }
    acc /= static_cast<double>(space);

    const double rounded = std::round(acc.real());
    const double residue = std::abs(acc.real() - rounded) + std::abs(acc.imag());
    if (residue > 1e-3)
        throw NumericsError("character-sum count did not round cleanly");
    if (rounded < 0.0) throw NumericsError("negative progression count");
    return static_cast<std::uint64_t>(rounded);
}

IncrementCertificate best_affine_hyperplane(const FpPointSet& s, Parallelism par) {
    const int p = s.p(), n = s.n();
    if (n < 1) throw std::invalid_argument("best_affine_hyperplane requires n >= 1");
    if (p > 61) throw SizeCapError("prime too large for the hyperplane scan");
    const std::uint64_t space = fp_space_size(p, n);
    if (s.empty() || s.size() == space)
        throw std::invalid_argument("degenerate input: set is empty or the whole space");

    // canonical directions: first nonzero coordinate equal to 1
    std::vector<std::uint64_t> dirs;
    for (int lead = n - 1; lead >= 0; --lead) {
        const std::uint64_t head = fp_space_size(p, n - 1 - lead); // 1 at position `lead`
        const std::uint64_t tail_count = head;                     // p^(n-1-lead)
        const std::uint64_t one = tail_count;
        for (std::uint64_t tail = 0; tail < tail_count; ++tail) dirs.push_back(one + tail);
    }
    std::sort(dirs.begin(), dirs.end()); // numeric == lexicographic

    // point digits, decoded once
    std::vector<std::uint8_t> digits(s.size() * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < s.size(); ++i)
        fp_decode(s.indices()[i], p, n, digits.data() + i * static_cast<std::size_t>(n));

    struct Best {
        std::uint64_t count = 0;
        std::size_t dir_pos = 0;
        int level = 0;
    };
    std::vector<Best> per_dir(dirs.size());

    const std::int64_t m = static_cast<std::int64_t>(dirs.size());
#pragma omp parallel for schedule(static) num_threads(par.threads) if (par.parallel() && m >= 8)
    for (std::int64_t di = 0; di < m; ++di) {
        std::uint8_t gd[kMaxDim];
        fp_decode(dirs[static_cast<std::size_t>(di)], p, n, gd);
        std::uint64_t buckets[64] = {};
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::uint8_t* x = digits.data() + i * static_cast<std::size_t>(n);
            int dot = 0;
            for (int k = 0; k < n; ++k) dot += gd[k] * x[k];
            ++buckets[dot % p];
        }
        Best b;
        b.dir_pos = static_cast<std::size_t>(di);
        for (int c = 0; c < p; ++c) {
            if (buckets[c] > b.count) {
                b.count = buckets[c];
                b.level = c;
            }
        }
        per_dir[static_cast<std::size_t>(di)] = b;
    }

    Best best = per_dir[0];
    for (const auto& b : per_dir)
        if (b.count > best.count) best = b; // dir_pos ascending keeps lex tie-break

    IncrementCertificate cert;
    cert.direction.resize(static_cast<std::size_t>(n));
    fp_decode(dirs[best.dir_pos], p, n, cert.direction.data());
    cert.level = best.level;
    cert.density_num = best.count;
    cert.density_den = space / static_cast<std::uint64_t>(p);
    cert.baseline_num = s.size();
    cert.baseline_den = space;
    return cert;
}

} // namespace capkit
