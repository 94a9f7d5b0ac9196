// Timing harness comparing the serial reference paths against the OpenMP
// kernels.  Not a correctness gate (the unit tests own that); this prints a
// small table so regressions in either path are easy to spot.

#include "capkit/ap3.hpp"
#include "capkit/constructions.hpp"
#include "capkit/fourier.hpp"
#include "capkit/gf2.hpp"
#include "capkit/polymethod.hpp"
#include "capkit/reference.hpp"
#include "capkit/rng.hpp"
#include "capkit/slicerank.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s %10.2f ms %10.2f ms   x%.2f  %s\n", name.c_str(), serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, agree ? "ok" : "MISMATCH");
}

} // namespace

int main() {
    using namespace capkit;
    const int threads = omp_get_max_threads();
    std::printf("threads: %d\n", threads);
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "openmp");

    const Parallelism par{threads};

    {
        const auto s = greedy_ap3_free(3, 8, 7);
        std::uint64_t a = 0, b = 0;
        const double t1 = time_ms([&] { a = count_ap3(s, {1}); });
        const double t2 = time_ms([&] { b = count_ap3(s, par); });
        row("count_ap3 (F_3^8 greedy)", t1, t2, a == b);
    }

    {
        Rng rng(11);
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < 59049; ++i)
            if (rng.below(3) == 0) idx.push_back(i);
        const auto s = FpPointSet::from_indices(3, 10, std::move(idx));
        CharacterTable ta, tb;
        const double t1 = time_ms([&] { ta = dft(s, {1}); });
        const double t2 = time_ms([&] { tb = dft(s, par); });
        bool agree = ta.values.size() == tb.values.size();
        for (std::size_t i = 0; agree && i < ta.values.size(); ++i)
            agree = ta.values[i] == tb.values[i];
        row("dft (p=3, n=10)", t1, t2, agree);
    }

    {
        Rng rng(13);
        std::vector<std::uint64_t> idx;
        for (std::uint64_t i = 0; i < 2187; ++i)
            if (rng.below(4) == 0) idx.push_back(i);
        const auto s = FpPointSet::from_indices(3, 7, std::move(idx));
        IncrementCertificate ca, cb;
        const double t1 = time_ms([&] { ca = best_affine_hyperplane(s, {1}); });
        const double t2 = time_ms([&] { cb = best_affine_hyperplane(s, par); });
        row("hyperplane scan (F_3^7)", t1, t2,
            ca.direction == cb.direction && ca.level == cb.level && ca.density_num == cb.density_num);
    }

    {
        Rng rng(17);
        const std::size_t dim = 2048;
        BitMatrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t w = 0; w < m.words_per_row(); ++w) m.row(r)[w] = rng.next();
        BitMatrix m2 = m;
        std::size_t ra = 0, rb = 0;
        const double t1 = time_ms([&] { ra = gf2_rank(std::move(m), {1}); });
        const double t2 = time_ms([&] { rb = gf2_rank(std::move(m2), par); });
        row("gf2 rank (2048x2048)", t1, t2, ra == rb);
    }

    {
        MultinomialBound a, b;
        const double t1 = time_ms([&] { a = multinomial_bound(2000, 3, {1}); });
        const double t2 = time_ms([&] { b = multinomial_bound(2000, 3, par); });
        row("multinomial (n=2000, p=3)", t1, t2, a.value == b.value);
    }

    {
        IntegerSet a, b;
        const double t1 = time_ms([&] { a = behrend_set(100000, {1}); });
        const double t2 = time_ms([&] { b = behrend_set(100000, par); });
        row("behrend scan (N=1e5)", t1, t2, a.members == b.members);
    }

    return 0;
}
