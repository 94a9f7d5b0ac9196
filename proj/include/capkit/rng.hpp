#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace capkit {

// All randomness in the toolkit flows through this wrapper around
// std::mt19937_64.  Bounded draws use rejection sampling and shuffles are
// hand-rolled Fisher-Yates, so identical seeds give identical streams on
// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % bound;
    }

    bool coin() { return (gen_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Deterministic per-stream seeds (splitmix64 over seed and stream index),
    // used to give independent trials their own generators.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace capkit
