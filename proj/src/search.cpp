#include "capkit/search.hpp"

#include "capkit/rng.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace capkit {

SetFamily make_set_family(int n, std::vector<std::uint64_t> members) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("ground-set size out of range");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("duplicate member in family");
    if (!members.empty() && members.back() >= (std::uint64_t{1} << n))
        throw std::invalid_argument("member mask out of range");
    return SetFamily{n, std::move(members)};
}

bool is_sunflower_free(const SetFamily& f) {
    const auto& m = f.members;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const std::uint64_t ij = m[i] & m[j];
            for (std::size_t k = j + 1; k < m.size(); ++k)
                if (ij == (m[i] & m[k]) && ij == (m[j] & m[k])) return false;
        }
    return true;
}

SetFamily parse_set_family(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<std::uint64_t> members;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            long v;
            if (!(ls >> tag >> v) || tag != "n" || v < 0)
                throw std::invalid_argument("bad family header (want 'n <value>')");
            n = static_cast<int>(v);
            continue;
        }
        std::string tok;
        if (!(ls >> tok)) throw std::invalid_argument("bad member line");
        std::size_t used = 0;
        const std::uint64_t mask = std::stoull(tok, &used, 16);
        if (used != tok.size()) throw std::invalid_argument("bad hexadecimal mask");
        members.push_back(mask);
    }
    if (n < 0) throw std::invalid_argument("missing family header");
    return make_set_family(n, std::move(members));
}

void emit_set_family(std::ostream& out, const SetFamily& f) {
    out << "n " << f.n << '\n';
    char buf[24];
    for (auto m : f.members) {
        std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(m));
        out << buf << '\n';
    }
}

// ------------------------- branch-and-bound engine -------------------------

namespace {

class Bitset {
public:
    explicit Bitset(std::size_t bits)
        : bits_(bits), words_((bits + 63) / 64, ~std::uint64_t{0}) {
        if (bits % 64) words_.back() = (std::uint64_t{1} << (bits % 64)) - 1;
    }

    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void clear(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    std::size_t count_from(std::size_t pos) const {
        if (pos >= bits_) return 0;
        std::size_t w = pos / 64;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (pos % 64));
        std::size_t total = std::popcount(cur);
        for (++w; w < words_.size(); ++w) total += std::popcount(words_[w]);
        return total;
    }

    // first set bit >= pos, or npos
    std::size_t next(std::size_t pos) const {
        if (pos >= bits_) return npos;
        std::size_t w = pos / 64;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (pos % 64));
        while (true) {
            if (cur) return w * 64 + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return npos;
            cur = words_[w];
        }
    }

    template <typename F>
    void for_each(F f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t cur = words_[w];
            while (cur) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(cur)));
                cur &= cur - 1;
            }
        }
    }

    static constexpr std::size_t npos = ~std::size_t{0};

private:
    std::size_t bits_;
    std::vector<std::uint64_t> words_;
};

template <class Adapter>
class Bnb {
public:
    Bnb(const Adapter& ad, std::uint64_t budget) : ad_(ad), budget_(budget) {}

    void seed_incumbent(std::size_t size, std::vector<std::uint32_t> set) {
        best_ = size;
        best_set_ = std::move(set);
    }

    void search(std::size_t pos, Bitset& alive) {
        if (aborted_) return;
        ++nodes_;
        if (budget_ && nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        if (chosen_.size() > best_) {
            best_ = chosen_.size();
            best_set_ = chosen_;
        }
        if (chosen_.size() + alive.count_from(pos) <= best_) return;
        const std::size_t i = alive.next(pos);

        Bitset with = alive;
        with.clear(i);
        ad_.propagate(static_cast<std::uint32_t>(i), chosen_, with);
        chosen_.push_back(static_cast<std::uint32_t>(i));
        search(i + 1, with);
        chosen_.pop_back();
        if (aborted_) return;

        alive.clear(i);
        search(i + 1, alive);
        alive.set(i);
    }

    void push_root(std::uint32_t i) { chosen_.push_back(i); }

    std::size_t best() const { return best_; }
    const std::vector<std::uint32_t>& best_set() const { return best_set_; }
    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }

private:
    const Adapter& ad_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::size_t best_ = 0;
    std::vector<std::uint32_t> best_set_;
    std::vector<std::uint32_t> chosen_;
};

// Seeded random-order insertion, kept maximal by the same propagation rule
// the exact search uses.  Best of a fixed number of restarts.
template <class Adapter>
std::vector<std::uint32_t> greedy_incumbent(const Adapter& ad, std::size_t universe,
                                            std::uint64_t seed) {
    constexpr int kRestarts = 8;
    std::vector<std::uint32_t> best;
    std::vector<std::uint32_t> order(universe);
    for (int r = 0; r < kRestarts; ++r) {
        for (std::size_t i = 0; i < universe; ++i) order[i] = static_cast<std::uint32_t>(i);
        Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(r)));
        rng.shuffle(order);
        Bitset alive(universe);
        std::vector<std::uint32_t> kept;
        for (auto u : order) {
            if (!alive.test(u)) continue;
            alive.clear(u);
            ad.propagate(u, kept, alive);
            kept.push_back(u);
        }
        if (kept.size() > best.size()) best = std::move(kept);
    }
    std::sort(best.begin(), best.end());
    return best;
}

struct RawResult {
    std::size_t size = 0;
    std::vector<std::uint32_t> set;
    std::uint64_t nodes = 0;
    bool proven = false;
};

template <class Adapter>
RawResult run_search(const Adapter& ad, std::size_t universe, const SearchOptions& opts) {
    const auto greedy = greedy_incumbent(ad, universe, opts.seed);

    RawResult out;
    if (!opts.par.parallel() || universe < 2) {
        Bnb<Adapter> bnb(ad, opts.budget);
        bnb.seed_incumbent(greedy.size(), greedy);
        Bitset alive(universe);
        if (universe > 0) bnb.search(0, alive);
        out.size = bnb.best();
        out.set = bnb.best_set();
        out.nodes = bnb.nodes();
        out.proven = !bnb.aborted();
        return out;
    }

    // Root split: task k explores exactly the sets whose smallest element is
    // k.  Tasks are independent, so the reduction is deterministic for every
    // thread count; the per-task budget split is fixed up front.
    const std::size_t tasks = universe;
    std::vector<RawResult> results(tasks);
    const std::int64_t m = static_cast<std::int64_t>(tasks);
#pragma omp parallel for schedule(dynamic) num_threads(opts.par.threads)
    for (std::int64_t k = 0; k < m; ++k) {
        std::uint64_t task_budget = 0;
        if (opts.budget) {
            task_budget = opts.budget / tasks + (static_cast<std::uint64_t>(k) < opts.budget % tasks);
            if (task_budget == 0) task_budget = 1;
        }
        Bnb<Adapter> bnb(ad, task_budget);
        bnb.seed_incumbent(greedy.size(), greedy);
        Bitset alive(universe);
        for (std::int64_t j = 0; j < k; ++j) alive.clear(static_cast<std::size_t>(j));
        alive.clear(static_cast<std::size_t>(k));
        ad.propagate(static_cast<std::uint32_t>(k), {}, alive);
        bnb.push_root(static_cast<std::uint32_t>(k));
        bnb.search(static_cast<std::size_t>(k) + 1, alive);
        auto& r = results[static_cast<std::size_t>(k)];
        r.size = bnb.best();
        r.set = bnb.best_set();
        r.nodes = bnb.nodes();
        r.proven = !bnb.aborted();
    }

    out.size = greedy.size();
    out.set = greedy;
    out.proven = true;
    for (const auto& r : results) {
        out.nodes += r.nodes;
        out.proven = out.proven && r.proven;
        if (r.size > out.size) {
            out.size = r.size;
            out.set = r.set;
        }
    }
    return out;
}

// Candidates killed by adding x: everything completing a 3AP with x and one
// already-chosen point.
struct FpAdapter {
    int p, n;

    void propagate(std::uint32_t c, const std::vector<std::uint32_t>& prior, Bitset& alive) const {
        for (auto a : prior) {
            const std::uint64_t two_a_minus_c =
                fp_sub(fp_scale(a, 2, p, n), c, p, n);
            const std::uint64_t two_c_minus_a =
                fp_sub(fp_scale(c, 2, p, n), a, p, n);
            const std::uint64_t mid = fp_midpoint(a, c, p, n);
            alive.clear(two_a_minus_c);
            alive.clear(two_c_minus_a);
            alive.clear(mid);
        }
    }
};

struct IntervalAdapter {
    std::uint64_t limit; // universe index u is the integer u + 1

    void propagate(std::uint32_t c, const std::vector<std::uint32_t>& prior, Bitset& alive) const {
        const std::uint64_t vc = static_cast<std::uint64_t>(c) + 1;
        for (auto a : prior) {
            const std::uint64_t va = static_cast<std::uint64_t>(a) + 1;
            if (2 * va > vc && 2 * va - vc <= limit) alive.clear(2 * va - vc - 1);
            if (2 * vc > va && 2 * vc - va <= limit) alive.clear(2 * vc - va - 1);
            if ((va + vc) % 2 == 0) alive.clear((va + vc) / 2 - 1);
        }
    }
};

struct SunflowerAdapter {
    int n; // universe index is the member mask

    void propagate(std::uint32_t c, const std::vector<std::uint32_t>& prior, Bitset& alive) const {
        for (auto a : prior) {
            const std::uint64_t ac = static_cast<std::uint64_t>(a) & c;
            alive.for_each([&](std::size_t y) {
                const std::uint64_t ym = static_cast<std::uint64_t>(y);
                if (ac == (a & ym) && ac == (c & ym)) alive.clear(y);
            });
        }
    }
};

} // namespace

SearchResult<FpPointSet> max_ap3_free(int p, int n, const SearchOptions& opts,
                                      std::uint64_t space_cap) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    const std::uint64_t space = fp_space_size(p, n);
    if (space > space_cap) throw SizeCapError("p^n exceeds the search cap");

    FpAdapter ad{p, n};
    const auto raw = run_search(ad, static_cast<std::size_t>(space), opts);

    SearchResult<FpPointSet> res;
    res.size = raw.size;
    res.nodes_explored = raw.nodes;
    res.proven_optimal = raw.proven;
    std::vector<std::uint64_t> idx(raw.set.begin(), raw.set.end());
    res.witness = FpPointSet::from_indices(p, n, std::move(idx));
    return res;
}

SearchResult<IntegerSet> max_ap3_free_interval(std::uint64_t limit, const SearchOptions& opts) {
    if (limit < 1) throw std::invalid_argument("interval bound must be positive");
    if (limit > (std::uint64_t{1} << 26)) throw SizeCapError("interval too large to search");

    IntervalAdapter ad{limit};
    const auto raw = run_search(ad, static_cast<std::size_t>(limit), opts);

    SearchResult<IntegerSet> res;
    res.size = raw.size;
    res.nodes_explored = raw.nodes;
    res.proven_optimal = raw.proven;
    std::vector<std::uint64_t> members;
    members.reserve(raw.set.size());
    for (auto u : raw.set) members.push_back(static_cast<std::uint64_t>(u) + 1);
    res.witness = make_integer_set(limit, std::move(members));
    return res;
}

SearchResult<SetFamily> max_sunflower_free(int n, const SearchOptions& opts,
                                           std::uint64_t family_cap) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("ground-set size out of range");
    const std::uint64_t universe = std::uint64_t{1} << n;
    if (universe > family_cap) throw SizeCapError("2^n exceeds the family cap");

    SunflowerAdapter ad{n};
    const auto raw = run_search(ad, static_cast<std::size_t>(universe), opts);

    SearchResult<SetFamily> res;
    res.size = raw.size;
    res.nodes_explored = raw.nodes;
    res.proven_optimal = raw.proven;
    std::vector<std::uint64_t> members(raw.set.begin(), raw.set.end());
    res.witness = make_set_family(n, std::move(members));
    return res;
}

} // namespace capkit
