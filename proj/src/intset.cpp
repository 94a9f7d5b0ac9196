#include "capkit/intset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace capkit {

IntegerSet make_integer_set(std::uint64_t limit, std::vector<std::uint64_t> members) {
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("duplicate member in integer set");
    if (!members.empty() && (members.front() < 1 || members.back() > limit))
        throw std::invalid_argument("member outside [1, N]");
    return IntegerSet{limit, std::move(members)};
}

bool is_ap3_free(const IntegerSet& s) {
    const auto& m = s.members;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const std::uint64_t sum = m[i] + m[j];
            if (sum % 2 != 0) continue;
            const std::uint64_t mid = sum / 2;
            if (mid == m[i] || mid == m[j]) continue;
            if (std::binary_search(m.begin(), m.end(), mid)) return false;
        }
    }
    return true;
}

IntegerSet parse_integer_set(std::istream& in) {
    std::string line;
    std::uint64_t limit = 0;
    bool have_header = false;
    std::vector<std::uint64_t> members;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag >> limit) || tag != "N")
                throw std::invalid_argument("bad integer-set header (want 'N <value>')");
            have_header = true;
            continue;
        }
        std::uint64_t v;
        if (!(ls >> v)) throw std::invalid_argument("bad member line");
        members.push_back(v);
    }
    if (!have_header) throw std::invalid_argument("missing integer-set header");
    return make_integer_set(limit, std::move(members));
}

void emit_integer_set(std::ostream& out, const IntegerSet& s) {
    out << "N " << s.limit << '\n';
    for (auto v : s.members) out << v << '\n';
}

} // namespace capkit
