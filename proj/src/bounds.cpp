#include "capkit/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace capkit {

namespace {

std::string render(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15Lg", v);
    return buf;
}

ConstantReport value_report(std::string name, long double v, std::string formula,
                            std::string provenance) {
    ConstantReport r;
    r.name = std::move(name);
    r.has_value = true;
    r.value = v;
    r.value_str = render(v);
    r.formula = std::move(formula);
    r.provenance = std::move(provenance);
    return r;
}

struct FormulaEntry {
    const char* formula;
    const char* provenance;
};

// Asymptotic results with unspecified constants; reported as formulas only.
const std::map<std::string, FormulaEntry>& formula_registry() {
    static const std::map<std::string, FormulaEntry> reg = {
        {"roth", {"N / log log N", "Roth 1953"}},
        {"meshulam", {"c_p * p^n / n", "Meshulam 1995"}},
        {"bateman-katz", {"3^n / n^(1+eps)", "Bateman-Katz 2012"}},
        {"kelley-meka", {"2^(-kappa_p * n^(1/9)) * p^n", "Kelley-Meka 2023"}},
        {"sanders-z4", {"o(4^n / n)", "Sanders 2009"}},
        {"bloom-sisask-interval", {"N * (log N)^(-1-eps)", "Bloom-Sisask 2020"}},
        {"kelley-meka-interval", {"N * exp(-c * (log N)^(1/11))", "Kelley-Meka 2023"}},
        {"bloom-sisask-refined", {"N * exp(-c' * (log N)^(1/9))", "Bloom-Sisask 2023"}},
        {"leng-sah-sawhney", {"N * exp(-(log log N)^(c_k))", "Leng-Sah-Sawhney 2024"}},
    };
    return reg;
}

} // namespace

AbelianGroupShape make_group_shape(std::vector<std::uint64_t> factors) {
    if (factors.empty()) throw std::invalid_argument("group shape needs at least one factor");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && factors[i] % factors[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
    return AbelianGroupShape{std::move(factors)};
}

int rank_2g(const AbelianGroupShape& g) {
    int r = 0;
    for (auto d : g.invariant_factors) {
        const std::uint64_t halved = d % 2 == 0 ? d / 2 : d;
        if (halved > 1) ++r;
    }
    return r;
}

mpz_class lev_bound(const AbelianGroupShape& g) {
    const int r = rank_2g(g);
    if (r == 0) throw std::invalid_argument("rank(2G) = 0: the bound is vacuous");
    mpz_class order = 1;
    for (auto d : g.invariant_factors) order *= static_cast<unsigned long>(d);
    return 2 * order / r;
}

ConstantReport behrend_constant() {
    return value_report("behrend", 2.0L * std::sqrt(std::log(4.0L)),
                        "2*sqrt(ln 4)", "Behrend 1946 (natural logarithms)");
}

ConstantReport elsholtz_constant() {
    return value_report("elsholtz",
                        2.0L * std::sqrt(std::log(24.0L / 7.0L) * std::log(2.0L)),
                        "2*sqrt(ln(24/7)*ln 2)",
                        "Elsholtz-Hunter-Proske-Sauermann 2024 (natural logarithms)");
}

ConstantReport naslund_sawin_base() {
    return value_report("naslund-sawin", 3.0L / std::pow(2.0L, 2.0L / 3.0L),
                        "3/2^(2/3)", "Naslund-Sawin 2017");
}

ConstantReport asu_base() {
    return value_report("asu", std::sqrt(1.0L + 2.7552L), "sqrt(1 + 2.7552)",
                        "Alon-Shpilka-Umans 2013 via Ellenberg-Gijswijt 2017");
}

ConstantReport formula_report(const std::string& name) {
    const auto& reg = formula_registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown bound name: " + name);
    ConstantReport r;
    r.name = name;
    r.formula = it->second.formula;
    r.provenance = it->second.provenance;
    return r;
}

std::vector<ConstantReport> all_reports() {
    std::vector<ConstantReport> out = {behrend_constant(), elsholtz_constant(),
                                       naslund_sawin_base(), asu_base()};
    for (const auto& [name, entry] : formula_registry()) out.push_back(formula_report(name));
    return out;
}

} // namespace capkit
