// capkit command-line front end: every public operation behind one
// subcommand, text or JSON reports, all randomness via --seed.

#include "capkit/ap3.hpp"
#include "capkit/bounds.hpp"
#include "capkit/constructions.hpp"
#include "capkit/fourier.hpp"
#include "capkit/fp.hpp"
#include "capkit/intset.hpp"
#include "capkit/polymethod.hpp"
#include "capkit/rng.hpp"
#include "capkit/search.hpp"
#include "capkit/slicerank.hpp"
#include "capkit/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

struct Options {
    std::string format = "text";
    std::uint64_t seed = 0;
    int threads = 1;
    std::uint64_t budget = 0;
    std::uint64_t space_cap = capkit::kDefaultSpaceCap;
    std::uint64_t family_cap = 16;
    int slice_cap = 4;

    capkit::Parallelism par() const { return {threads}; }
    capkit::SearchOptions search() const { return {budget, seed, par()}; }
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "output format (text|json)")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", o.seed, "seed for all randomized steps");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--budget", o.budget, "search node budget (0 = unlimited)");
    cmd->add_option("--space-cap", o.space_cap, "largest p^n universe accepted");
    cmd->add_option("--family-cap", o.family_cap, "largest 2^n member universe accepted");
    cmd->add_option("--slice-cap", o.slice_cap, "largest n for slice decompositions");
}

json config_json(const Options& o) {
    return json{{"format", o.format},   {"seed", o.seed},
                {"threads", o.threads}, {"budget", o.budget},
                {"space_cap", o.space_cap}, {"family_cap", o.family_cap},
                {"slice_cap", o.slice_cap}};
}

void render_text(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(out, v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array()) {
        out << prefix << " = " << j.dump() << '\n';
    } else {
        out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void print_report(const Options& o, const std::string& command, const json& config,
                  const json& result) {
    if (o.format == "json") {
        json j{{"schema", capkit::kReportSchema},
               {"version", capkit::kVersion},
               {"command", command},
               {"config", config},
               {"result", result}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "capkit " << capkit::kVersion << " " << command << '\n';
        render_text(std::cout, result, "");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    return out;
}

// The set-valued file kinds share one reader: point sets ("p n" / "4 n"),
// families ("n k"), integer sets ("N k").
enum class FileKind { FpSet, Z4Set, Family, Integers };

FileKind sniff_kind(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "n") return FileKind::Family;
        if (first == "N") return FileKind::Integers;
        if (first == "4") return FileKind::Z4Set;
        return FileKind::FpSet;
    }
    throw std::invalid_argument("empty input file: " + path);
}

json witness_summary(const capkit::FpPointSet& s) {
    return json{{"p", s.p()}, {"n", s.n()}, {"size", s.size()}};
}

int run_verify(const Options& o, const std::string& path) {
    json result;
    switch (sniff_kind(path)) {
        case FileKind::Family: {
            auto in = open_input(path);
            const auto fam = capkit::parse_set_family(in);
            result = {{"kind", "family"},
                      {"n", fam.n},
                      {"size", fam.members.size()},
                      {"sunflower_free", capkit::is_sunflower_free(fam)}};
            break;
        }
        case FileKind::Integers: {
            auto in = open_input(path);
            const auto s = capkit::parse_integer_set(in);
            result = {{"kind", "integers"},
                      {"N", s.limit},
                      {"size", s.members.size()},
                      {"ap3_free", capkit::is_ap3_free(s)}};
            break;
        }
        case FileKind::Z4Set: {
            const auto parsed = capkit::load_point_set(path);
            result = {{"kind", "z4"},
                      {"n", parsed.z4.n()},
                      {"size", parsed.z4.size()},
                      {"ap3_free", capkit::is_ap3_free(parsed.z4)}};
            break;
        }
        case FileKind::FpSet: {
            const auto parsed = capkit::load_point_set(path);
            result = {{"kind", "fp"},
                      {"p", parsed.fp.p()},
                      {"n", parsed.fp.n()},
                      {"size", parsed.fp.size()},
                      {"ap3_free", capkit::is_ap3_free(parsed.fp)}};
            break;
        }
    }
    json config = config_json(o);
    config["in"] = path;
    print_report(o, "verify", config, result);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for three-term-progression-free sets"};
    app.require_subcommand(1);

    Options o;
    std::string in_path, emit_path, name, group_spec;
    int p = 3, n = 1, d = 0;
    std::uint64_t big_n = 1;
    std::uint64_t set_size = 0;
    std::uint64_t trials = 1;

    auto* verify = app.add_subcommand("verify", "check a set file for freeness");
    verify->add_option("--in", in_path, "input file")->required();
    add_common(verify, o);

    auto* count = app.add_subcommand("count", "count ordered 3AP triples (direct)");
    count->add_option("--in", in_path, "point-set file")->required();
    add_common(count, o);

    auto* fourier = app.add_subcommand("fourier", "character-sum analysis of a point set");
    fourier->add_option("--in", in_path, "point-set file")->required();
    add_common(fourier, o);

    auto* increment = app.add_subcommand("increment", "densest affine hyperplane certificate");
    increment->add_option("--in", in_path, "point-set file")->required();
    add_common(increment, o);

    auto* capsearch = app.add_subcommand("capsearch", "maximum 3AP-free subset of F_p^n");
    capsearch->add_option("--p", p, "odd prime")->required();
    capsearch->add_option("--n", n, "dimension")->required();
    capsearch->add_option("--emit-witness", emit_path, "write the witness set here");
    add_common(capsearch, o);

    auto* intsearch = app.add_subcommand("intsearch", "maximum 3AP-free subset of [N]");
    intsearch->add_option("--N", big_n, "interval bound")->required();
    intsearch->add_option("--emit-witness", emit_path, "write the witness set here");
    add_common(intsearch, o);

    auto* sunflower = app.add_subcommand("sunflower", "maximum sunflower-free family");
    sunflower->add_option("--n", n, "ground-set size")->required();
    sunflower->add_option("--emit-witness", emit_path, "write the witness family here");
    add_common(sunflower, o);

    auto* lemma1 = app.add_subcommand("lemma1", "difference-set vanishing harness");
    lemma1->add_option("--in", in_path, "F_2^n set as a family file");
    lemma1->add_option("--n", n, "dimension for random instances");
    lemma1->add_option("--d", d, "degree bound")->required();
    lemma1->add_option("--size", set_size, "set size for random instances");
    lemma1->add_option("--trials", trials, "number of seeded random instances");
    lemma1->add_option("--emit-basis", emit_path, "write the vanishing-space basis here");
    add_common(lemma1, o);

    auto* clpcheck = app.add_subcommand("clp-check", "slice-level disjointness test over Z_4^n");
    clpcheck->add_option("--in", in_path, "Z_4^n point-set file")->required();
    add_common(clpcheck, o);

    auto* clpbound = app.add_subcommand("clp-bound", "largest |S| the counting argument allows");
    clpbound->add_option("--n", n, "dimension")->required();
    add_common(clpbound, o);

    auto* slicerank = app.add_subcommand("slicerank", "slice decomposition of the product tensor");
    slicerank->add_option("--n", n, "dimension")->required();
    slicerank->add_option("--emit", emit_path, "write the decomposition JSON here");
    add_common(slicerank, o);

    auto* multinomial = app.add_subcommand("multinomial", "exact slice-count bound");
    multinomial->add_option("--n", n, "dimension")->required();
    multinomial->add_option("--p", p, "odd prime");
    add_common(multinomial, o);

    auto* exponent = app.add_subcommand("exponent", "asymptotic slice-count base");
    exponent->add_option("--p", p, "odd prime")->required();
    add_common(exponent, o);

    auto* bounds = app.add_subcommand("bounds", "closed-form constants and formula registry");
    bounds->add_option("--name", name, "single entry to print");
    bounds->add_option("--group", group_spec, "invariant factors d1,d2,... for the group bound");
    add_common(bounds, o);

    auto* behrend = app.add_subcommand("behrend", "digit-sphere progression-free subset of [N]");
    behrend->add_option("--N", big_n, "interval bound")->required();
    behrend->add_option("--emit", emit_path, "write the set here");
    add_common(behrend, o);

    auto* greedy = app.add_subcommand("greedy", "seeded maximal 3AP-free fixture");
    greedy->add_option("--p", p, "odd prime, or 4 for Z_4^n")->required();
    greedy->add_option("--n", n, "dimension")->required();
    greedy->add_option("--emit", emit_path, "write the set here");
    add_common(greedy, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(o, in_path);

        if (count->parsed()) {
            const auto parsed = capkit::load_point_set(in_path);
            if (parsed.kind != capkit::PointSetKind::Fp)
                throw std::invalid_argument("triple counting is defined over F_p^n");
            json config = config_json(o);
            config["in"] = in_path;
            print_report(o, "count", config,
                         {{"size", parsed.fp.size()},
                          {"count", capkit::count_ap3(parsed.fp, o.par())}});
            return 0;
        }

        if (fourier->parsed()) {
            const auto parsed = capkit::load_point_set(in_path);
            if (parsed.kind != capkit::PointSetKind::Fp)
                throw std::invalid_argument("the transform is defined over F_p^n");
            const auto& s = parsed.fp;
            const auto table = capkit::dft(s, o.par(), o.space_cap);
            const double parseval = capkit::parseval_sum(table);
            const double expected =
                static_cast<double>(capkit::fp_space_size(s.p(), s.n())) * static_cast<double>(s.size());
            const double rel = expected == 0.0 ? 0.0 : std::abs(parseval - expected) / expected;
            json config = config_json(o);
            config["in"] = in_path;
            print_report(o, "fourier", config,
                         {{"size", s.size()},
                          {"dc", table.at(0).real()},
                          {"ap3_count", capkit::count_ap3_fourier(s, o.par(), o.space_cap)},
                          {"parseval_sum", parseval},
                          {"parseval_expected", expected},
                          {"parseval_rel_error", rel}});
            return 0;
        }

        if (increment->parsed()) {
            const auto parsed = capkit::load_point_set(in_path);
            if (parsed.kind != capkit::PointSetKind::Fp)
                throw std::invalid_argument("hyperplane increments are defined over F_p^n");
            const auto cert = capkit::best_affine_hyperplane(parsed.fp, o.par());
            json config = config_json(o);
            config["in"] = in_path;
            print_report(o, "increment", config,
                         {{"direction", cert.direction},
                          {"level", cert.level},
                          {"density_num", cert.density_num},
                          {"density_den", cert.density_den},
                          {"baseline_num", cert.baseline_num},
                          {"baseline_den", cert.baseline_den}});
            return 0;
        }

        if (capsearch->parsed()) {
            const auto res = capkit::max_ap3_free(p, n, o.search(), o.space_cap);
            if (!emit_path.empty()) {
                auto out = open_output(emit_path);
                capkit::emit_point_set(out, res.witness);
            }
            json config = config_json(o);
            config["p"] = p;
            config["n"] = n;
            print_report(o, "capsearch", config,
                         {{"size", res.size},
                          {"proven_optimal", res.proven_optimal},
                          {"nodes_explored", res.nodes_explored},
                          {"witness", witness_summary(res.witness)}});
            return 0;
        }

        if (intsearch->parsed()) {
            const auto res = capkit::max_ap3_free_interval(big_n, o.search());
            if (!emit_path.empty()) {
                auto out = open_output(emit_path);
                capkit::emit_integer_set(out, res.witness);
            }
            json config = config_json(o);
            config["N"] = big_n;
            print_report(o, "intsearch", config,
                         {{"size", res.size},
                          {"proven_optimal", res.proven_optimal},
                          {"nodes_explored", res.nodes_explored},
                          {"witness", res.witness.members}});
            return 0;
        }

        if (sunflower->parsed()) {
            const auto res = capkit::max_sunflower_free(n, o.search(), o.family_cap);
            if (!emit_path.empty()) {
                auto out = open_output(emit_path);
                capkit::emit_set_family(out, res.witness);
            }
            json config = config_json(o);
            config["n"] = n;
            print_report(o, "sunflower", config,
                         {{"size", res.size},
                          {"proven_optimal", res.proven_optimal},
                          {"nodes_explored", res.nodes_explored},
                          {"witness_masks", res.witness.members}});
            return 0;
        }

        if (lemma1->parsed()) {
            json config = config_json(o);
            config["d"] = d;
            json result;
            if (!in_path.empty()) {
                auto in = open_input(in_path);
                const auto fam = capkit::parse_set_family(in);
                const auto set = capkit::F2Set::from_masks(fam.n, fam.members);
                const auto rep = capkit::lemma1_verify(set, d, o.par());
                if (!emit_path.empty()) {
                    auto out = open_output(emit_path);
                    const auto vs = capkit::vanishing_space(
                        capkit::F2Set::from_masks(fam.n, fam.members), d, o.par());
                    capkit::emit_vanishing_space(out, vs);
                }
                config["in"] = in_path;
                result = {{"n", rep.n},
                          {"size", rep.set_size},
                          {"threshold", rep.threshold.get_str()},
                          {"threshold_met", rep.threshold_met},
                          {"difference_count", rep.difference_count},
                          {"dim", rep.dim},
                          {"violations", rep.violations.size()}};
            } else {
                if (set_size == 0) throw std::invalid_argument("need --in or --size");
                config["n"] = n;
                config["size"] = set_size;
                config["trials"] = trials;
                std::uint64_t met = 0, violated = 0;
                for (std::uint64_t tr = 0; tr < trials; ++tr) {
                    capkit::Rng rng(capkit::Rng::substream(o.seed, tr));
                    std::vector<std::uint64_t> universe(std::uint64_t{1} << n);
                    for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = i;
                    rng.shuffle(universe);
                    universe.resize(std::min<std::size_t>(universe.size(), set_size));
                    const auto set = capkit::F2Set::from_masks(n, std::move(universe));
                    const auto rep = capkit::lemma1_verify(set, d, o.par());
                    met += rep.threshold_met ? 1 : 0;
                    violated += rep.violations.empty() ? 0 : 1;
                }
                result = {{"trials", trials}, {"threshold_met", met}, {"with_violations", violated}};
            }
            print_report(o, "lemma1", config, result);
            return 0;
        }

        if (clpcheck->parsed()) {
            const auto parsed = capkit::load_point_set(in_path);
            if (parsed.kind != capkit::PointSetKind::Z4)
                throw std::invalid_argument("the slice test is defined over Z_4^n");
            json config = config_json(o);
            config["in"] = in_path;
            print_report(o, "clp-check", config,
                         {{"size", parsed.z4.size()},
                          {"disjoint", capkit::clp_disjointness_check(parsed.z4)}});
            return 0;
        }

        if (clpbound->parsed()) {
            const auto cert = capkit::clp_bound(n);
            json config = config_json(o);
            config["n"] = n;
            print_report(o, "clp-bound", config,
                         {{"n", cert.n},
                          {"d_star", cert.d_star},
                          {"N_star", cert.n_star.get_str()},
                          {"s_max", cert.s_max.get_str()},
                          {"exponent", cert.exponent}});
            return 0;
        }

        if (slicerank->parsed()) {
            const auto dec = capkit::slice_decompose(n, o.slice_cap, o.par());
            const auto bound = capkit::multinomial_bound(n, 3, o.par());
            if (!emit_path.empty()) {
                json slices = json::array();
                for (const auto& s : dec.slices) {
                    json uni = json::array();
                    for (std::size_t pt = 0; pt < s.univariate.size(); ++pt) {
                        if (s.univariate[pt]) {
                            uni.push_back(pt);
                            uni.push_back(s.univariate[pt]);
                        }
                    }
                    std::size_t support = 0;
                    for (auto v : s.bivariate) support += v ? 1 : 0;
                    slices.push_back(json{{"axis", std::string(1, "xyz"[s.axis])},
                                          {"univariate", uni},
                                          {"bivariate_support_size", support}});
                }
                auto out = open_output(emit_path);
                out << json{{"n", n}, {"slices", slices}}.dump(2) << '\n';
            }
            json config = config_json(o);
            config["n"] = n;
            print_report(o, "slicerank", config,
                         {{"n", n},
                          {"slice_count", dec.slices.size()},
                          {"bound", bound.value.get_str()}});
            return 0;
        }

        if (multinomial->parsed()) {
            const auto b = capkit::multinomial_bound(n, p, o.par());
            json config = config_json(o);
            config["n"] = n;
            config["p"] = p;
            print_report(o, "multinomial", config,
                         {{"value", b.value.get_str()}, {"exponent_base", b.exponent_base}});
            return 0;
        }

        if (exponent->parsed()) {
            const auto r = capkit::slice_exponent(p);
            json config = config_json(o);
            config["p"] = p;
            print_report(o, "exponent", config, {{"base", r.base}, {"kappa", r.kappa}});
            return 0;
        }

        if (bounds->parsed()) {
            json config = config_json(o);
            json result;
            if (!group_spec.empty()) {
                std::vector<std::uint64_t> factors;
                std::istringstream ss(group_spec);
                std::string tok;
                while (std::getline(ss, tok, ',')) factors.push_back(std::stoull(tok));
                const auto g = capkit::make_group_shape(std::move(factors));
                config["group"] = group_spec;
                result = {{"rank_2g", capkit::rank_2g(g)},
                          {"lev_bound", capkit::lev_bound(g).get_str()}};
            } else if (!name.empty()) {
                config["name"] = name;
                capkit::ConstantReport rep;
                if (name == "behrend") rep = capkit::behrend_constant();
                else if (name == "elsholtz") rep = capkit::elsholtz_constant();
                else if (name == "naslund-sawin") rep = capkit::naslund_sawin_base();
                else if (name == "asu") rep = capkit::asu_base();
                else rep = capkit::formula_report(name);
                result = {{"name", rep.name},
                          {"value", rep.value_str},
                          {"formula", rep.formula},
                          {"provenance", rep.provenance}};
            } else {
                json table = json::array();
                for (const auto& rep : capkit::all_reports())
                    table.push_back(json{{"name", rep.name},
                                         {"value", rep.value_str},
                                         {"formula", rep.formula},
                                         {"provenance", rep.provenance}});
                result = {{"table", table}};
            }
            print_report(o, "bounds", config, result);
            return 0;
        }

        if (behrend->parsed()) {
            const auto s = capkit::behrend_set(big_n, o.par());
            if (!emit_path.empty()) {
                auto out = open_output(emit_path);
                capkit::emit_integer_set(out, s);
            }
            json config = config_json(o);
            config["N"] = big_n;
            print_report(o, "behrend", config,
                         {{"N", s.limit}, {"size", s.members.size()}, {"ap3_free", true}});
            return 0;
        }

        if (greedy->parsed()) {
            json config = config_json(o);
            config["p"] = p;
            config["n"] = n;
            json result;
            if (p == 4) {
                const auto s = capkit::greedy_ap3_free_z4(n, o.seed, o.space_cap);
                if (!emit_path.empty()) {
                    auto out = open_output(emit_path);
                    capkit::emit_point_set(out, s);
                }
                result = {{"kind", "z4"}, {"size", s.size()}, {"ap3_free", capkit::is_ap3_free(s)}};
            } else {
                const auto s = capkit::greedy_ap3_free(p, n, o.seed, o.space_cap);
                if (!emit_path.empty()) {
                    auto out = open_output(emit_path);
                    capkit::emit_point_set(out, s);
                }
                result = {{"kind", "fp"}, {"size", s.size()}, {"ap3_free", capkit::is_ap3_free(s)}};
            }
            print_report(o, "greedy", config, result);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
