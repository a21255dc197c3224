#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prt/diophantine2.hpp"
#include "prt/model_json.hpp"
#include "prt/polyexp.hpp"
#include "prt/rado.hpp"
#include "prt/ramsey.hpp"
#include "prt/report.hpp"
#include "prt/sunit.hpp"

namespace prt::cli {

using nlohmann::json;

struct Options {
    std::string expr;
    std::string file;
    bool json_out = false;
    std::string domain = "N";
    std::uint32_t colors = 2;
    std::uint64_t range = 0;
    bool exclude_constant = false;
    std::size_t min_injectivity = 0;   // 0: command default
    std::optional<std::uint64_t> bound;
    std::uint64_t mmax = 200;
    std::size_t cap = kDefaultColumnCap;
    std::string canonical;
    std::string generators;
    std::string sunit;
    std::string count;
    std::size_t box = 6;
    std::optional<std::size_t> rank;
    std::uint64_t degree = 1;
};

/// PRTOOLKIT_BUDGET, when set, replaces every search budget.
inline std::uint64_t search_budget() {
    const char* env = std::getenv("PRTOOLKIT_BUDGET");
    if (!env || !*env) return kDefaultSearchBudget;
    std::string s(env);
    if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 19)
        throw Error(ErrorKind::Usage, "PRTOOLKIT_BUDGET must be a nonnegative integer, got '" + s + "'");
    return std::stoull(s);
}

namespace detail {

inline ClassifiedSystem load_system(const Options& o) {
    if (o.expr.empty() == o.file.empty()) throw Error(ErrorKind::Usage, "give exactly one of --expr or --file");
    if (!o.expr.empty()) return classify_text(o.expr);
    std::ifstream in(o.file);
    if (!in) throw Error(ErrorKind::Usage, "cannot read '" + o.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json_text(text);
    return classify_text(text);
}

inline Domain parse_domain(const std::string& d) {
    if (d == "N") return Domain::N;
    if (d == "Z") return Domain::Z;
    throw Error(ErrorKind::Usage, "--domain must be N or Z");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<BigRat> rational_list(const std::string& s, const char* flag) {
    std::vector<BigRat> out;
    try {
        for (const auto& t : split_list(s)) out.push_back(parse_bigrat(t));
    } catch (const Error&) {
        throw Error(ErrorKind::Usage, std::string(flag) + " expects comma-separated rationals, got '" + s + "'");
    }
    return out;
}

inline std::string witness_text(const ConstantWitness& w) { return w.all ? "all" : to_string(w.value); }

inline json partition_json(const OrderedPartition& p) {
    json blocks = json::array();
    for (const auto& b : p.blocks) {
        json blk = json::array();
        for (auto i : b) blk.push_back(i + 1);
        blocks.push_back(blk);
    }
    return {{"blocks", blocks}, {"text", p.to_string()}};
}

inline json expsum_json(const ExpSum& g) {
    json terms = json::array();
    for (const auto& t : g.terms()) terms.push_back({{"base", to_string(t.base)}, {"poly", t.poly.to_string("s")}});
    return {{"terms", terms}, {"text", g.to_string()}, {"scale", to_string(g.scale())}};
}

inline json dominance_json(const DominanceCertificate& c) {
    json branches = json::array();
    for (const auto& b : c.branches) {
        json j = {{"parity", b.parity}, {"direction", b.negative ? "negative" : "positive"}};
        if (b.identically_zero) {
            j["identically_zero"] = true;
        } else {
            j["dominant_base"] = to_string(b.dominant_base);
            j["next_base"] = to_string(b.next_base);
            j["others_coeff_sum"] = to_string(b.others_coeff_sum);
            j["upper_exp"] = b.upper_exp;
            j["t0"] = std::to_string(b.t0);
            if (b.last_failure) j["last_failure_s"] = std::to_string(b.to_s(*b.last_failure));
            json ex = json::array();
            for (const auto& e : b.exceptions) ex.push_back({{"s", std::to_string(b.to_s(e.t))}, {"zero", e.zero}});
            if (!ex.empty()) j["exceptions"] = ex;
        }
        branches.push_back(j);
    }
    return {{"s_plus", std::to_string(c.s_plus)},
            {"s_minus", std::to_string(c.s_minus)},
            {"zero_parities", c.zero_parities},
            {"far_zeros", [&] {
                 json z = json::array();
                 for (auto v : c.far_zeros) z.push_back(std::to_string(v));
                 return z;
             }()},
            {"branches", branches}};
}

inline json modular_json(const ModularCertificate& c) {
    return {{"modulus", std::to_string(c.modulus)}, {"period", std::to_string(c.period)}, {"residues", c.residues}};
}

inline std::string domain_note(Domain d) { return std::string("domain: ") + to_string(d); }

// --- decide ----------------------------------------------------------------

inline void decide_linear_system(const ClassifiedSystem& cs, const LinearSystem& ls, const Options& o, Report& r) {
    Domain dom = parse_domain(o.domain);
    auto v = decide_linear(ls.A, ls.b, dom, o.cap);
    r.status = v.status == LinearStatus::PR_COLUMNS ? "PR" : to_string(v.status);
    if (v.witness) {
        if (v.status == LinearStatus::PR_CONSTANT) r.witnesses.push_back(witness_text(*v.witness));
        else r.details["constant_solution_in_Z"] = witness_text(*v.witness);
    }
    if (v.certificate) {
        if (!verify_columns_partition(ls.A, *v.certificate))
            throw Error(ErrorKind::Domain, "internal error: columns certificate failed re-verification");
        r.certificates["columns_partition"] = partition_json(*v.certificate);
        r.summary.push_back("columns condition: " + v.certificate->to_string());
    }
    for (const auto& n : v.notes) r.notes.push_back(n);
    if (ls.vars.size() <= 2) {
        TwoVarPolySystem sys{ls.vars, prt::detail::polynomial_equations(cs)};
        bool inf = decide_infinitely_pr(sys);
        r.details["infinitely_pr"] = inf;
        r.summary.push_back(std::string("infinitely PR: ") + (inf ? "yes" : "no"));
    }
    r.notes.push_back(domain_note(dom));
}

inline void decide_twovar_system(const TwoVarPolySystem& sys, const Options& o, Report& r) {
    Domain dom = parse_domain(o.domain);
    auto v = decide_twovar(sys, dom);
    r.status = to_string(v.status);
    if (v.all_witnesses) r.witnesses.push_back("all");
    for (const auto& w : v.witnesses) r.witnesses.push_back(to_string(w));
    json diags = json::array();
    for (const auto& d : v.diagonals) diags.push_back(d.to_string("w"));
    r.certificates["diagonals"] = diags;
    r.details["infinitely_pr"] = v.infinitely_pr;
    r.summary.push_back(std::string("infinitely PR: ") + (v.infinitely_pr ? "yes" : "no"));
    for (const auto& n : v.notes) r.notes.push_back(n);
    r.notes.push_back(domain_note(dom));
}

inline void decide_general_system(const GeneralPolySystem& sys, const Options& o, Report& r) {
    Domain dom = parse_domain(o.domain);
    std::optional<std::vector<BigInt>> common;
    json diags = json::array();
    for (const auto& p : sys.polys) {
        UniPoly d = p.diagonal();
        diags.push_back(d.to_string("w"));
        if (d.is_zero()) continue;
        auto roots = integer_roots(d);
        if (!common) {
            common = roots;
        } else {
            std::vector<BigInt> keep;
            std::set_intersection(common->begin(), common->end(), roots.begin(), roots.end(), std::back_inserter(keep));
            common = keep;
        }
    }
    r.certificates["diagonals"] = diags;
    r.notes.push_back(domain_note(dom));
    if (!common) {
        r.status = "PR_CONSTANT";
        r.witnesses.push_back("all");
        return;
    }
    for (const auto& a : *common) {
        if (dom == Domain::N && a < 1) continue;
        std::vector<BigRat> pt(sys.vars.size(), BigRat(a));
        for (const auto& p : sys.polys)
            if (p.eval(pt) != 0) throw Error(ErrorKind::Domain, "internal error: witness failed re-verification");
        r.witnesses.push_back(to_string(a));
    }
    if (!r.witnesses.empty()) {
        r.status = "PR_CONSTANT";
    } else {
        r.status = "UNKNOWN";
        r.notes.push_back("no constant solution; no decision criterion applies to this class");
    }
}

inline void decide_polyexp_equation(const PolyExpEquation& eq, const Options& o, Report& r) {
    PolyExpOptions po;
    po.user_bound = o.bound;
    po.modulus_cap = o.mmax;
    po.field_degree = o.degree;
    auto v = decide_polyexp_pr(eq, po);
    r.status = to_string(v.status);
    if (eq.parameter) r.details["parameter"] = *eq.parameter;
    r.details["exponent_vars"] = eq.exponent_vars;

    const auto& h = v.hypothesis;
    json pairs = json::array();
    for (auto [i, j] : h.failing_pairs) pairs.push_back({i + 1, j + 1});
    r.certificates["hypothesis"] = {{"holds", h.holds},
                                    {"checked", h.checked},
                                    {"failing_pairs", pairs},
                                    {"mutually_coprime", h.coprime.coprime},
                                    {"unit_entry", h.coprime.unit_entry},
                                    {"notes", h.notes}};
    r.summary.push_back(std::string("G(P) trivial for all partitions: ") + (h.holds ? "yes" : "no"));
    for (const auto& n : h.notes) r.notes.push_back(n);

    json degs = json::array();
    for (int d : v.constants.degrees) degs.push_back(d);
    r.details["constants"] = {{"A", to_string(v.constants.A)}, {"B", to_string(v.constants.B)}, {"degrees", degs}};
    if (v.bound)
        r.details["solution_bound"] = {{"bell", to_string(v.bound->bell)},
                                       {"pow2_exponent", to_string(v.bound->pow2_exponent)},
                                       {"degree", to_string(v.bound->degree)},
                                       {"degree_exponent", to_string(v.bound->degree_exponent)}};

    if (v.diagonal) {
        r.certificates["diagonal"] = expsum_json(*v.diagonal);
        r.summary.push_back("diagonal: " + v.diagonal->to_string());
    }
    const auto& c = *v.constant;
    if (c.all_integers) r.witnesses.push_back("all");
    else if (c.witness) r.witnesses.push_back(to_string(*c.witness));
    r.details["window"] = {std::to_string(c.window_lo), std::to_string(c.window_hi)};
    if (c.dominance) {
        if (!v.diagonal || !verify_dominance(*v.diagonal, *c.dominance))
            throw Error(ErrorKind::Domain, "internal error: dominance certificate failed re-verification");
        r.certificates["dominance"] = dominance_json(*c.dominance);
        r.summary.push_back("dominance: no zero outside [" + std::to_string(c.window_lo) + ", " +
                            std::to_string(c.window_hi) + "], window scanned exhaustively");
    }
    if (c.modular) {
        if (!v.diagonal || !verify_modular_certificate(*v.diagonal, *c.modular))
            throw Error(ErrorKind::Domain, "internal error: modular certificate failed re-verification");
        r.certificates["modular"] = modular_json(*c.modular);
        r.summary.push_back("modular: never zero mod " + std::to_string(c.modular->modulus) + " (period " +
                            std::to_string(c.modular->period) + ")");
    }
    for (const auto& n : c.notes) r.notes.push_back(n);
    for (const auto& n : v.notes) r.notes.push_back(n);
    r.notes.push_back("domain: Z (polyexponential equations are decided over the integers)");
}

inline void run_decide(const Options& o, Report& r) {
    ClassifiedSystem cs = load_system(o);
    r.system_class = cs.class_name();
    r.vars = cs.vars();
    r.details["equations"] = print_ast(cs.ast);
    for (const auto& n : cs.notes) r.notes.push_back(n);
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearSystem>) decide_linear_system(cs, f, o, r);
            else if constexpr (std::is_same_v<T, TwoVarPolySystem>) decide_twovar_system(f, o, r);
            else if constexpr (std::is_same_v<T, PolyExpEquation>) decide_polyexp_equation(f, o, r);
            else decide_general_system(f, o, r);
        },
        cs.form);
}

// --- search / enumerate ------------------------------------------------------

inline std::size_t injectivity_for(const Options& o, std::size_t arity, std::size_t fallback) {
    std::size_t k = o.min_injectivity ? o.min_injectivity : (o.exclude_constant ? 2 : fallback);
    if (!o.min_injectivity) k = std::min(k, std::max<std::size_t>(arity, 1));
    return k;
}

inline json tuples_json(const SolutionSet& s) {
    json out = json::array();
    for (const auto& t : s.tuples) out.push_back(t);
    return out;
}

inline void run_enumerate(const Options& o, Report& r) {
    if (o.range < 1) throw Error(ErrorKind::Usage, "--range N is required (N >= 1)");
    ClassifiedSystem cs = load_system(o);
    r.system_class = cs.class_name();
    r.vars = cs.vars();
    auto all = enumerate_solutions(cs, o.range, search_budget());
    std::size_t k = injectivity_for(o, all.arity(), 1);
    auto s = filter_injectivity(all, k);
    r.outcome = "ENUMERATED";
    r.details["range"] = o.range;
    r.details["min_injectivity"] = k;
    r.details["count"] = s.size();
    r.details["solutions"] = tuples_json(s);
    r.summary.push_back(std::to_string(s.size()) + " solution(s) in [1.." + std::to_string(o.range) +
                        "] with at least " + std::to_string(k) + " distinct value(s)");
    for (const auto& t : s.tuples) {
        std::string line = "  (";
        for (std::size_t i = 0; i < t.size(); ++i) line += (i ? ", " : "") + std::to_string(t[i]);
        r.summary.push_back(line + ")");
    }
}

inline Coloring parse_canonical(const std::string& spec, std::uint64_t N) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::uint64_t param = 0;
    if (colon != std::string::npos) {
        std::string p = spec.substr(colon + 1);
        if (p.empty() || !std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw Error(ErrorKind::Usage, "invalid canonical coloring parameter '" + p + "'");
        param = std::stoull(p);
    }
    if (name == "parity") return canonical_coloring(CanonicalColoring::Parity, param, N);
    if (name == "mod_p") return canonical_coloring(CanonicalColoring::ModP, param, N);
    if (name == "dyadic_block") return canonical_coloring(CanonicalColoring::DyadicBlock, param, N);
    throw Error(ErrorKind::Usage, "unknown canonical coloring '" + name + "' (parity, mod_p:P, dyadic_block:R)");
}

inline json coloring_json(const Coloring& c) {
    return {{"range", c.N}, {"colors", c.r}, {"assignment", c.colors}, {"classes", c.to_string()}};
}

inline void run_search(const Options& o, Report& r) {
    if (o.range < 1) throw Error(ErrorKind::Usage, "--range N is required (N >= 1)");
    ClassifiedSystem cs = load_system(o);
    r.system_class = cs.class_name();
    r.vars = cs.vars();
    std::uint64_t budget = search_budget();
    auto all = enumerate_solutions(cs, o.range, budget);
    std::size_t k = injectivity_for(o, all.arity(), 2);
    auto s = filter_injectivity(all, k);
    r.details["range"] = o.range;
    r.details["colors"] = o.colors;
    r.details["min_injectivity"] = k;
    r.details["solutions"] = s.size();
    r.notes.push_back("solutions with fewer than " + std::to_string(k) + " distinct values are ignored" +
                      (k >= 2 ? " (constant solutions excluded)" : ""));

    if (!o.canonical.empty()) {
        Coloring c = parse_canonical(o.canonical, o.range);
        auto check = verify_coloring(c, s);
        r.outcome = check.ok ? "AVOIDING" : "MONOCHROMATIC";
        r.certificates["coloring"] = coloring_json(c);
        json bad = json::array();
        for (const auto& t : check.monochromatic) bad.push_back(t);
        r.details["monochromatic"] = bad;
        r.summary.push_back("canonical coloring " + o.canonical + ": " +
                            (check.ok ? "no monochromatic solution"
                                      : std::to_string(check.monochromatic.size()) + " monochromatic solution(s)"));
        return;
    }

    auto out = search_avoiding_coloring(s, o.range, o.colors, budget);
    std::visit(
        [&](const auto& res) {
            using T = std::decay_t<decltype(res)>;
            r.details["nodes"] = res.stats.nodes;
            r.details["edges"] = res.stats.edges;
            if constexpr (std::is_same_v<T, AvoidingColoring>) {
                r.outcome = "AVOIDING";
                r.certificates["coloring"] = coloring_json(res.coloring);
                r.summary.push_back("avoiding " + std::to_string(o.colors) + "-coloring: " + res.coloring.to_string());
            } else if constexpr (std::is_same_v<T, Forced>) {
                r.outcome = "FORCED";
                r.certificates["forced"] = {{"range", o.range}, {"colors", o.colors}, {"nodes", res.stats.nodes},
                                            {"exhaustive", res.exhaustive}};
                r.summary.push_back("every " + std::to_string(o.colors) + "-coloring of [1.." +
                                    std::to_string(o.range) + "] has a monochromatic solution");
            } else {
                r.outcome = "UNKNOWN";
                r.notes.push_back(res.reason);
            }
        },
        out);
}

// --- certify / rank / bound ---------------------------------------------------

inline void run_certify(const Options& o, Report& r) {
    ClassifiedSystem cs = load_system(o);
    r.system_class = cs.class_name();
    r.vars = cs.vars();
    const auto* eq = std::get_if<PolyExpEquation>(&cs.form);
    if (!eq) throw Error(ErrorKind::Unsupported, "certify needs an exponential equation");
    ExpSum g = diagonalize(*eq);
    if (g.is_zero()) throw Error(ErrorKind::Domain, "the exponential sum vanishes identically");
    r.certificates["diagonal"] = expsum_json(g);
    r.details["mmax"] = o.mmax;
    auto mc = modular_certificate_search(g, o.mmax);
    if (!mc) {
        r.outcome = "UNKNOWN";
        r.notes.push_back("no modulus M <= " + std::to_string(o.mmax) + " rules out every zero");
        return;
    }
    if (!verify_modular_certificate(g, *mc))
        throw Error(ErrorKind::Domain, "internal error: modular certificate failed re-verification");
    r.outcome = "CERTIFIED";
    r.certificates["modular"] = modular_json(*mc);
    r.summary.push_back(g.to_string() + " is never 0 mod " + std::to_string(mc->modulus) + " (period " +
                        std::to_string(mc->period) + ")");
}

inline void run_rank(const Options& o, Report& r) {
    if (o.generators.empty()) throw Error(ErrorKind::Usage, "--generators is required");
    GroupSpec g = subgroup_rank(rational_list(o.generators, "--generators"));
    r.outcome = "COMPUTED";
    json gens = json::array(), primes = json::array(), rows = json::array();
    for (const auto& x : g.generators) gens.push_back(to_string(x));
    for (const auto& p : g.primes) primes.push_back(to_string(p));
    for (const auto& row : g.exponents) {
        json jr = json::array();
        for (const auto& e : row) jr.push_back(to_string(e));
        rows.push_back(jr);
    }
    r.details["generators"] = gens;
    r.details["primes"] = primes;
    r.details["exponents"] = rows;
    r.details["rank"] = g.rank;
    r.details["solution_bound"] = to_string(sunit_solution_bound(g.rank));
    r.summary.push_back("rank: " + std::to_string(g.rank));

    if (!o.sunit.empty()) {
        auto c = rational_list(o.sunit, "--sunit");
        if (c.size() != 3) throw Error(ErrorKind::Usage, "--sunit expects three coefficients a,b,c");
        auto v = decide_sunit_3var(c[0], c[1], c[2], g);
        r.status = to_string(v.status);
        r.details["coefficient_sum"] = to_string(v.sum);
        if (v.status == SUnitStatus::PR_CONSTANT) r.witnesses.push_back("all");
        r.summary.push_back("a + b + c = " + to_string(v.sum));
    }
    if (!o.count.empty()) {
        auto c = rational_list(o.count, "--count");
        if (c.size() != 2) throw Error(ErrorKind::Usage, "--count expects two coefficients a,b");
        auto u = count_unit_equation_solutions(c[0], c[1], g, o.box);
        json sols = json::array();
        for (const auto& [x, y] : u.solutions) sols.push_back({to_string(x), to_string(y)});
        r.details["unit_equation"] = {{"box", o.box},        {"count", u.count},
                                      {"solutions", sols},   {"bound", to_string(u.bound)},
                                      {"within_bound", u.within_bound}};
        r.summary.push_back(std::to_string(u.count) + " solution(s) of a*x + b*y = 1 with exponents in [-" +
                            std::to_string(o.box) + ", " + std::to_string(o.box) + "]");
    }
}

inline void run_bound(const Options& o, Report& r) {
    r.outcome = "COMPUTED";
    if (o.rank) {
        r.details["rank"] = *o.rank;
        r.details["sunit_solution_bound"] = to_string(sunit_solution_bound(*o.rank));
        r.details["sunit_raw_bound"] = to_string(sunit_raw_bound(*o.rank));
        r.summary.push_back("two-unknown S-unit solutions: at most 2^" + std::to_string(16 * (*o.rank + 1)));
    }
    if (!o.expr.empty() || !o.file.empty()) {
        ClassifiedSystem cs = load_system(o);
        r.system_class = cs.class_name();
        r.vars = cs.vars();
        const auto* eq = std::get_if<PolyExpEquation>(&cs.form);
        if (!eq) throw Error(ErrorKind::Unsupported, "bound needs an exponential equation");
        auto c = compute_constants(*eq);
        auto b = solution_count_bound(*eq, o.degree);
        r.details["A"] = to_string(c.A);
        r.details["B"] = to_string(c.B);
        r.details["bell"] = to_string(b.bell);
        r.details["pow2_exponent"] = to_string(b.pow2_exponent);
        r.details["degree"] = to_string(b.degree);
        r.details["degree_exponent"] = to_string(b.degree_exponent);
        r.details["value"] = to_string(b.value);
        r.summary.push_back("A = " + to_string(c.A) + ", B = " + to_string(c.B));
        r.summary.push_back("solution count <= " + to_string(b.bell) + " * 2^" + to_string(b.pow2_exponent) + " * " +
                            to_string(b.degree) + "^" + to_string(b.degree_exponent));
    }
    if (!o.rank && o.expr.empty() && o.file.empty())
        throw Error(ErrorKind::Usage, "bound needs --rank or an equation (--expr / --file)");
}

}  // namespace detail

/// Runs one command; `args` excludes the program name. Exit codes: 0 decided,
/// 2 undecided, 1 usage / parse / input error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Partition regularity toolkit", "prtoolkit"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* c) {
        c->add_option("--expr", o.expr, "Equation text, e.g. \"2*x - y = 7\"");
        c->add_option("--file", o.file, "File with equation text or a JSON system");
    };
    auto add_common = [&](CLI::App* c) { c->add_flag("--json", o.json_out, "Emit a JSON report"); };

    auto* decide = app.add_subcommand("decide", "Decide partition regularity");
    add_input(decide);
    add_common(decide);
    decide->add_option("--domain", o.domain, "Solution domain: N or Z")->check(CLI::IsMember({"N", "Z"}));
    decide->add_option("--bound", o.bound, "Search bound for constant solutions");
    decide->add_option("--mmax", o.mmax, "Largest modulus for modular certificates");
    decide->add_option("--cap", o.cap, "Column cap for the columns condition");
    decide->add_option("--degree", o.degree, "Field degree d in the solution count bound");

    auto* search = app.add_subcommand("search", "Search for an avoiding coloring of [1..N]");
    add_input(search);
    add_common(search);
    search->add_option("--colors", o.colors, "Number of colors")->check(CLI::Range(1, 64));
    search->add_option("--range", o.range, "N");
    search->add_flag("--exclude-constant", o.exclude_constant, "Ignore constant solutions (default)");
    search->add_option("--min-injectivity", o.min_injectivity, "Minimum number of distinct values per solution");
    search->add_option("--canonical", o.canonical, "Check parity, mod_p:P or dyadic_block:R instead of searching");

    auto* enumerate = app.add_subcommand("enumerate", "List solutions in [1..N]");
    add_input(enumerate);
    add_common(enumerate);
    enumerate->add_option("--range", o.range, "N");
    enumerate->add_flag("--exclude-constant", o.exclude_constant, "Drop constant solutions");
    enumerate->add_option("--min-injectivity", o.min_injectivity, "Minimum number of distinct values per solution");

    auto* certify = app.add_subcommand("certify", "Find a modular non-vanishing certificate");
    add_input(certify);
    add_common(certify);
    certify->add_option("--mmax", o.mmax, "Largest modulus to try");

    auto* rank = app.add_subcommand("rank", "Rank of a multiplicative group");
    add_common(rank);
    rank->add_option("--generators", o.generators, "Comma-separated nonzero rationals");
    rank->add_option("--sunit", o.sunit, "Decide a*x + b*y + c*z = 0 over the group");
    rank->add_option("--count", o.count, "Count solutions of a*x + b*y = 1 in the group");
    rank->add_option("--box", o.box, "Exponent box for --count");

    auto* bound = app.add_subcommand("bound", "Solution count bounds");
    add_input(bound);
    add_common(bound);
    bound->add_option("--rank", o.rank, "Group rank r");
    bound->add_option("--degree", o.degree, "Field degree d");

    std::vector<const char*> argv{"prtoolkit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    Report r;
    r.command = app.get_subcommands().front()->get_name();
    auto start = std::chrono::steady_clock::now();
    auto finish = [&]() {
        r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start)
                           .count();
        if (o.json_out) out << to_json(r).dump(2) << "\n";
        else print_text(r, out);
        return r.exit_code();
    };
    try {
        if (r.command == "decide") detail::run_decide(o, r);
        else if (r.command == "search") detail::run_search(o, r);
        else if (r.command == "enumerate") detail::run_enumerate(o, r);
        else if (r.command == "certify") detail::run_certify(o, r);
        else if (r.command == "rank") detail::run_rank(o, r);
        else detail::run_bound(o, r);
    } catch (const Error& e) {
        if (e.is_unknown()) {
            if (r.command == "decide") r.status = "UNKNOWN";
            else r.outcome = "UNKNOWN";
            r.notes.push_back(e.what());
            return finish();
        }
        err << to_string(e.kind()) << " error: " << e.what() << "\n";
        if (o.json_out)
            out << json{{"command", r.command}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}.dump(2)
                << "\n";
        return 1;
    }
    return finish();
}

}  // namespace prt::cli
