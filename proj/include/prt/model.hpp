#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prt/expr.hpp"
#include "prt/matrix.hpp"
#include "prt/poly.hpp"

namespace prt {

// ---------------------------------------------------------------------------
// Equation classes
// ---------------------------------------------------------------------------

/// A x = b. Columns follow `vars`.
struct LinearSystem {
    std::vector<std::string> vars;
    RatMatrix A;
    std::vector<BigRat> b;
};

/// P_1 = ... = P_m = 0 in at most two variables.
struct TwoVarPolySystem {
    std::vector<std::string> vars;
    std::vector<MultiPoly> polys;
};

/// Polynomial system with no dedicated decision criterion.
struct GeneralPolySystem {
    std::vector<std::string> vars;
    std::vector<MultiPoly> polys;
};

/// One additive term P(x, y) * f(y) * alpha^x of a polyexponential equation.
struct PolyExpTerm {
    MultiPoly poly;                                      // over PolyExpEquation::vars
    std::optional<UniPoly> f;                            // polynomial factor in the parameter
    std::function<BigRat(const BigInt&)> f_fn;           // arbitrary factor; needs a search bound
    std::vector<BigInt> character;                       // aligned with exponent_vars, all nonzero

    bool has_arbitrary_factor() const { return static_cast<bool>(f_fn); }
};

/// sum_i P_i(x, y) f_i(y) alpha_i^x = 0 over Z.
struct PolyExpEquation {
    std::vector<std::string> vars;            // every variable, declaration order
    std::vector<std::string> exponent_vars;   // variables in exponent position
    std::optional<std::string> parameter;     // first variable never in exponent position
    std::vector<PolyExpTerm> terms;

    std::size_t m() const { return terms.size(); }
    std::size_t n() const { return exponent_vars.size(); }

    std::vector<std::vector<BigInt>> characters() const {
        std::vector<std::vector<BigInt>> out;
        out.reserve(terms.size());
        for (const auto& t : terms) out.push_back(t.character);
        return out;
    }

    /// Left-hand side at an integer point (one value per entry of `vars`).
    BigRat eval(std::span<const BigInt> point) const {
        if (point.size() != vars.size()) throw Error(ErrorKind::Arity, "point arity mismatch");
        std::vector<BigRat> rp(point.begin(), point.end());
        std::optional<BigInt> yv;
        if (parameter) {
            auto it = std::find(vars.begin(), vars.end(), *parameter);
            yv = point[static_cast<std::size_t>(it - vars.begin())];
        }
        BigRat acc = 0;
        for (const auto& t : terms) {
            BigRat v = t.poly.eval(rp);
            if (v == 0) continue;
            if (t.f) v *= t.f->eval(yv.value_or(0));
            if (t.f_fn) v *= t.f_fn(yv.value_or(0));
            for (std::size_t k = 0; k < exponent_vars.size(); ++k) {
                auto it = std::find(vars.begin(), vars.end(), exponent_vars[k]);
                const BigInt& e = point[static_cast<std::size_t>(it - vars.begin())];
                v *= rpow(BigRat(t.character[k]), static_cast<std::int64_t>(e));
            }
            acc += v;
        }
        return acc;
    }
};

using EquationForm = std::variant<LinearSystem, TwoVarPolySystem, PolyExpEquation, GeneralPolySystem>;

inline const char* class_name(const EquationForm& f) {
    switch (f.index()) {
    case 0: return "LinearSystem";
    case 1: return "TwoVarPolySystem";
    case 2: return "PolyExpEquation";
    default: return "GeneralPoly";
    }
}

struct ClassifiedSystem {
    EquationAST ast;
    EquationForm form;
    std::vector<std::string> notes;

    const char* class_name() const { return prt::class_name(form); }
    std::vector<std::string> vars() const {
        return std::visit([](const auto& f) { return f.vars; }, form);
    }
};

// ---------------------------------------------------------------------------
// Normal form: sum over exponential monomials of polynomial coefficients
// ---------------------------------------------------------------------------

/// Exponential monomial prod base_v^v, keyed by variable name.
using ExpKey = std::map<std::string, BigInt>;
using NormalForm = std::map<ExpKey, MultiPoly>;

namespace detail {

inline void nf_add(NormalForm& acc, const ExpKey& k, const MultiPoly& p) {
    auto it = acc.find(k);
    if (it == acc.end()) {
        if (!p.is_zero()) acc.emplace(k, p);
        return;
    }
    it->second = it->second + p;
    if (it->second.is_zero()) acc.erase(it);
}

inline NormalForm nf_sum(const NormalForm& a, const NormalForm& b, bool subtract) {
    NormalForm out = a;
    for (const auto& [k, p] : b) nf_add(out, k, subtract ? -p : p);
    return out;
}

inline NormalForm nf_mul(const NormalForm& a, const NormalForm& b) {
    NormalForm out;
    for (const auto& [ka, pa] : a)
        for (const auto& [kb, pb] : b) {
            ExpKey k = ka;
            for (const auto& [v, base] : kb) {
                auto [it, inserted] = k.try_emplace(v, base);
                if (!inserted) it->second *= base;
            }
            nf_add(out, k, pa * pb);
        }
    return out;
}

inline NormalForm to_nf(const ExprPtr& e, const std::vector<std::string>& vars) {
    using K = Expr::Kind;
    switch (e->kind) {
    case K::Num: {
        NormalForm nf;
        nf_add(nf, {}, MultiPoly::constant(vars, e->value));
        return nf;
    }
    case K::Var: {
        auto idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), e->name) - vars.begin());
        NormalForm nf;
        nf_add(nf, {}, MultiPoly::variable(vars, idx));
        return nf;
    }
    case K::Exp: {
        NormalForm nf;
        nf_add(nf, ExpKey{{e->name, e->base}}, MultiPoly::constant(vars, 1));
        return nf;
    }
    case K::Pow: {
        NormalForm base = to_nf(e->lhs, vars);
        NormalForm acc;
        nf_add(acc, {}, MultiPoly::constant(vars, 1));
        for (unsigned i = 0; i < e->power; ++i) acc = nf_mul(acc, base);
        return acc;
    }
    case K::Neg: return nf_sum({}, to_nf(e->lhs, vars), true);
    case K::Add: return nf_sum(to_nf(e->lhs, vars), to_nf(e->rhs, vars), false);
    case K::Sub: return nf_sum(to_nf(e->lhs, vars), to_nf(e->rhs, vars), true);
    case K::Mul: return nf_mul(to_nf(e->lhs, vars), to_nf(e->rhs, vars));
    }
    return {};
}

}  // namespace detail

/// left - right of every equation, as normal forms over the shared variable list.
inline std::vector<NormalForm> normal_forms(const EquationAST& ast, const std::vector<std::string>& vars) {
    std::vector<NormalForm> out;
    for (const auto& eq : ast.equations)
        out.push_back(detail::nf_sum(detail::to_nf(eq.left, vars), detail::to_nf(eq.right, vars), true));
    return out;
}

inline MultiPoly polynomial_part(const NormalForm& nf, const std::vector<std::string>& vars) {
    auto it = nf.find(ExpKey{});
    return it == nf.end() ? MultiPoly(vars) : it->second;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Most specific class: linear, then bivariate polynomial, then
/// polyexponential, then general polynomial. Everything is moved to the
/// left-hand side; linear systems keep the constant on the right as b.
inline ClassifiedSystem classify(const EquationAST& ast) {
    if (ast.equations.empty()) throw Error(ErrorKind::Domain, "empty system");
    std::vector<std::string> vars = ast.variables();
    std::vector<NormalForm> nfs = normal_forms(ast, vars);

    bool has_exp = false;
    for (const auto& nf : nfs)
        for (const auto& [k, p] : nf)
            if (!k.empty()) has_exp = true;

    ClassifiedSystem out{ast, LinearSystem{}, {}};

    if (has_exp) {
        if (nfs.size() != 1)
            throw Error(ErrorKind::Unsupported, "polyexponential systems of more than one equation are not supported");
        const NormalForm& nf = nfs.front();
        PolyExpEquation pe;
        pe.vars = vars;
        for (const auto& v : vars)
            for (const auto& [k, p] : nf)
                if (k.count(v) && std::find(pe.exponent_vars.begin(), pe.exponent_vars.end(), v) ==
                                      pe.exponent_vars.end())
                    pe.exponent_vars.push_back(v);
        std::vector<std::string> params;
        for (const auto& v : vars)
            if (std::find(pe.exponent_vars.begin(), pe.exponent_vars.end(), v) == pe.exponent_vars.end())
                params.push_back(v);
        if (!params.empty()) {
            pe.parameter = params.front();
            std::string note = "parameter variable: " + params.front();
            if (params.size() > 1) {
                note += " (first of";
                for (const auto& v : params) note += " " + v;
                note += " by declaration order; the others are treated as polynomial variables)";
            }
            out.notes.push_back(note);
        }
        for (const auto& [k, p] : nf) {
            PolyExpTerm t;
            t.poly = p;
            for (const auto& v : pe.exponent_vars) {
                auto it = k.find(v);
                t.character.push_back(it == k.end() ? BigInt(1) : it->second);
            }
            pe.terms.push_back(std::move(t));
        }
        // order terms by first appearance in the source is lost in the map;
        // keep a deterministic order: ascending product of the character
        std::stable_sort(pe.terms.begin(), pe.terms.end(), [](const PolyExpTerm& a, const PolyExpTerm& b) {
            BigInt pa = 1, pb = 1;
            for (const auto& c : a.character) pa *= abs(c);
            for (const auto& c : b.character) pb *= abs(c);
            if (pa != pb) return pa < pb;
            return a.character < b.character;
        });
        out.form = std::move(pe);
        return out;
    }

    std::vector<MultiPoly> polys;
    for (const auto& nf : nfs) polys.push_back(polynomial_part(nf, vars));

    bool linear = std::all_of(polys.begin(), polys.end(), [](const MultiPoly& p) { return p.degree() <= 1; });
    if (linear) {
        LinearSystem ls;
        ls.vars = vars;
        ls.A = RatMatrix(polys.size(), vars.size());
        ls.b.resize(polys.size());
        for (std::size_t i = 0; i < polys.size(); ++i) {
            for (std::size_t j = 0; j < vars.size(); ++j) {
                Exponent e(vars.size(), 0);
                e[j] = 1;
                ls.A(i, j) = polys[i].coeff(e);
            }
            ls.b[i] = -polys[i].constant_term();
        }
        out.form = std::move(ls);
        return out;
    }
    if (vars.size() <= 2) {
        out.form = TwoVarPolySystem{vars, std::move(polys)};
        return out;
    }
    out.form = GeneralPolySystem{vars, std::move(polys)};
    return out;
}

inline ClassifiedSystem classify_text(std::string_view src) { return classify(parse_equation_text(src)); }

}  // namespace prt
