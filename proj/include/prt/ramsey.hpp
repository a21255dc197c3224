#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "prt/model.hpp"

namespace prt {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

/// Solutions with every variable in [1..N], lexicographic, deduplicated.
struct SolutionSet {
    std::uint64_t N = 0;
    std::vector<std::string> vars;
    std::vector<std::vector<std::uint64_t>> tuples;
    std::vector<std::vector<std::uint64_t>> supports;   // distinct values per tuple, ascending

    std::size_t arity() const { return vars.size(); }
    std::size_t size() const { return tuples.size(); }
};

namespace detail {

inline std::vector<std::uint64_t> support_of(const std::vector<std::uint64_t>& t) {
    std::vector<std::uint64_t> s(t);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline void finalize(SolutionSet& s) {
    std::sort(s.tuples.begin(), s.tuples.end());
    s.tuples.erase(std::unique(s.tuples.begin(), s.tuples.end()), s.tuples.end());
    s.supports.clear();
    for (const auto& t : s.tuples) s.supports.push_back(support_of(t));
}

inline void check_budget(std::uint64_t N, std::size_t dims, std::uint64_t budget) {
    long double cost = 1;
    for (std::size_t i = 0; i < dims; ++i) cost *= static_cast<long double>(N);
    if (cost > static_cast<long double>(budget))
        throw Error(ErrorKind::Budget, "projected enumeration cost " + std::to_string(static_cast<double>(cost)) +
                                           " exceeds the budget " + std::to_string(budget));
}

/// Calls visit(values) for every point of [1..N]^dims in lexicographic order.
template <class F>
void odometer(std::uint64_t N, std::size_t dims, F&& visit) {
    std::vector<std::uint64_t> v(dims, 1);
    if (N == 0) return;
    while (true) {
        visit(v);
        std::size_t i = dims;
        while (i > 0 && v[i - 1] == N) v[--i] = 1;
        if (i == 0) return;
        ++v[i - 1];
    }
}

inline std::vector<MultiPoly> polynomial_equations(const ClassifiedSystem& cs) {
    return std::visit(
        [](const auto& f) -> std::vector<MultiPoly> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearSystem>) {
                std::vector<MultiPoly> out;
                for (std::size_t i = 0; i < f.A.rows(); ++i) {
                    MultiPoly p = MultiPoly::constant(f.vars, -f.b[i]);
                    for (std::size_t j = 0; j < f.vars.size(); ++j) {
                        Exponent e(f.vars.size(), 0);
                        e[j] = 1;
                        p.add_term(e, f.A(i, j));
                    }
                    out.push_back(p);
                }
                return out;
            } else if constexpr (std::is_same_v<T, PolyExpEquation>) {
                throw Error(ErrorKind::Unsupported, "not a polynomial system");
            } else {
                return f.polys;
            }
        },
        cs.form);
}

inline SolutionSet enumerate_polynomial(const std::vector<std::string>& vars, const std::vector<MultiPoly>& polys_in,
                                        std::uint64_t N, std::uint64_t budget) {
    SolutionSet s;
    s.N = N;
    s.vars = vars;
    const std::size_t k = vars.size();
    if (k == 0) throw Error(ErrorKind::Domain, "system has no variables");
    std::vector<MultiPoly> polys;
    for (const auto& p : polys_in) polys.push_back(p.with_vars(vars));

    // solve for the last variable that actually occurs
    std::size_t solve = k - 1;
    for (std::size_t i = k; i-- > 0;) {
        bool used = std::any_of(polys.begin(), polys.end(), [i](const MultiPoly& p) { return p.uses_var(i); });
        if (used) {
            solve = i;
            break;
        }
    }
    check_budget(N, k - 1, budget);

    std::vector<BigRat> point(k);
    odometer(N, k - 1, [&](const std::vector<std::uint64_t>& rest) {
        for (std::size_t i = 0, r = 0; i < k; ++i)
            if (i != solve) point[i] = BigRat(rest[r++]);

        std::vector<std::uint64_t> candidates;
        bool all_free = true;
        for (const auto& p : polys) {
            UniPoly u = p.restrict_to(solve, point);
            if (u.is_zero()) continue;
            all_free = false;
            if (u.degree() == 0) return;
            if (u.degree() == 1) {
                BigRat root = -u.coeff(0) / u.coeff(1);
                if (is_integer(root) && num(root) >= 1 && num(root) <= N)
                    candidates.push_back(static_cast<std::uint64_t>(num(root)));
            } else {
                for (const auto& r : integer_roots(u))
                    if (r >= 1 && r <= N) candidates.push_back(static_cast<std::uint64_t>(r));
            }
            break;
        }
        if (all_free)
            for (std::uint64_t x = 1; x <= N; ++x) candidates.push_back(x);

        for (std::uint64_t x : candidates) {
            point[solve] = BigRat(x);
            bool ok = std::all_of(polys.begin(), polys.end(), [&](const MultiPoly& p) { return p.eval(point) == 0; });
            if (!ok) continue;
            std::vector<std::uint64_t> t(k);
            for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<std::uint64_t>(num(point[i]));
            s.tuples.push_back(std::move(t));
        }
    });
    finalize(s);
    return s;
}

inline SolutionSet enumerate_polyexp(const PolyExpEquation& eq, std::uint64_t N, std::uint64_t budget) {
    SolutionSet s;
    s.N = N;
    s.vars = eq.vars;
    check_budget(N, eq.vars.size(), budget);
    std::vector<BigInt> pt(eq.vars.size());
    odometer(N, eq.vars.size(), [&](const std::vector<std::uint64_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) pt[i] = v[i];
        if (eq.eval(pt) == 0) s.tuples.push_back(v);
    });
    finalize(s);
    return s;
}

}  // namespace detail

/// Every solution with all variables in [1..N]. Polynomial classes solve for
/// one variable by integer roots after fixing the others; polyexponential
/// equations are scanned directly.
inline SolutionSet enumerate_solutions(const ClassifiedSystem& cs, std::uint64_t N,
                                       std::uint64_t budget = kDefaultSearchBudget) {
    if (const auto* pe = std::get_if<PolyExpEquation>(&cs.form)) return detail::enumerate_polyexp(*pe, N, budget);
    return detail::enumerate_polynomial(cs.vars(), detail::polynomial_equations(cs), N, budget);
}

/// Keep tuples with at least r distinct values.
inline SolutionSet filter_injectivity(const SolutionSet& s, std::size_t r) {
    if (r < 1 || r > s.arity())
        throw Error(ErrorKind::Domain, "injectivity " + std::to_string(r) + " outside [1, " + std::to_string(s.arity()) + "]");
    SolutionSet out;
    out.N = s.N;
    out.vars = s.vars;
    for (std::size_t i = 0; i < s.tuples.size(); ++i)
        if (s.supports[i].size() >= r) {
            out.tuples.push_back(s.tuples[i]);
            out.supports.push_back(s.supports[i]);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Colorings
// ---------------------------------------------------------------------------

struct Coloring {
    std::uint64_t N = 0;
    std::uint32_t r = 0;
    std::vector<std::uint32_t> colors;   // colors[v - 1] for v in [1..N]

    std::uint32_t color(std::uint64_t v) const { return colors.at(v - 1); }

    /// Color classes as "1,4 | 2,3".
    std::string to_string() const {
        std::string out;
        std::uint32_t used = 0;
        for (auto c : colors) used = std::max(used, c + 1);
        for (std::uint32_t c = 0; c < used; ++c) {
            if (c) out += " | ";
            bool first = true;
            for (std::uint64_t v = 1; v <= N; ++v)
                if (colors[v - 1] == c) {
                    if (!first) out += ",";
                    out += std::to_string(v);
                    first = false;
                }
        }
        return out;
    }
};

struct ColoringCheck {
    bool ok = true;
    std::vector<std::vector<std::uint64_t>> monochromatic;
};

/// No tuple may be monochromatic; reports every offending tuple.
inline ColoringCheck verify_coloring(const Coloring& c, const SolutionSet& s) {
    if (c.colors.size() != c.N) throw Error(ErrorKind::Domain, "coloring is not total on [1..N]");
    ColoringCheck out;
    for (const auto& t : s.tuples) {
        for (auto v : t)
            if (v < 1 || v > c.N)
                throw Error(ErrorKind::Domain, "coloring does not cover value " + std::to_string(v));
        bool mono = std::all_of(t.begin(), t.end(), [&](std::uint64_t v) { return c.color(v) == c.color(t.front()); });
        if (mono) out.monochromatic.push_back(t);
    }
    out.ok = out.monochromatic.empty();
    return out;
}

enum class CanonicalColoring { Parity, ModP, DyadicBlock };

/// parity: n mod 2; mod_p: n mod p; dyadic_block: floor(log2 n) mod r.
inline Coloring canonical_coloring(CanonicalColoring kind, std::uint64_t param, std::uint64_t N) {
    Coloring c;
    c.N = N;
    switch (kind) {
    case CanonicalColoring::Parity: c.r = 2; break;
    case CanonicalColoring::ModP:
        if (param < 2) throw Error(ErrorKind::Domain, "mod_p needs p >= 2");
        c.r = static_cast<std::uint32_t>(param);
        break;
    case CanonicalColoring::DyadicBlock:
        if (param < 1) throw Error(ErrorKind::Domain, "dyadic_block needs r >= 1");
        c.r = static_cast<std::uint32_t>(param);
        break;
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
        std::uint64_t col = 0;
        switch (kind) {
        case CanonicalColoring::Parity: col = n % 2; break;
        case CanonicalColoring::ModP: col = n % param; break;
        case CanonicalColoring::DyadicBlock: col = floor_log2(n) % param; break;
        }
        c.colors.push_back(static_cast<std::uint32_t>(col));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

struct SearchStats {
    std::uint64_t nodes = 0;
    std::size_t edges = 0;
};

struct AvoidingColoring {
    Coloring coloring;
    SearchStats stats;
};

/// Exhaustive search finished without an avoiding coloring: every r-coloring
/// of [1..N] has a monochromatic solution.
struct Forced {
    SearchStats stats;
    bool exhaustive = true;
};

struct SearchUnknown {
    SearchStats stats;
    std::string reason;
};

using SearchOutcome = std::variant<AvoidingColoring, Forced, SearchUnknown>;

namespace detail {

class ColoringSearch {
public:
    ColoringSearch(const SolutionSet& s, std::uint64_t N, std::uint32_t r, std::uint64_t budget)
        : N_(N), r_(r), budget_(budget), color_(N + 1, kNone), allowed_(N + 1, full_mask(r)), edges_of_(N + 1) {
        std::set<std::vector<std::uint64_t>> uniq(s.supports.begin(), s.supports.end());
        for (const auto& e : uniq) {
            for (auto v : e)
                if (v < 1 || v > N) throw Error(ErrorKind::Domain, "solution value outside [1..N]");
            edges_.push_back(e);
        }
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (auto v : edges_[i]) edges_of_[v].push_back(i);
        stats_.edges = edges_.size();
    }

    SearchOutcome run() {
        for (const auto& e : edges_)
            if (e.size() == 1) return Forced{stats_, true};   // a constant solution is always monochromatic
        try {
            if (dfs(1, 0)) {
                Coloring c;
                c.N = N_;
                c.r = r_;
                for (std::uint64_t v = 1; v <= N_; ++v) c.colors.push_back(color_[v]);
                return AvoidingColoring{c, stats_};
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Budget) throw;
            return SearchUnknown{stats_, e.what()};
        }
        return Forced{stats_, true};
    }

private:
    static constexpr std::uint32_t kNone = ~0U;
    static std::uint64_t full_mask(std::uint32_t r) { return r >= 64 ? ~0ULL : (1ULL << r) - 1; }

    // assign v := c and forward-check every edge through v
    bool propagate(std::uint64_t v, std::uint32_t c) {
        for (std::size_t ei : edges_of_[v]) {
            const auto& e = edges_[ei];
            std::uint64_t open = 0;
            std::size_t n_open = 0;
            bool mixed = false;
            for (auto u : e) {
                if (color_[u] == kNone) {
                    open = u;
                    ++n_open;
                } else if (color_[u] != c) {
                    mixed = true;
                    break;
                }
            }
            if (mixed) continue;
            if (n_open == 0) return false;
            if (n_open == 1 && (allowed_[open] >> c & 1U)) {
                allowed_[open] &= ~(1ULL << c);
                trail_.emplace_back(open, c);
                if (allowed_[open] == 0) return false;
            }
        }
        return true;
    }

    bool dfs(std::uint64_t v, std::uint32_t used) {
        if (v > N_) return true;
        std::uint32_t limit = std::min(r_, used + 1);
        for (std::uint32_t c = 0; c < limit; ++c) {
            if (!(allowed_[v] >> c & 1U)) continue;
            if (++stats_.nodes > budget_)
                throw Error(ErrorKind::Budget, "search budget of " + std::to_string(budget_) + " nodes exhausted");
            std::size_t mark = trail_.size();
            color_[v] = c;
            if (propagate(v, c) && dfs(v + 1, std::max(used, c + 1))) return true;
            while (trail_.size() > mark) {
                auto [u, cc] = trail_.back();
                allowed_[u] |= 1ULL << cc;
                trail_.pop_back();
            }
            color_[v] = kNone;
        }
        return false;
    }

    std::uint64_t N_;
    std::uint32_t r_;
    std::uint64_t budget_;
    std::vector<std::uint32_t> color_;
    std::vector<std::uint64_t> allowed_;
    std::vector<std::vector<std::size_t>> edges_of_;
    std::vector<std::vector<std::uint64_t>> edges_;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> trail_;
    SearchStats stats_;
};

}  // namespace detail

/// Lexicographically least r-coloring of [1..N] with no monochromatic
/// solution, or Forced once the (pruned but exhaustive) search space is
/// empty. Values are colored 1..N in order and colors are introduced in
/// increasing order, so the first coloring found is the least one.
inline SearchOutcome search_avoiding_coloring(const SolutionSet& s, std::uint64_t N, std::uint32_t r,
                                              std::uint64_t budget = kDefaultSearchBudget) {
    if (r < 1 || r > 64) throw Error(ErrorKind::Domain, "number of colors must be in [1, 64]");
    if (N < 1) throw Error(ErrorKind::Domain, "range must be at least 1");
    auto out = detail::ColoringSearch(s, N, r, budget).run();
    if (const auto* a = std::get_if<AvoidingColoring>(&out))
        if (!verify_coloring(a->coloring, s).ok)
            throw Error(ErrorKind::Domain, "internal error: avoiding coloring failed re-verification");
    return out;
}

}  // namespace prt
