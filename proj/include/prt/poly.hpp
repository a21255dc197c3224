#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prt/bigint.hpp"
#include "prt/factor.hpp"

namespace prt {

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial c_0 + c_1 w + ... + c_d w^d over Q.
/// The coefficient vector is trimmed so the last entry is nonzero; the zero
/// polynomial has no coefficients and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(const BigRat& v) { return UniPoly(std::vector<BigRat>{v}); }
    static UniPoly identity() { return UniPoly(std::vector<BigRat>{0, 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    BigRat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }
    BigRat leading() const { return c_.empty() ? BigRat(0) : c_.back(); }

    BigRat eval(const BigRat& w) const {
        BigRat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + *it;
        return acc;
    }

    /// Returns (k, q) with k > 0 the lcm of the coefficient denominators and
    /// q = k * p having integer coefficients.
    std::pair<BigInt, UniPoly> clear_denominators() const {
        BigInt k = 1;
        for (const auto& c : c_) k = lcm(k, den(c));
        std::vector<BigRat> out;
        out.reserve(c_.size());
        for (const auto& c : c_) out.emplace_back(c * k);
        return {k, UniPoly(std::move(out))};
    }

    bool has_integer_coeffs() const {
        return std::all_of(c_.begin(), c_.end(), [](const BigRat& c) { return is_integer(c); });
    }

    /// p(scale * w + shift)
    UniPoly compose_affine(const BigRat& scale, const BigRat& shift) const {
        UniPoly lin(std::vector<BigRat>{shift, scale});
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<BigRat> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return UniPoly(std::move(out));
    }

    friend UniPoly operator-(const UniPoly& a) {
        std::vector<BigRat> out;
        out.reserve(a.c_.size());
        for (const auto& c : a.c_) out.emplace_back(-c);
        return UniPoly(std::move(out));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigRat> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(out));
    }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    /// Human-readable form, highest degree first, e.g. "w^2 - w + 2".
    std::string to_string(const std::string& var = "w") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigRat> c_;
};

namespace detail {

inline void append_term(std::string& out, const BigRat& coeff, const std::string& mono) {
    bool neg = coeff < 0;
    BigRat mag = neg ? BigRat(-coeff) : coeff;
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    if (mono.empty()) {
        out += to_string(mag);
    } else if (mag == 1) {
        out += mono;
    } else {
        out += to_string(mag) + "*" + mono;
    }
}

}  // namespace detail

inline std::string UniPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        std::string mono;
        if (i == 1) mono = var;
        else if (i > 1) mono = var + "^" + std::to_string(i);
        detail::append_term(out, c_[i], mono);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multivariate polynomials
// ---------------------------------------------------------------------------

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
}

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse polynomial over Q in an ordered list of named variables. Zero
/// coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, BigRat, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const BigRat& v) {
        MultiPoly p(std::move(vars));
        p.add_term(Exponent(p.vars_.size(), 0), v);
        return p;
    }

    static MultiPoly variable(std::vector<std::string> vars, std::size_t index) {
        MultiPoly p(std::move(vars));
        if (index >= p.vars_.size()) throw Error(ErrorKind::Arity, "variable index out of range");
        Exponent e(p.vars_.size(), 0);
        e[index] = 1;
        p.add_term(e, 1);
        return p;
    }

    static MultiPoly monomial(std::vector<std::string> vars, Exponent e, const BigRat& c) {
        MultiPoly p(std::move(vars));
        if (e.size() != p.vars_.size()) throw Error(ErrorKind::Arity, "exponent length mismatch");
        p.add_term(e, c);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Maximum total degree; -1 for the zero polynomial.
    int degree() const {
        if (terms_.empty()) return -1;
        return static_cast<int>(total_degree(terms_.rbegin()->first));
    }

    /// Maximum total degree counting only variables whose mask bit is set.
    int degree_in(const std::vector<bool>& mask) const {
        if (terms_.empty()) return -1;
        int best = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i < mask.size() && mask[i]) d += static_cast<int>(e[i]);
            best = std::max(best, d);
        }
        return best;
    }

    /// Whether variable `i` occurs with positive degree.
    bool uses_var(std::size_t i) const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [i](const auto& t) { return t.first[i] != 0; });
    }

    BigRat coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    BigRat constant_term() const { return coeff(Exponent(vars_.size(), 0)); }

    void add_term(const Exponent& e, const BigRat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Re-express over a variable list that contains every current variable.
    MultiPoly with_vars(const std::vector<std::string>& new_vars) const {
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end())
                throw Error(ErrorKind::Arity, "variable '" + vars_[i] + "' missing from target list");
            where[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        MultiPoly out(new_vars);
        for (const auto& [e, c] : terms_) {
            Exponent ne(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
            out.add_term(ne, c);
        }
        return out;
    }

    /// Exact value at `point` (one entry per variable).
    BigRat eval(std::span<const BigRat> point) const {
        if (point.size() != vars_.size())
            throw Error(ErrorKind::Arity, "point has " + std::to_string(point.size()) +
                                              " coordinates, polynomial has " +
                                              std::to_string(vars_.size()) + " variables");
        BigRat acc = 0;
        for (const auto& [e, c] : terms_) {
            BigRat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) t *= rpow(point[i], e[i]);
            acc += t;
        }
        return acc;
    }

    /// Substitute every variable by one fresh variable w.
    UniPoly diagonal() const {
        std::vector<BigRat> out(static_cast<std::size_t>(std::max(degree(), 0)) + 1);
        for (const auto& [e, c] : terms_) out[total_degree(e)] += c;
        return UniPoly(std::move(out));
    }

    /// Substitute the given values for every variable except `keep`; the
    /// result is a univariate polynomial in the kept variable.
    UniPoly restrict_to(std::size_t keep, std::span<const BigRat> values) const {
        std::vector<BigRat> out;
        for (const auto& [e, c] : terms_) {
            BigRat t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != keep && e[i] != 0) t *= rpow(values[i], e[i]);
            if (out.size() <= e[keep]) out.resize(e[keep] + 1);
            out[e[keep]] += t;
        }
        return UniPoly(std::move(out));
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly acc = constant(vars_, 1);
        for (unsigned i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = unify(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, c);
        return x;
    }

    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly out(a.vars_);
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
        return out;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = unify(a, b);
        MultiPoly out(x.vars_);
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                Exponent e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend MultiPoly operator*(const BigRat& k, const MultiPoly& p) {
        MultiPoly out(p.vars_);
        if (k == 0) return out;
        for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, k * c);
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Terms in descending graded-lex order, e.g. "x*y - z + 2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string mono;
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                unsigned k = it->first[i];
                if (k == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (k > 1) mono += "^" + std::to_string(k);
            }
            detail::append_term(out, it->second, mono);
        }
        return out;
    }

    /// Merge variable lists (left order first) and re-express both operands.
    static std::pair<MultiPoly, MultiPoly> unify(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> merged = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
        return {a.with_vars(merged), b.with_vars(merged)};
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

inline BigRat poly_eval(const MultiPoly& p, std::span<const BigRat> point) { return p.eval(point); }

inline UniPoly poly_diagonal(const MultiPoly& p) { return p.diagonal(); }

// ---------------------------------------------------------------------------
// Integer roots
// ---------------------------------------------------------------------------

/// All integer roots of a nonzero polynomial, ascending. Coefficients are
/// cleared to integers, the factor w^k is split off (contributing 0), and the
/// divisors of the remaining constant term are tested by exact evaluation.
inline std::vector<BigInt> integer_roots(const UniPoly& p,
                                         std::uint64_t budget = kDefaultTrialBudget) {
    if (p.is_zero())
        throw Error(ErrorKind::Domain, "integer_roots of the zero polynomial (every integer is a root)");
    auto [k, q] = p.clear_denominators();
    const auto& c = q.coeffs();
    std::size_t low = 0;
    while (c[low] == 0) ++low;

    std::vector<BigInt> roots;
    if (low > 0) roots.emplace_back(0);
    if (static_cast<int>(low) == q.degree()) return roots;

    BigInt c0 = num(c[low]);
    auto test = [&](const BigInt& r) {
        // evaluate the deflated polynomial sum_{i>=low} c_i r^(i-low)
        BigInt acc = 0;
        for (std::size_t i = c.size(); i-- > low;) acc = acc * r + num(c[i]);
        return acc == 0;
    };

    std::vector<BigInt> candidates;
    try {
        candidates = positive_divisors(c0, budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Incomplete) throw;
        // Cauchy bound |r| <= 1 + max |c_i / c_d|
        BigRat bound = 0;
        for (std::size_t i = low; i + 1 < c.size(); ++i) bound = std::max(bound, BigRat(abs(c[i] / c.back())));
        BigInt limit = num(bound) / den(bound) + 1;
        if (limit > BigInt(budget) * 16) throw;
        for (BigInt r = 1; r <= limit; ++r)
            if (c0 % r == 0) candidates.push_back(r);
    }
    for (const auto& d : candidates) {
        if (test(d)) roots.push_back(d);
        BigInt neg = -d;
        if (test(neg)) roots.push_back(neg);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// (x - y) divides p in Q[x, y], decided by the factor theorem: the diagonal
/// p(w, w) vanishes identically.
inline bool divides_x_minus_y(const MultiPoly& p) {
    for (const auto& v : p.vars())
        if (v != "x" && v != "y")
            throw Error(ErrorKind::Arity, "divides_x_minus_y expects variables within {x, y}, got '" + v + "'");
    return p.diagonal().is_zero();
}

}  // namespace prt
