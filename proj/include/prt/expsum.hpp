#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "prt/poly.hpp"

namespace prt {

// ---------------------------------------------------------------------------
// Exponential sums g(s) = sum_i a_i^s A_i(s)
// ---------------------------------------------------------------------------

struct ExpTerm {
    BigInt base;     // nonzero
    UniPoly poly;    // nonzero, integer coefficients once inside an ExpSum
};

/// Exponential sum with pairwise distinct bases, nonzero integer coefficient
/// polynomials, and terms kept in order of first appearance.
class ExpSum {
public:
    ExpSum() = default;

    /// Merges equal bases, drops vanishing terms, and multiplies everything by
    /// the least positive integer that clears all denominators (this scale is
    /// recorded; it does not change the zero set).
    static ExpSum make(const std::vector<ExpTerm>& raw) {
        std::vector<ExpTerm> merged;
        for (const auto& t : raw) {
            if (t.base == 0) throw Error(ErrorKind::Domain, "exponential base must be nonzero");
            auto it = std::find_if(merged.begin(), merged.end(), [&](const ExpTerm& m) { return m.base == t.base; });
            if (it == merged.end()) merged.push_back(t);
            else it->poly = it->poly + t.poly;
        }
        std::erase_if(merged, [](const ExpTerm& t) { return t.poly.is_zero(); });
        BigInt k = 1;
        for (const auto& t : merged) k = lcm(k, t.poly.clear_denominators().first);
        ExpSum g;
        g.scale_ = k;
        for (auto& t : merged) g.terms_.push_back({t.base, UniPoly::constant(BigRat(k)) * t.poly});
        return g;
    }

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const BigInt& scale() const { return scale_; }

    /// Exact value at any integer s.
    BigRat eval(const BigInt& s) const {
        BigRat acc = 0;
        auto e = static_cast<std::int64_t>(s);
        for (const auto& t : terms_) {
            BigRat p = t.poly.eval(BigRat(s));
            if (p != 0) acc += rpow(BigRat(t.base), e) * p;
        }
        return acc;
    }

    std::string to_string(const std::string& var = "s") const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) out += " + ";
            std::string b = terms_[i].base < 0 ? "(" + prt::to_string(terms_[i].base) + ")" : prt::to_string(terms_[i].base);
            out += b + "^" + var + "*(" + terms_[i].poly.to_string(var) + ")";
        }
        return out;
    }

private:
    std::vector<ExpTerm> terms_;
    BigInt scale_ = 1;
};

/// h(t) = g(2t + parity) = sum (a^2)^t a^parity A(2t + parity); the bases of
/// h are positive and pairwise distinct because a and -a merge.
inline ExpSum parity_part(const ExpSum& g, int parity) {
    std::vector<ExpTerm> raw;
    for (const auto& t : g.terms()) {
        UniPoly p = t.poly.compose_affine(2, parity);
        if (parity == 1) p = UniPoly::constant(BigRat(t.base)) * p;
        raw.push_back({t.base * t.base, p});
    }
    return ExpSum::make(raw);
}

/// For positive bases: h(-k) * (prod b_i)^k = sum (prod_{j != i} b_j)^k A_i(-k).
inline ExpSum negative_direction(const ExpSum& h) {
    BigInt prod = 1;
    for (const auto& t : h.terms()) {
        if (t.base <= 0) throw Error(ErrorKind::Domain, "negative_direction needs positive bases");
        prod *= t.base;
    }
    std::vector<ExpTerm> raw;
    for (const auto& t : h.terms()) raw.push_back({prod / t.base, t.poly.compose_affine(-1, 0)});
    return ExpSum::make(raw);
}

// ---------------------------------------------------------------------------
// Dominance
// ---------------------------------------------------------------------------

/// Integer root t >= t0 of the dominant polynomial. Dominance says nothing
/// there; the remaining terms decide whether the branch vanishes.
struct ExceptionPoint {
    std::uint64_t t = 0;
    bool zero = false;

    friend bool operator==(const ExceptionPoint&, const ExceptionPoint&) = default;
};

/// One branch (parity, direction) of a dominance argument on a sum `h` with
/// positive distinct bases, viewed for t >= 0.
struct BranchProof {
    int parity = 0;
    bool negative = false;
    ExpSum h;
    bool identically_zero = false;
    BigInt dominant_base;            // b_1, largest base
    BigInt next_base;                // b_2, largest other base (0 if none)
    BigInt others_coeff_sum;         // C = sum of |coefficients| of the other polynomials
    unsigned upper_exp = 0;          // |A_i(t)| <= C_i t^upper_exp for t >= 1
    std::uint64_t t0 = 0;            // dominance for every t >= t0 off the roots of A_1
    std::optional<std::uint64_t> last_failure;   // largest t < t0 without dominance
    std::vector<ExceptionPoint> exceptions;      // ascending

    /// Branch coordinate t maps to s = parity + 2t (positive) or parity - 2t.
    std::int64_t to_s(std::uint64_t t) const {
        auto tt = static_cast<std::int64_t>(t);
        return negative ? parity - 2 * tt : parity + 2 * tt;
    }
};

struct DominanceCertificate {
    std::uint64_t s_plus = 0;      // g(s) != 0 for every s > s_plus outside far_zeros
    std::uint64_t s_minus = 0;     // g(s) != 0 for every s < -s_minus outside far_zeros
    std::vector<BranchProof> branches;
    std::vector<int> zero_parities;        // parities on which g vanishes identically
    std::vector<std::int64_t> far_zeros;   // isolated zeros beyond the window, ascending
};

/// Roots of the dominant polynomial up to this many branch steps are absorbed
/// into the scanned window instead of becoming exception points.
inline constexpr std::uint64_t kWindowRootCap = 4096;

namespace detail {

inline std::vector<std::size_t> by_base_desc(const ExpSum& h) {
    std::vector<std::size_t> idx(h.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return h.terms()[a].base > h.terms()[b].base; });
    return idx;
}

inline BigInt eval_int(const UniPoly& p, const BigInt& t) {
    BigInt acc = 0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + num(c[i]);
    return acc;
}

/// |b_1^t A_1(t)| > sum_{i >= 2} b_i^t |A_i(t)|, exactly.
inline bool dominates_at(const ExpSum& h, const std::vector<std::size_t>& order, std::uint64_t t) {
    const auto& terms = h.terms();
    BigInt bt = t;
    BigInt lhs = abs(ipow(terms[order[0]].base, t) * eval_int(terms[order[0]].poly, bt));
    BigInt rhs = 0;
    for (std::size_t k = 1; k < order.size(); ++k)
        rhs += ipow(terms[order[k]].base, t) * abs(eval_int(terms[order[k]].poly, bt));
    return lhs > rhs;
}

/// b_1^t > C t^E b_2^t  and  b_1 t^E >= b_2 (t+1)^E. Since |A_1(t)| >= 1 at
/// every integer that is not a root, the first gives dominance at t and the
/// second keeps the ratio growing.
inline bool persistent_at(const BranchProof& p, std::uint64_t t) {
    if (t < 1) return false;
    BigInt bt = t;
    BigInt rhs = p.others_coeff_sum * ipow(bt, p.upper_exp) * ipow(p.next_base, t);
    if (!(ipow(p.dominant_base, t) > rhs)) return false;
    return p.dominant_base * ipow(bt, p.upper_exp) >= p.next_base * ipow(bt + 1, p.upper_exp);
}

inline ExpSum without_dominant(const ExpSum& h, const std::vector<std::size_t>& order) {
    std::vector<ExpTerm> rest;
    for (std::size_t k = 1; k < order.size(); ++k) rest.push_back(h.terms()[order[k]]);
    return ExpSum::make(rest);
}

inline BranchProof prove_branch(const ExpSum& h, int parity, bool negative);

/// h(t) == 0, without evaluating h where its terms are astronomically large.
inline bool vanishes_at(const ExpSum& h, std::uint64_t t) {
    if (h.is_zero()) return true;
    BranchProof p = prove_branch(h, 0, false);
    if (t < p.t0) return h.eval(BigInt(t)) == 0;
    for (const auto& e : p.exceptions)
        if (e.t == t) return e.zero;
    return false;
}

/// Integer roots t >= t0 of the dominant polynomial, each with its verdict.
inline std::vector<ExceptionPoint> exception_points(const ExpSum& h, const std::vector<std::size_t>& order,
                                                    std::uint64_t t0) {
    std::vector<ExceptionPoint> out;
    const auto& lead = h.terms()[order[0]].poly;
    if (lead.degree() < 1) return out;
    ExpSum rest = without_dominant(h, order);
    for (const auto& root : integer_roots(lead)) {
        if (root < BigInt(t0)) continue;
        if (root > BigInt(std::uint64_t{1} << 40)) throw Error(ErrorKind::Budget, "dominant polynomial has a root beyond 2^40");
        auto t = static_cast<std::uint64_t>(root);
        out.push_back({t, vanishes_at(rest, t)});
    }
    return out;
}

inline BranchProof prove_branch(const ExpSum& h, int parity, bool negative) {
    BranchProof p;
    p.parity = parity;
    p.negative = negative;
    p.h = h;
    if (h.is_zero()) {
        p.identically_zero = true;
        return p;
    }
    auto order = by_base_desc(h);
    p.dominant_base = h.terms()[order[0]].base;
    p.next_base = order.size() > 1 ? h.terms()[order[1]].base : BigInt(0);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& q = h.terms()[order[k]].poly;
        for (const auto& c : q.coeffs()) p.others_coeff_sum += abs(num(c));
        p.upper_exp = std::max(p.upper_exp, static_cast<unsigned>(q.degree()));
    }

    std::uint64_t lo = 1, hi = 1;
    while (!persistent_at(p, hi)) {
        lo = hi;
        if (hi > (std::uint64_t{1} << 40)) throw Error(ErrorKind::Budget, "dominance threshold search diverged");
        hi *= 2;
    }
    // least t in (lo, hi] with persistent_at; monotone once it first holds
    if (persistent_at(p, lo)) hi = lo;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (persistent_at(p, mid)) hi = mid;
        else lo = mid;
    }
    p.t0 = hi;
    // small roots of the dominant polynomial go into the window
    const auto& lead = h.terms()[order[0]].poly;
    if (lead.degree() >= 1)
        for (const auto& root : integer_roots(lead))
            if (root >= BigInt(p.t0) && root < BigInt(kWindowRootCap)) p.t0 = static_cast<std::uint64_t>(root) + 1;
    p.exceptions = exception_points(h, order, p.t0);
    for (std::uint64_t t = p.t0; t-- > 0;) {
        if (!dominates_at(h, order, t)) {
            p.last_failure = t;
            break;
        }
    }
    return p;
}

}  // namespace detail

/// Thresholds outside of which g vanishes at most at finitely many listed
/// points. Each parity class of s is handled separately (so that bases become
/// positive and distinct) and each direction is reduced to t -> +infinity,
/// where the largest base dominates.
inline DominanceCertificate dominance_bound(const ExpSum& g) {
    if (g.is_zero()) throw Error(ErrorKind::Domain, "exponential sum is identically zero: every integer is a solution");
    DominanceCertificate c;
    std::int64_t s_plus = 0, s_minus = 0;
    for (int parity = 0; parity < 2; ++parity) {
        ExpSum h = parity_part(g, parity);
        if (h.is_zero()) {
            c.zero_parities.push_back(parity);
            continue;
        }
        for (bool neg : {false, true}) {
            ExpSum branch = neg ? negative_direction(h) : h;
            BranchProof p = detail::prove_branch(branch, parity, neg);
            if (p.last_failure) {
                std::int64_t s = p.to_s(*p.last_failure);
                if (neg) s_minus = std::max(s_minus, -s);
                else s_plus = std::max(s_plus, s);
            }
            for (const auto& e : p.exceptions)
                if (e.zero) c.far_zeros.push_back(p.to_s(e.t));
            c.branches.push_back(std::move(p));
        }
    }
    std::sort(c.far_zeros.begin(), c.far_zeros.end());
    c.far_zeros.erase(std::unique(c.far_zeros.begin(), c.far_zeros.end()), c.far_zeros.end());
    c.s_plus = static_cast<std::uint64_t>(s_plus);
    c.s_minus = static_cast<std::uint64_t>(s_minus);
    return c;
}

/// Rebuilds every branch from g and re-checks the persistence inequalities at
/// t0, exact dominance strictly between the last failure and t0, every root
/// of the dominant polynomial beyond t0, and that g does not vanish at
/// s_plus + 1, s_plus + 2, -s_minus - 1, -s_minus - 2 unless listed.
inline bool verify_dominance(const ExpSum& g, const DominanceCertificate& c) {
    std::size_t bi = 0;
    std::vector<std::int64_t> far;
    for (int parity = 0; parity < 2; ++parity) {
        ExpSum h = parity_part(g, parity);
        bool zero = std::find(c.zero_parities.begin(), c.zero_parities.end(), parity) != c.zero_parities.end();
        if (h.is_zero() != zero) return false;
        if (zero) continue;
        for (bool neg : {false, true}) {
            if (bi >= c.branches.size()) return false;
            const BranchProof& p = c.branches[bi++];
            if (p.parity != parity || p.negative != neg) return false;
            ExpSum branch = neg ? negative_direction(h) : h;
            BranchProof fresh = detail::prove_branch(branch, parity, neg);
            if (fresh.dominant_base != p.dominant_base || fresh.next_base != p.next_base ||
                fresh.others_coeff_sum != p.others_coeff_sum || fresh.upper_exp != p.upper_exp)
                return false;
            if (!detail::persistent_at(p, p.t0)) return false;
            auto order = detail::by_base_desc(branch);
            if (detail::exception_points(branch, order, p.t0) != p.exceptions) return false;
            std::uint64_t from = p.last_failure ? *p.last_failure + 1 : 0;
            for (std::uint64_t t = from; t < p.t0; ++t)
                if (!detail::dominates_at(branch, order, t)) return false;
            if (p.last_failure && detail::dominates_at(branch, order, *p.last_failure)) return false;
            if (p.last_failure) {
                std::int64_t s = p.to_s(*p.last_failure);
                if (neg ? -s > static_cast<std::int64_t>(c.s_minus) : s > static_cast<std::int64_t>(c.s_plus))
                    return false;
            }
            for (const auto& e : p.exceptions)
                if (e.zero) far.push_back(p.to_s(e.t));
        }
    }
    if (bi != c.branches.size()) return false;
    std::sort(far.begin(), far.end());
    far.erase(std::unique(far.begin(), far.end()), far.end());
    if (far != c.far_zeros) return false;
    for (std::int64_t off : {1, 2}) {
        for (std::int64_t s : {static_cast<std::int64_t>(c.s_plus) + off, -static_cast<std::int64_t>(c.s_minus) - off}) {
            int parity = static_cast<int>(((s % 2) + 2) % 2);
            bool zero = std::find(c.zero_parities.begin(), c.zero_parities.end(), parity) != c.zero_parities.end();
            bool listed = std::binary_search(far.begin(), far.end(), s);
            if (!zero && !listed && g.eval(BigInt(s)) == 0) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Modular certificates
// ---------------------------------------------------------------------------

/// g(s) mod M never vanishes on a full period T, with every base a unit mod
/// M; hence g(s) != 0 for every integer s.
struct ModularCertificate {
    std::uint64_t modulus = 0;
    std::uint64_t period = 0;
    std::vector<std::uint64_t> residues;   // g(s) mod M for s in [0, period)
};

namespace detail {

inline std::uint64_t mod_of(const BigInt& x, std::uint64_t M) {
    BigInt r = x % M;
    if (r < 0) r += M;
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t M) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % M);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t M) {
    std::uint64_t r = 1 % M;
    a %= M;
    while (e) {
        if (e & 1U) r = mulmod(r, a, M);
        a = mulmod(a, a, M);
        e >>= 1U;
    }
    return r;
}

inline std::uint64_t mult_order(std::uint64_t a, std::uint64_t M) {
    if (M == 1) return 1;
    std::uint64_t x = a % M, k = 1;
    while (x != 1) {
        x = mulmod(x, a, M);
        if (++k > M) return 0;
    }
    return k;
}

/// Residue of g(s) mod M at s >= 0.
inline std::uint64_t residue_at(const ExpSum& g, std::uint64_t s, std::uint64_t M) {
    std::uint64_t acc = 0;
    for (const auto& t : g.terms()) {
        std::uint64_t p = 0;
        const auto& c = t.poly.coeffs();
        std::uint64_t sm = s % M;
        for (std::size_t i = c.size(); i-- > 0;) p = (mulmod(p, sm, M) + mod_of(num(c[i]), M)) % M;
        acc = (acc + mulmod(powmod(mod_of(t.base, M), s, M), p, M)) % M;
    }
    return acc;
}

inline bool coprime_to_bases(const ExpSum& g, std::uint64_t M) {
    for (const auto& t : g.terms())
        if (gcd(t.base, BigInt(M)) != 1) return false;
    return true;
}

inline std::uint64_t poly_period(const ExpSum& g, std::uint64_t M) {
    for (const auto& t : g.terms())
        if (t.poly.degree() > 0) return M;
    return 1;
}

}  // namespace detail

/// First modulus M in [2, M_max], ascending, coprime to every base, whose
/// residue table over one period has no zero.
inline std::optional<ModularCertificate> modular_certificate_search(const ExpSum& g, std::uint64_t M_max = 200) {
    if (g.is_zero()) return std::nullopt;
    for (const auto& t : g.terms())
        if (!t.poly.has_integer_coeffs()) throw Error(ErrorKind::Domain, "modular certificates need integer coefficients");
    for (std::uint64_t M = 2; M <= M_max; ++M) {
        if (!detail::coprime_to_bases(g, M)) continue;
        std::uint64_t T = detail::poly_period(g, M);
        for (const auto& t : g.terms()) T = std::lcm(T, detail::mult_order(detail::mod_of(t.base, M), M));
        ModularCertificate c{M, T, {}};
        c.residues.reserve(T);
        bool ok = true;
        for (std::uint64_t s = 0; s < T && ok; ++s) {
            std::uint64_t r = detail::residue_at(g, s, M);
            if (r == 0) ok = false;
            c.residues.push_back(r);
        }
        if (ok) return c;
    }
    return std::nullopt;
}

/// Checks the unit condition, that the period is compatible with every base
/// order and the polynomial period, that the table is correct and zero-free,
/// and periodicity over one further period.
inline bool verify_modular_certificate(const ExpSum& g, const ModularCertificate& c) {
    const std::uint64_t M = c.modulus, T = c.period;
    if (M < 2 || T == 0 || c.residues.size() != T) return false;
    if (!detail::coprime_to_bases(g, M)) return false;
    if (T % detail::poly_period(g, M) != 0) return false;
    for (const auto& t : g.terms())
        if (detail::powmod(detail::mod_of(t.base, M), T, M) != 1 % M) return false;
    for (std::uint64_t s = 0; s < T; ++s) {
        if (c.residues[s] == 0 || c.residues[s] >= M) return false;
        if (detail::residue_at(g, s, M) != c.residues[s]) return false;
        if (detail::residue_at(g, s + T, M) != c.residues[s]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Constant-solution decision
// ---------------------------------------------------------------------------

enum class ConstantOutcome { FOUND, NONE, UNKNOWN };

inline const char* to_string(ConstantOutcome o) {
    switch (o) {
    case ConstantOutcome::FOUND: return "FOUND";
    case ConstantOutcome::NONE: return "NONE";
    case ConstantOutcome::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

struct ConstantSolutionOptions {
    std::optional<std::uint64_t> user_bound;
    std::uint64_t modulus_cap = 200;
};

struct ConstantSolutionResult {
    ConstantOutcome outcome = ConstantOutcome::UNKNOWN;
    std::optional<BigInt> witness;     // least |s|, nonnegative first on ties
    std::vector<BigInt> solutions;     // every solution in the scanned window (outside zero parities)
    bool all_integers = false;
    std::vector<int> zero_parities;    // every s of these parities is a solution
    std::int64_t window_lo = 0, window_hi = 0;
    std::optional<DominanceCertificate> dominance;
    std::optional<ModularCertificate> modular;
    std::vector<std::string> notes;
};

namespace detail {

inline bool better_witness(const BigInt& a, const BigInt& b) {
    BigInt aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a > b;
}

}  // namespace detail

/// Is there an integer s with g(s) = 0? Zeros are confined by the dominance
/// bound to [-s_minus, s_plus], which is then scanned exactly, plus the
/// isolated far zeros the bound lists.
inline ConstantSolutionResult decide_constant_solution(const ExpSum& g, const ConstantSolutionOptions& opts = {}) {
    ConstantSolutionResult r;
    if (g.is_zero()) {
        r.outcome = ConstantOutcome::FOUND;
        r.all_integers = true;
        r.witness = BigInt(0);
        r.notes.push_back("exponential sum vanishes identically: every integer is a solution");
        return r;
    }
    DominanceCertificate dom = dominance_bound(g);
    r.zero_parities = dom.zero_parities;
    for (int p : dom.zero_parities) {
        BigInt w = p;   // 0 or 1 is the least-|s| element of its class
        if (!r.witness || detail::better_witness(w, *r.witness)) r.witness = w;
        r.notes.push_back(std::string("every ") + (p == 0 ? "even" : "odd") + " s is a solution");
    }

    std::int64_t lo = -static_cast<std::int64_t>(dom.s_minus), hi = static_cast<std::int64_t>(dom.s_plus);
    bool window_complete = true;
    if (opts.user_bound) {
        auto b = static_cast<std::int64_t>(*opts.user_bound);
        window_complete = lo >= -b && hi <= b;
        lo = -b;
        hi = b;
    }
    r.window_lo = lo;
    r.window_hi = hi;
    for (std::int64_t s = lo; s <= hi; ++s) {
        int parity = static_cast<int>(((s % 2) + 2) % 2);
        if (std::find(dom.zero_parities.begin(), dom.zero_parities.end(), parity) != dom.zero_parities.end()) continue;
        if (g.eval(BigInt(s)) == 0) {
            r.solutions.emplace_back(s);
            if (!r.witness || detail::better_witness(BigInt(s), *r.witness)) r.witness = BigInt(s);
        }
    }
    for (auto s : dom.far_zeros) {
        r.solutions.emplace_back(s);
        if (!r.witness || detail::better_witness(BigInt(s), *r.witness)) r.witness = BigInt(s);
    }
    std::sort(r.solutions.begin(), r.solutions.end());
    if (r.witness) {
        r.outcome = ConstantOutcome::FOUND;
        return r;
    }
    if (!window_complete) {
        r.outcome = ConstantOutcome::UNKNOWN;
        r.notes.push_back("no solution within the user bound; the dominance window extends beyond it");
        return r;
    }
    if (!verify_dominance(g, dom)) throw Error(ErrorKind::Domain, "internal error: dominance certificate failed re-verification");
    r.outcome = ConstantOutcome::NONE;
    r.dominance = std::move(dom);
    if (auto mc = modular_certificate_search(g, opts.modulus_cap)) {
        if (!verify_modular_certificate(g, *mc)) throw Error(ErrorKind::Domain, "internal error: modular certificate failed re-verification");
        r.modular = std::move(mc);
    } else {
        r.notes.push_back("no modular certificate with modulus <= " + std::to_string(opts.modulus_cap));
    }
    return r;
}

}  // namespace prt
