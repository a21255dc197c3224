#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prt/expsum.hpp"
#include "prt/factor.hpp"
#include "prt/matrix.hpp"
#include "prt/model.hpp"

namespace prt {

// ---------------------------------------------------------------------------
// Set partitions and Bell numbers
// ---------------------------------------------------------------------------

/// Blocks of 0-based indices, each ascending, blocks ordered by least element.
using SetPartition = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kDefaultPartitionCap = 12;

/// B_0 = 1, B_{k+1} = sum_{l=0}^{k} binom(k, l) B_l.
inline BigInt bell_number(std::size_t m) {
    std::vector<BigInt> B{1};
    for (std::size_t k = 0; k < m; ++k) {
        BigInt next = 0, binom = 1;
        for (std::size_t l = 0; l <= k; ++l) {
            next += binom * B[l];
            binom = binom * (k - l) / (l + 1);
        }
        B.push_back(next);
    }
    return B[m];
}

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Visits every set partition of [m] via restricted-growth strings
/// a_0 = 0, a_i <= 1 + max(a_0..a_{i-1}).
inline void for_each_partition(std::size_t m, const std::function<void(const SetPartition&)>& visit,
                               std::size_t cap = kDefaultPartitionCap) {
    if (m < 1) throw Error(ErrorKind::Domain, "partitions need m >= 1");
    if (m > cap) throw Error(ErrorKind::Cap, "m = " + std::to_string(m) + " exceeds the partition cap " + std::to_string(cap));
    std::vector<std::size_t> a(m, 0), mx(m, 0);
    while (true) {
        SetPartition p(mx[m - 1] + 1);
        for (std::size_t i = 0; i < m; ++i) p[a[i]].push_back(i);
        visit(p);
        std::size_t i = m - 1;
        while (i > 0 && a[i] == mx[i - 1] + 1) --i;
        if (i == 0) return;
        ++a[i];
        mx[i] = std::max(mx[i - 1], a[i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            a[j] = 0;
            mx[j] = mx[i];
        }
    }
}

inline std::vector<SetPartition> enumerate_partitions(std::size_t m, std::size_t cap = kDefaultPartitionCap) {
    std::vector<SetPartition> out;
    for_each_partition(m, [&](const SetPartition& p) { out.push_back(p); }, cap);
    if (BigInt(out.size()) != bell_number(m))
        throw Error(ErrorKind::Domain, "internal error: partition count disagrees with the Bell recurrence");
    return out;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

using Character = std::vector<BigInt>;

/// G(P) = {z in Z^n : alpha_i^z = alpha_j^z whenever i ~ j} is trivial iff
/// the prime-exponent difference rows of all related pairs have rank n. The
/// sign condition only cuts out a finite-index sublattice, so it cannot make
/// a nonzero kernel trivial.
inline bool character_group_trivial(const std::vector<Character>& chars, const SetPartition& partition,
                                     std::uint64_t budget = kDefaultTrialBudget) {
    if (chars.empty()) throw Error(ErrorKind::Domain, "no characters");
    const std::size_t n = chars.front().size();
    std::vector<std::vector<Factorization>> fac;
    std::set<BigInt> primes;
    for (const auto& c : chars) {
        if (c.size() != n) throw Error(ErrorKind::Arity, "characters of different lengths");
        std::vector<Factorization> row;
        for (const auto& a : c) {
            if (a == 0) throw Error(ErrorKind::Domain, "character entries must be nonzero");
            row.push_back(factor_integer(a, budget));
            for (const auto& [p, e] : row.back().factors) primes.insert(p);
        }
        fac.push_back(std::move(row));
    }
    std::vector<std::vector<BigRat>> rows;
    for (const auto& block : partition)
        for (std::size_t x = 0; x < block.size(); ++x)
            for (std::size_t y = x + 1; y < block.size(); ++y)
                for (const auto& p : primes) {
                    std::vector<BigRat> r(n);
                    for (std::size_t k = 0; k < n; ++k)
                        r[k] = BigInt(fac[block[x]][k].valuation(p)) - BigInt(fac[block[y]][k].valuation(p));
                    rows.push_back(std::move(r));
                }
    if (rows.empty()) return n == 0;
    return matrix_rank(RatMatrix::from_rows(rows)) == n;
}

struct CoprimeReport {
    bool coprime = true;
    bool unit_entry = false;   // some |alpha_ij| = 1: the shortcut no longer implies trivial G(P)
};

/// Pairwise coprimality of all character entries at distinct positions.
inline CoprimeReport mutually_coprime(const std::vector<Character>& chars) {
    CoprimeReport r;
    std::vector<BigInt> all;
    for (const auto& c : chars)
        for (const auto& a : c) {
            all.push_back(abs(a));
            if (abs(a) == 1) r.unit_entry = true;
        }
    for (std::size_t i = 0; i < all.size() && r.coprime; ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (gcd(all[i], all[j]) != 1) {
                r.coprime = false;
                break;
            }
    return r;
}

// ---------------------------------------------------------------------------
// Constants and bounds
// ---------------------------------------------------------------------------

struct ABConstants {
    BigInt A;
    BigInt B;
    std::vector<int> degrees;   // d_l, degree of P_l in the exponent variables
};

inline std::vector<bool> exponent_mask(const PolyExpEquation& eq) {
    std::vector<bool> mask(eq.vars.size(), false);
    for (std::size_t i = 0; i < eq.vars.size(); ++i)
        mask[i] = std::find(eq.exponent_vars.begin(), eq.exponent_vars.end(), eq.vars[i]) != eq.exponent_vars.end();
    return mask;
}

/// A = sum_l binom(n + d_l, n), B = max(n, A).
inline ABConstants compute_constants(const PolyExpEquation& eq) {
    ABConstants c;
    const std::size_t n = eq.n();
    auto mask = exponent_mask(eq);
    for (const auto& t : eq.terms) {
        int d = std::max(t.poly.degree_in(mask), 0);
        c.degrees.push_back(d);
        c.A += binomial(n + static_cast<std::size_t>(d), n);
    }
    c.B = std::max(BigInt(n), c.A);
    return c;
}

struct SolutionBound {
    BigInt bell;           // B_m
    BigInt pow2_exponent;  // 35 B^3
    BigInt degree;         // d
    BigInt degree_exponent;// 6 B^2
    BigInt value;          // B_m * 2^{35B^3} * d^{6B^2}
};

inline SolutionBound solution_count_bound(const PolyExpEquation& eq, std::uint64_t field_degree = 1) {
    if (field_degree < 1) throw Error(ErrorKind::Domain, "field degree must be >= 1");
    auto c = compute_constants(eq);
    SolutionBound b;
    b.bell = bell_number(eq.m());
    b.pow2_exponent = 35 * c.B * c.B * c.B;
    b.degree = field_degree;
    b.degree_exponent = 6 * c.B * c.B;
    if (b.pow2_exponent > 50'000'000 || b.degree_exponent > 50'000'000)
        throw Error(ErrorKind::Budget, "solution bound too large to expand exactly");
    b.value = b.bell * ipow(BigInt(2), static_cast<std::uint64_t>(b.pow2_exponent)) *
              ipow(b.degree, static_cast<std::uint64_t>(b.degree_exponent));
    return b;
}

// ---------------------------------------------------------------------------
// Diagonal reduction
// ---------------------------------------------------------------------------

/// g(s) = sum_i a_i^s A_i(s) with a_i = prod_k alpha_ik and
/// A_i(w) = P_i(w, ..., w) f_i(w).
inline ExpSum diagonalize(const PolyExpEquation& eq) {
    std::vector<ExpTerm> raw;
    for (const auto& t : eq.terms) {
        if (t.has_arbitrary_factor())
            throw Error(ErrorKind::Unsupported, "non-polynomial factor f_i: a search bound is required");
        BigInt a = 1;
        for (const auto& x : t.character) a *= x;
        UniPoly A = t.poly.diagonal();
        if (t.f) A = A * *t.f;
        raw.push_back({a, A});
    }
    return ExpSum::make(raw);
}

// ---------------------------------------------------------------------------
// Decision
// ---------------------------------------------------------------------------

struct HypothesisReport {
    bool holds = false;
    bool checked = false;                   // false when factorization was incomplete
    std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;   // 0-based term indices
    CoprimeReport coprime;
    bool polynomial_degeneracy_possible = true;
    std::vector<std::string> notes;
};

/// G(P) is checked on every partition with a block of size >= 2. G only
/// shrinks as blocks merge, so it suffices to check the partitions with a
/// single pair block.
inline HypothesisReport check_hypothesis(const PolyExpEquation& eq, std::uint64_t budget = kDefaultTrialBudget) {
    HypothesisReport h;
    auto chars = eq.characters();
    h.coprime = mutually_coprime(chars);
    if (h.coprime.unit_entry)
        h.notes.push_back("warning: a character entry is +-1; coprimality alone does not make G(P) trivial");
    if (eq.m() < 2) h.notes.push_back("single term: every partition is all-singletons, nothing to check");
    try {
        for (std::size_t i = 0; i < eq.m(); ++i)
            for (std::size_t j = i + 1; j < eq.m(); ++j) {
                SetPartition p;
                for (std::size_t k = 0; k < eq.m(); ++k)
                    if (k != j) p.push_back(k == i ? std::vector<std::size_t>{i, j} : std::vector<std::size_t>{k});
                if (!character_group_trivial(chars, p, budget)) h.failing_pairs.emplace_back(i, j);
            }
        h.checked = true;
        h.holds = h.failing_pairs.empty();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Incomplete) throw;
        h.notes.push_back(e.what());
    }
    for (const auto& t : eq.terms)
        if (t.poly.degree() == 0) h.polynomial_degeneracy_possible = false;
    if (h.polynomial_degeneracy_possible)
        h.notes.push_back("the polynomial system P_1 = ... = P_m = 0 may have solutions of its own; not analysed");
    return h;
}

enum class PolyExpStatus { PR_CONSTANT, NOT_PR, UNKNOWN };

inline const char* to_string(PolyExpStatus s) {
    switch (s) {
    case PolyExpStatus::PR_CONSTANT: return "PR_CONSTANT";
    case PolyExpStatus::NOT_PR: return "NOT_PR";
    case PolyExpStatus::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

struct PolyExpOptions {
    std::optional<std::uint64_t> user_bound;
    std::uint64_t modulus_cap = 200;
    std::uint64_t field_degree = 1;
    std::uint64_t trial_budget = kDefaultTrialBudget;
};

struct PolyExpVerdict {
    PolyExpStatus status = PolyExpStatus::UNKNOWN;
    HypothesisReport hypothesis;
    std::optional<ExpSum> diagonal;
    std::optional<ConstantSolutionResult> constant;
    ABConstants constants;
    std::optional<SolutionBound> bound;
    std::vector<std::string> notes;
};

/// When G(P) is trivial for every relevant partition, the equation is PR
/// over Z iff it has a constant solution, i.e. iff the diagonal sum g has an
/// integer zero.
inline PolyExpVerdict decide_polyexp_pr(const PolyExpEquation& eq, const PolyExpOptions& opts = {}) {
    PolyExpVerdict v;
    if (eq.m() == 0) throw Error(ErrorKind::Domain, "empty polyexponential equation");
    v.hypothesis = check_hypothesis(eq, opts.trial_budget);
    v.constants = compute_constants(eq);
    try {
        v.bound = solution_count_bound(eq, opts.field_degree);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) throw;
        v.notes.push_back(e.what());
    }

    bool arbitrary = std::any_of(eq.terms.begin(), eq.terms.end(), [](const PolyExpTerm& t) { return t.has_arbitrary_factor(); });
    if (arbitrary) {
        if (!opts.user_bound)
            throw Error(ErrorKind::Usage, "non-polynomial factor f_i: supply a search bound (--bound)");
        auto b = static_cast<std::int64_t>(*opts.user_bound);
        ConstantSolutionResult r;
        r.window_lo = -b;
        r.window_hi = b;
        for (std::int64_t s = -b; s <= b; ++s) {
            std::vector<BigInt> pt(eq.vars.size(), BigInt(s));
            if (eq.eval(pt) == 0) {
                r.solutions.emplace_back(s);
                if (!r.witness || detail::better_witness(BigInt(s), *r.witness)) r.witness = BigInt(s);
            }
        }
        r.outcome = r.witness ? ConstantOutcome::FOUND : ConstantOutcome::UNKNOWN;
        if (!r.witness) r.notes.push_back("no constant solution within the bound; nothing is claimed beyond it");
        v.constant = r;
    } else {
        v.diagonal = diagonalize(eq);
        v.constant = decide_constant_solution(*v.diagonal, {opts.user_bound, opts.modulus_cap});
    }

    // a constant solution is monochromatic under every coloring, so FOUND
    // proves PR whatever the hypothesis says
    if (v.constant->outcome == ConstantOutcome::FOUND) {
        v.status = PolyExpStatus::PR_CONSTANT;
        return v;
    }
    if (!v.hypothesis.holds) {
        v.status = PolyExpStatus::UNKNOWN;
        v.notes.push_back(v.hypothesis.checked
                              ? "G(P) is nontrivial for some partition: the constant-solution criterion does not apply"
                              : "G(P) could not be checked: the constant-solution criterion does not apply");
        return v;
    }
    v.status = v.constant->outcome == ConstantOutcome::NONE ? PolyExpStatus::NOT_PR : PolyExpStatus::UNKNOWN;
    return v;
}

}  // namespace prt
