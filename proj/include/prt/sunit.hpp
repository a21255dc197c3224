#pragma once

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "prt/factor.hpp"
#include "prt/matrix.hpp"

namespace prt {

/// Finitely generated subgroup of Q^x given by generators, with its
/// prime-exponent lattice.
struct GroupSpec {
    std::vector<BigRat> generators;
    std::vector<BigInt> primes;                    // ascending union of primes in any generator
    std::vector<std::vector<BigInt>> exponents;    // one row per generator, columns follow `primes`
    std::vector<int> signs;                        // +1 / -1 per generator
    std::size_t rank = 0;

    /// The generator rebuilt from its sign and exponent row.
    BigRat recompose(std::size_t i) const {
        BigRat v = signs[i];
        for (std::size_t k = 0; k < primes.size(); ++k)
            v *= rpow(BigRat(primes[k]), static_cast<std::int64_t>(exponents[i][k]));
        return v;
    }
};

/// Rank of the free part of <generators>: the rank of the integer exponent
/// matrix (torsion {+1, -1} contributes nothing).
inline GroupSpec subgroup_rank(const std::vector<BigRat>& generators,
                               std::uint64_t budget = kDefaultTrialBudget) {
    if (generators.empty()) throw Error(ErrorKind::Domain, "group needs at least one generator");
    GroupSpec g;
    g.generators = generators;
    std::vector<std::pair<Factorization, Factorization>> fs;
    std::set<BigInt> primes;
    for (const auto& x : generators) {
        if (x == 0) throw Error(ErrorKind::Domain, "zero is not a unit");
        auto fn = factor_integer(num(x), budget);
        auto fd = factor_integer(den(x), budget);
        for (const auto& [p, e] : fn.factors) primes.insert(p);
        for (const auto& [p, e] : fd.factors) primes.insert(p);
        fs.emplace_back(std::move(fn), std::move(fd));
        g.signs.push_back(x < 0 ? -1 : 1);
    }
    g.primes.assign(primes.begin(), primes.end());
    RatMatrix m(generators.size(), g.primes.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        std::vector<BigInt> row;
        for (std::size_t k = 0; k < g.primes.size(); ++k) {
            BigInt e = BigInt(fs[i].first.valuation(g.primes[k])) - BigInt(fs[i].second.valuation(g.primes[k]));
            m(i, k) = e;
            row.push_back(e);
        }
        g.exponents.push_back(std::move(row));
    }
    g.rank = matrix_rank(m);
    return g;
}

/// 2^{16(r+1)}: solutions of an S-unit equation in two unknowns over a
/// rank-r group (the pair group has rank 2r).
inline BigInt sunit_solution_bound(std::size_t r) { return ipow(BigInt(2), 16 * (r + 1)); }

/// 2^{8(r+2)}: solutions of ax + by = 1 in a subgroup of rank r of the pair group.
inline BigInt sunit_raw_bound(std::size_t r) { return ipow(BigInt(2), 8 * (r + 2)); }

enum class SUnitStatus { PR_CONSTANT, NOT_PR };

inline const char* to_string(SUnitStatus s) { return s == SUnitStatus::PR_CONSTANT ? "PR_CONSTANT" : "NOT_PR"; }

struct SUnitVerdict {
    SUnitStatus status = SUnitStatus::NOT_PR;
    BigRat sum;
    BigInt bound;
};

/// ax + by + cz = 0 over a finite-rank group is PR iff it has constant
/// solutions, i.e. iff a + b + c = 0.
inline SUnitVerdict decide_sunit_3var(const BigRat& a, const BigRat& b, const BigRat& c, const GroupSpec& group) {
    if (a == 0 || b == 0 || c == 0) throw Error(ErrorKind::Domain, "coefficients must be nonzero");
    SUnitVerdict v;
    v.sum = a + b + c;
    v.status = v.sum == 0 ? SUnitStatus::PR_CONSTANT : SUnitStatus::NOT_PR;
    v.bound = sunit_solution_bound(group.rank);
    return v;
}

/// Every g_1^{e_1} ... g_k^{e_k} with |e_i| <= E, deduplicated and ascending.
inline std::vector<BigRat> enumerate_group_elements(const GroupSpec& group, std::size_t E) {
    std::set<BigRat> out{BigRat(1)};
    for (const auto& g : group.generators) {
        std::vector<BigRat> powers;
        for (std::int64_t e = -static_cast<std::int64_t>(E); e <= static_cast<std::int64_t>(E); ++e)
            powers.push_back(rpow(g, e));
        std::set<BigRat> next;
        for (const auto& x : out)
            for (const auto& p : powers) next.insert(x * p);
        out = std::move(next);
    }
    return {out.begin(), out.end()};
}

struct UnitEquationCount {
    std::size_t count = 0;
    std::vector<std::pair<BigRat, BigRat>> solutions;   // ascending
    BigInt bound;                                       // 2^{16(r+1)}
    bool within_bound = true;
};

/// Exhaustive count of (x, y) in the exponent box with a x + b y = 1.
inline UnitEquationCount count_unit_equation_solutions(const BigRat& a, const BigRat& b, const GroupSpec& group,
                                                       std::size_t E) {
    if (a == 0 || b == 0) throw Error(ErrorKind::Domain, "coefficients must be nonzero");
    auto elems = enumerate_group_elements(group, E);
    UnitEquationCount r;
    for (const auto& x : elems) {
        BigRat y = (1 - a * x) / b;
        if (std::binary_search(elems.begin(), elems.end(), y)) {
            if (a * x + b * y != 1) throw Error(ErrorKind::Domain, "internal error: solution failed re-verification");
            r.solutions.emplace_back(x, y);
        }
    }
    r.count = r.solutions.size();
    r.bound = sunit_solution_bound(group.rank);
    r.within_bound = BigInt(r.count) <= r.bound;
    return r;
}

/// Solutions of a x + b y + c z = 0 in the exponent box that are not
/// constant. Reported separately from the PR verdict, which concerns
/// constant solutions only.
inline std::vector<std::tuple<BigRat, BigRat, BigRat>> nonconstant_solutions_3var(const BigRat& a, const BigRat& b,
                                                                                 const BigRat& c,
                                                                                 const GroupSpec& group,
                                                                                 std::size_t E) {
    if (c == 0) throw Error(ErrorKind::Domain, "coefficients must be nonzero");
    auto elems = enumerate_group_elements(group, E);
    std::vector<std::tuple<BigRat, BigRat, BigRat>> out;
    for (const auto& x : elems)
        for (const auto& y : elems) {
            BigRat z = -(a * x + b * y) / c;
            if (!std::binary_search(elems.begin(), elems.end(), z)) continue;
            if (x == y && y == z) continue;
            out.emplace_back(x, y, z);
        }
    return out;
}

}  // namespace prt
