#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "prt/bigint.hpp"

namespace prt {

inline constexpr std::uint64_t kDefaultTrialBudget = 1'000'000;

struct Factorization {
    int sign = 1;
    std::vector<std::pair<BigInt, unsigned>> factors;  // ascending primes

    BigInt recompose() const {
        BigInt v = 1;
        for (const auto& [p, e] : factors) v *= ipow(p, e);
        return sign < 0 ? BigInt(-v) : v;
    }

    unsigned valuation(const BigInt& p) const {
        for (const auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
};

/// Trial division by 2 and odd d <= budget. A leftover cofactor c with no
/// factor <= budget is prime when c <= budget^2; otherwise the factorization
/// is reported incomplete.
inline Factorization factor_integer(const BigInt& n, std::uint64_t budget = kDefaultTrialBudget) {
    if (n == 0) throw Error(ErrorKind::Domain, "cannot factor 0");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    BigInt rest = abs(n);

    auto strip = [&](const BigInt& d) {
        unsigned e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        if (e != 0) f.factors.emplace_back(d, e);
    };

    strip(2);
    for (std::uint64_t d = 3; d <= budget; d += 2) {
        BigInt bd = d;
        if (bd * bd > rest) break;
        strip(bd);
    }
    if (rest > 1) {
        BigInt b = budget;
        if (rest > b * b)
            throw Error(ErrorKind::Incomplete,
                        "factorization of " + to_string(n) + " incomplete: cofactor " +
                            to_string(rest) + " exceeds trial-division budget");
        f.factors.emplace_back(rest, 1);
    }
    return f;
}

/// All positive divisors of |n|, ascending.
inline std::vector<BigInt> positive_divisors(const BigInt& n,
                                             std::uint64_t budget = kDefaultTrialBudget) {
    Factorization f = factor_integer(n, budget);
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace prt
