#pragma once

#include <string>
#include <vector>

#include "prt/model.hpp"
#include "prt/rado.hpp"

namespace prt {

enum class TwoVarStatus { PR_CONSTANT, NOT_PR };

inline const char* to_string(TwoVarStatus s) { return s == TwoVarStatus::PR_CONSTANT ? "PR_CONSTANT" : "NOT_PR"; }

struct TwoVarVerdict {
    TwoVarStatus status = TwoVarStatus::NOT_PR;
    bool all_witnesses = false;       // every element of the domain is a constant solution
    std::vector<BigInt> witnesses;    // ascending; empty when all_witnesses
    bool infinitely_pr = false;
    std::vector<UniPoly> diagonals;   // one per polynomial kept
    std::vector<std::string> notes;
};

namespace detail {

inline std::vector<MultiPoly> nonzero_polys(const TwoVarPolySystem& sys) {
    if (sys.vars.size() > 2) throw Error(ErrorKind::Arity, "bivariate system expected");
    std::vector<MultiPoly> out;
    for (const auto& p : sys.polys) {
        if (p.is_zero()) continue;
        if (p.degree() < 1)
            throw Error(ErrorKind::Domain, "nonzero constant polynomial " + p.to_string() +
                                               " in system (every polynomial must have degree >= 1)");
        out.push_back(p);
    }
    return out;
}

}  // namespace detail

/// The system is infinitely PR iff (x - y) divides every polynomial, i.e.
/// every diagonal P_i(w, w) vanishes identically.
inline bool decide_infinitely_pr(const TwoVarPolySystem& sys) {
    for (const auto& p : detail::nonzero_polys(sys))
        if (!p.diagonal().is_zero()) return false;
    return true;
}

/// PR iff a constant solution exists: intersect the integer roots of the
/// nonzero diagonals, keeping only domain elements.
inline TwoVarVerdict decide_twovar(const TwoVarPolySystem& sys, Domain domain = Domain::N) {
    TwoVarVerdict v;
    auto polys = detail::nonzero_polys(sys);
    if (polys.size() != sys.polys.size()) v.notes.push_back("dropped zero polynomial(s)");

    std::optional<std::vector<BigInt>> common;
    for (const auto& p : polys) {
        UniPoly d = p.diagonal();
        v.diagonals.push_back(d);
        if (d.is_zero()) continue;
        auto roots = integer_roots(d);
        if (!common) {
            common = roots;
        } else {
            std::vector<BigInt> keep;
            std::set_intersection(common->begin(), common->end(), roots.begin(), roots.end(),
                                  std::back_inserter(keep));
            common = keep;
        }
    }
    v.infinitely_pr = !common.has_value();
    if (v.infinitely_pr) {
        v.all_witnesses = true;
        v.status = TwoVarStatus::PR_CONSTANT;
        return v;
    }
    for (const auto& r : *common)
        if (domain == Domain::Z || r >= 1) v.witnesses.push_back(r);

    // re-verify every witness on the original polynomials
    for (const auto& a : v.witnesses) {
        std::vector<BigRat> pt(sys.vars.size(), BigRat(a));
        for (const auto& p : polys)
            if (p.eval(pt) != 0) throw Error(ErrorKind::Domain, "internal error: witness failed re-verification");
    }
    v.status = v.witnesses.empty() ? TwoVarStatus::NOT_PR : TwoVarStatus::PR_CONSTANT;
    return v;
}

}  // namespace prt
