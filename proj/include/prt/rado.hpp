#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prt/matrix.hpp"

namespace prt {

enum class Domain { N, Z };

inline const char* to_string(Domain d) { return d == Domain::N ? "N" : "Z"; }

/// Ordered blocks I_0, I_1, ..., I_r of 0-based column indices; each block
/// sorted ascending.
struct OrderedPartition {
    std::vector<std::vector<std::size_t>> blocks;

    friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;

    /// 1-based rendering, e.g. "({1,3},{2})".
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (b) s += ",";
            s += "{";
            for (std::size_t k = 0; k < blocks[b].size(); ++k) {
                if (k) s += ",";
                s += std::to_string(blocks[b][k] + 1);
            }
            s += "}";
        }
        return s + ")";
    }
};

/// Result of a constant-solution query: either a unique value or "every a".
struct ConstantWitness {
    bool all = false;
    BigInt value;

    friend bool operator==(const ConstantWitness&, const ConstantWitness&) = default;
    std::string to_string() const { return all ? std::string("all a") : prt::to_string(value); }
};

enum class LinearStatus { PR_CONSTANT, PR_COLUMNS, NOT_PR };

inline const char* to_string(LinearStatus s) {
    switch (s) {
    case LinearStatus::PR_CONSTANT: return "PR_CONSTANT";
    case LinearStatus::PR_COLUMNS: return "PR_COLUMNS";
    case LinearStatus::NOT_PR: return "NOT_PR";
    }
    return "?";
}

struct LinearVerdict {
    LinearStatus status = LinearStatus::NOT_PR;
    std::optional<ConstantWitness> witness;
    std::optional<OrderedPartition> certificate;
    std::vector<std::string> notes;
};

inline constexpr std::size_t kDefaultColumnCap = 12;

// ---------------------------------------------------------------------------
// Columns condition
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<BigRat> column_sum(const RatMatrix& A, std::uint32_t mask) {
    std::vector<BigRat> s(A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j)
        if (mask >> j & 1U)
            for (std::size_t i = 0; i < A.rows(); ++i) s[i] += A(i, j);
    return s;
}

inline std::vector<std::size_t> mask_indices(std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < 32; ++j)
        if (mask >> j & 1U) out.push_back(j);
    return out;
}

inline bool is_zero_vec(const std::vector<BigRat>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Sub-masks of `avail` ordered by their sorted index lists, lexicographically.
inline std::vector<std::uint32_t> lex_submasks(std::uint32_t avail) {
    std::vector<std::uint32_t> subs;
    for (std::uint32_t s = avail; s != 0; s = (s - 1) & avail) subs.push_back(s);
    std::sort(subs.begin(), subs.end(), [](std::uint32_t a, std::uint32_t b) {
        return mask_indices(a) < mask_indices(b);
    });
    return subs;
}

/// Dynamic program over the set U of columns already placed. Whether a block
/// J may follow depends only on U: J must sum to zero when U is empty and lie
/// in span(U) otherwise. remaining(U) is the least number of further blocks.
class ColumnsSearch {
public:
    explicit ColumnsSearch(const RatMatrix& A) : A_(A), full_((1U << A.cols()) - 1) {}

    std::optional<OrderedPartition> run() {
        if (remaining(0) == kInf) return std::nullopt;
        OrderedPartition p;
        std::uint32_t used = 0;
        while (used != full_) {
            int need = remaining(used);
            for (std::uint32_t J : lex_submasks(full_ & ~used)) {
                if (!valid(used, J)) continue;
                if (remaining(used | J) == need - 1) {
                    p.blocks.push_back(mask_indices(J));
                    used |= J;
                    break;
                }
            }
        }
        return p;
    }

private:
    static constexpr int kInf = 1 << 20;

    bool valid(std::uint32_t used, std::uint32_t J) {
        auto s = column_sum(A_, J);
        if (used == 0) return is_zero_vec(s);
        return basis(used).contains(s);
    }

    const SpanBasis& basis(std::uint32_t used) {
        auto it = bases_.find(used);
        if (it != bases_.end()) return it->second;
        SpanBasis b(A_.rows());
        for (std::size_t j : mask_indices(used)) b.insert(A_.column(j));
        return bases_.emplace(used, std::move(b)).first->second;
    }

    int remaining(std::uint32_t used) {
        if (used == full_) return 0;
        auto it = memo_.find(used);
        if (it != memo_.end()) return it->second;
        int best = kInf;
        std::uint32_t avail = full_ & ~used;
        if (used != 0) {
            // columns individually in span(U) can always be absorbed into the next block
            std::uint32_t absorbable = 0;
            for (std::size_t j : mask_indices(avail))
                if (basis(used).contains(A_.column(j))) absorbable |= 1U << j;
            if (absorbable == avail) best = 1;
        }
        if (best != 1) {
            for (std::uint32_t J = avail; J != 0; J = (J - 1) & avail) {
                if (!valid(used, J)) continue;
                int r = remaining(used | J);
                if (r + 1 < best) best = r + 1;
                if (best == 1) break;
            }
        }
        memo_.emplace(used, best);
        return best;
    }

    const RatMatrix& A_;
    std::uint32_t full_;
    std::map<std::uint32_t, int> memo_;
    std::map<std::uint32_t, SpanBasis> bases_;
};

}  // namespace detail

/// Re-check a partition against the definition using matrix_rank: block I_0
/// sums to zero, and each later block sum leaves the rank of the earlier
/// columns unchanged.
inline bool verify_columns_partition(const RatMatrix& A, const OrderedPartition& p) {
    if (p.blocks.empty()) return false;
    std::vector<bool> seen(A.cols(), false);
    for (const auto& b : p.blocks) {
        if (b.empty()) return false;
        for (std::size_t j : b) {
            if (j >= A.cols() || seen[j]) return false;
            seen[j] = true;
        }
    }
    for (bool s : seen)
        if (!s) return false;

    std::vector<std::size_t> earlier;
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
        std::vector<BigRat> sum(A.rows());
        for (std::size_t j : p.blocks[k])
            for (std::size_t i = 0; i < A.rows(); ++i) sum[i] += A(i, j);
        if (k == 0) {
            if (!detail::is_zero_vec(sum)) return false;
        } else {
            std::size_t r0 = matrix_rank(A.select_columns(earlier));
            std::size_t r1 = matrix_rank(A.select_columns(earlier, &sum));
            if (r0 != r1) return false;
        }
        earlier.insert(earlier.end(), p.blocks[k].begin(), p.blocks[k].end());
    }
    return true;
}

/// An ordered partition witnessing the columns condition, or nullopt. Among
/// all witnesses the one with fewest blocks is returned, ties broken by
/// comparing the block sequence lexicographically (blocks as sorted index
/// lists).
inline std::optional<OrderedPartition> columns_condition(const RatMatrix& A,
                                                         std::size_t cap = kDefaultColumnCap) {
    if (A.rows() == 0 || A.cols() == 0) throw Error(ErrorKind::Domain, "columns_condition needs a nonempty matrix");
    if (A.cols() > cap || A.cols() > 30)
        throw Error(ErrorKind::Cap, "matrix has " + std::to_string(A.cols()) + " columns, above the cap of " +
                                        std::to_string(cap) + " (raise it with --cap)");
    auto p = detail::ColumnsSearch(A).run();
    if (p && !verify_columns_partition(A, *p))
        throw Error(ErrorKind::Domain, "internal error: columns partition failed re-verification");
    return p;
}

// ---------------------------------------------------------------------------
// Constant solutions
// ---------------------------------------------------------------------------

/// a with A (a, ..., a) = b: each row reads a * rowsum_i = b_i.
inline std::optional<ConstantWitness> constant_solution_linear(const RatMatrix& A, const std::vector<BigRat>& b,
                                                               Domain domain) {
    if (b.size() != A.rows()) throw Error(ErrorKind::Arity, "b must have one entry per row");
    auto sums = A.row_sums();
    std::optional<BigRat> forced;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (sums[i] == 0) {
            if (b[i] != 0) return std::nullopt;
            continue;
        }
        BigRat a = b[i] / sums[i];
        if (forced && *forced != a) return std::nullopt;
        forced = a;
    }
    if (!forced) return ConstantWitness{true, 0};
    if (!is_integer(*forced)) return std::nullopt;
    BigInt a = num(*forced);
    if (domain == Domain::N && a < 1) return std::nullopt;
    return ConstantWitness{false, a};
}

// ---------------------------------------------------------------------------
// Deciders
// ---------------------------------------------------------------------------

/// PR of A x = b. Over N: a constant solution in N, or the columns condition
/// together with a constant solution in Z. Over Z: a constant solution in Z.
inline LinearVerdict decide_linear(const RatMatrix& A, const std::vector<BigRat>& b, Domain domain = Domain::N,
                                   std::size_t cap = kDefaultColumnCap) {
    LinearVerdict v;
    if (auto w = constant_solution_linear(A, b, domain)) {
        v.status = LinearStatus::PR_CONSTANT;
        v.witness = w;
        return v;
    }
    if (domain == Domain::Z) {
        v.notes.push_back("no constant solution in Z");
        return v;
    }
    auto wz = constant_solution_linear(A, b, Domain::Z);
    if (!wz) {
        v.notes.push_back("no constant solution in Z");
        return v;
    }
    if (auto p = columns_condition(A, cap)) {
        v.status = LinearStatus::PR_COLUMNS;
        v.certificate = p;
        v.witness = wz;
        v.notes.push_back("columns condition holds; constant solution in Z: " + wz->to_string());
        return v;
    }
    v.notes.push_back("columns condition fails and no constant solution in N");
    return v;
}

/// Single equation c . x = b over N via subset sums: PR iff a constant
/// solution in N exists, or some nonempty J has sum_{j in J} c_j = 0 and a
/// constant solution in Z exists.
inline LinearVerdict rado_single(const std::vector<BigRat>& c, const BigRat& b) {
    if (c.empty()) throw Error(ErrorKind::Domain, "empty coefficient vector");
    for (const auto& x : c)
        if (x == 0) throw Error(ErrorKind::Domain, "rado_single requires nonzero coefficients");
    if (c.size() > 30) throw Error(ErrorKind::Cap, "too many coefficients for subset enumeration");

    BigRat total = 0;
    for (const auto& x : c) total += x;

    LinearVerdict v;
    std::optional<ConstantWitness> wn, wz;
    if (total == 0) {
        if (b == 0) wn = wz = ConstantWitness{true, 0};
    } else {
        BigRat a = b / total;
        if (is_integer(a)) {
            wz = ConstantWitness{false, num(a)};
            if (num(a) >= 1) wn = wz;
        }
    }
    if (wn) {
        v.status = LinearStatus::PR_CONSTANT;
        v.witness = wn;
        return v;
    }
    if (!wz) return v;

    // smallest zero-sum subset, ties lexicographic
    const std::size_t n = c.size();
    std::optional<std::vector<std::size_t>> best;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        BigRat s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1U) s += c[j];
        if (s != 0) continue;
        auto idx = detail::mask_indices(mask);
        if (!best || idx.size() < best->size() || (idx.size() == best->size() && idx < *best)) best = idx;
    }
    if (!best) return v;

    OrderedPartition p;
    p.blocks.push_back(*best);
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < n; ++j)
        if (std::find(best->begin(), best->end(), j) == best->end()) rest.push_back(j);
    if (!rest.empty()) p.blocks.push_back(rest);
    v.status = LinearStatus::PR_COLUMNS;
    v.certificate = p;
    v.witness = wz;
    return v;
}

}  // namespace prt
