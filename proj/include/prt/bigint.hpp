#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "prt/error.hpp"

namespace prt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt num(const BigRat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const BigRat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const BigRat& r) { return den(r) == 1; }

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline BigRat abs(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
    BigInt result = 1;
    BigInt b = base;
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

/// base^e for any integer exponent; base must be nonzero when e < 0.
inline BigRat rpow(const BigRat& base, std::int64_t e) {
    if (e >= 0) {
        return BigRat(ipow(num(base), static_cast<std::uint64_t>(e)),
                      ipow(den(base), static_cast<std::uint64_t>(e)));
    }
    if (base == 0) throw Error(ErrorKind::Domain, "zero raised to a negative power");
    auto k = static_cast<std::uint64_t>(-(e + 1)) + 1;
    return BigRat(1) / BigRat(ipow(num(base), k), ipow(den(base), k));
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const BigRat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

/// Decimal integer with optional leading sign.
inline BigInt parse_bigint(std::string_view s) {
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body))
        throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
    BigInt v{std::string(body)};
    return neg ? BigInt(-v) : v;
}

/// "p" or "p/q" with optional sign on p.
inline BigRat parse_bigrat(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_bigint(s));
    BigInt p = parse_bigint(s.substr(0, slash));
    std::string_view qs = s.substr(slash + 1);
    if (!all_digits(qs))
        throw Error(ErrorKind::Parse, "not a rational: '" + std::string(s) + "'");
    BigInt q(std::string{qs});
    if (q == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
    return BigRat(p, q);
}

/// Floor of log2 for a positive 64-bit value.
inline unsigned floor_log2(std::uint64_t n) {
    unsigned r = 0;
    while (n >>= 1U) ++r;
    return r;
}

}  // namespace prt
