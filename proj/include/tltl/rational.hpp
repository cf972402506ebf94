#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Boost 1.74 defines mixed rational/integer equality in terms of itself; under
// C++20 rewritten comparisons that recurses forever. Exact-match overloads win
// resolution over the templates and break the cycle.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a == b; }
inline bool operator!=(const rational<std::int64_t>& a, std::int64_t b) { return !(a == b); }
inline bool operator!=(std::int64_t b, const rational<std::int64_t>& a) { return !(a == b); }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == std::int64_t{b}; }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == std::int64_t{b}; }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == std::int64_t{b}); }
inline bool operator!=(int b, const rational<std::int64_t>& a) { return !(a == std::int64_t{b}); }
}  // namespace boost

namespace tltl {

/// Exact time value. All clock, timeout and timing-variable values are kept
/// as rationals; no floating point is used anywhere in the engines.
using Rational = boost::rational<std::int64_t>;

/// Prints "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& r);

/// Parses "p" or "p/q" (optionally negative). Returns nullopt on malformed text.
std::optional<Rational> parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline Rational floor_of(const Rational& r) {
    auto n = r.numerator(), d = r.denominator();
    auto q = n / d;
    if (n % d != 0 && n < 0) --q;
    return Rational(q);
}

inline Rational ceil_of(const Rational& r) {
    Rational f = floor_of(r);
    return f == r ? f : f + 1;
}

}  // namespace tltl
