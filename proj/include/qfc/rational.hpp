#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "qfc/error.hpp"

namespace qfc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline int sign(const Integer& n) { return n.sign(); }
inline int sign(const Rational& r) { return r.sign(); }

/// floor(n / d) for d != 0.
inline Integer floor_div(const Integer& n, const Integer& d)
{
    Integer q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0)))
        --q;
    return q;
}

inline Integer floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

inline Integer ceil(const Rational& r) { return -floor(-r); }

/// Nearest integer, halves rounded up: floor(r + 1/2).
inline Integer round_nearest(const Rational& r) { return floor(r + Rational(1, 2)); }

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0)
        raise(ErrorKind::ZeroArgument, "isqrt of a negative integer");
    return boost::multiprecision::sqrt(n);
}

inline std::optional<Integer> exact_sqrt(const Integer& n)
{
    if (n < 0)
        return std::nullopt;
    Integer s = isqrt(n);
    if (s * s == n)
        return s;
    return std::nullopt;
}

inline std::optional<Rational> exact_sqrt(const Rational& r)
{
    auto p = exact_sqrt(numerator(r));
    auto q = exact_sqrt(denominator(r));
    if (!p || !q)
        return std::nullopt;
    return Rational(*p, *q);
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    Integer g = boost::multiprecision::gcd(a, b);
    return boost::multiprecision::abs(a / g * b);
}

/// Canonical "p/q" form, q >= 1, always with an explicit denominator.
inline std::string to_fraction_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Short form used in human-readable output: "p" when q == 1.
inline std::string to_short_string(const Rational& r)
{
    if (is_integer(r))
        return numerator(r).str();
    return to_fraction_string(r);
}

namespace detail {

inline bool is_signed_digits(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

inline Integer parse_integer(std::string_view s)
{
    if (!is_signed_digits(s))
        raise(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
    if (s.front() == '+')
        s.remove_prefix(1);
    return Integer(std::string(s));
}

} // namespace detail

/// Parses "p" or "p/q" (q > 0).
inline Rational parse_rational(std::string_view s)
{
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(s));
    Integer p = detail::parse_integer(s.substr(0, slash));
    std::string_view qs = s.substr(slash + 1);
    if (!qs.empty() && (qs.front() == '-' || qs.front() == '+'))
        raise(ErrorKind::ParseError, "signed denominator in '" + std::string(s) + "'");
    Integer q = detail::parse_integer(qs);
    if (q == 0)
        raise(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    return Rational(p, q);
}

} // namespace qfc
