#pragma once

// Exact arithmetic in the ring of integers O_K of the supported base fields K.
//
// Every field in the registry is Q or a quadratic field Q(sqrt(m)) of narrow
// class number one whose ring of integers is norm-Euclidean. Elements are
// stored as c0 + c1*w over the integral basis {1, w}, where w is sqrt(m) or
// (1 + sqrt(m))/2. Signs under the real embeddings are decided with rational
// arithmetic only.

#include <algorithm>
#include <array>
#include <concepts>
#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfc/error.hpp"
#include "qfc/rational.hpp"

namespace qfc {

enum class FieldTag { Q, Q_I, Q_SQRT2, Q_SQRT5, Q_SQRT13 };

/// Shape of the integral generator w: none (K = Q), sqrt(m), or (1 + sqrt(m))/2.
enum class OmegaKind { None, Sqrt, HalfSqrt };

struct FieldDescriptor {
    FieldTag tag;
    std::string_view name;
    int m;                      // square-free generator; 1 for Q
    OmegaKind omega_kind;
    int real_embeddings;        // r
    bool has_fundamental_unit;  // false for Q and Q(i)
    int unit_c0;                // fundamental unit in {1, w} coordinates
    int unit_c1;
    int unit_norm_sign;         // N(unit); +1 when there is no fundamental unit

    constexpr int degree() const noexcept { return omega_kind == OmegaKind::None ? 1 : 2; }
};

struct Rationals {
    static constexpr FieldDescriptor descriptor{FieldTag::Q, "Q", 1, OmegaKind::None, 1, false, 0, 0, 1};
};
struct GaussianRationals {
    static constexpr FieldDescriptor descriptor{FieldTag::Q_I, "Q_I", -1, OmegaKind::Sqrt, 0, false, 0, 0, 1};
};
struct QSqrt2 {
    // 1 + sqrt(2)
    static constexpr FieldDescriptor descriptor{FieldTag::Q_SQRT2, "Q_SQRT2", 2, OmegaKind::Sqrt, 2, true, 1, 1, -1};
};
struct QSqrt5 {
    // (1 + sqrt(5))/2
    static constexpr FieldDescriptor descriptor{FieldTag::Q_SQRT5, "Q_SQRT5", 5, OmegaKind::HalfSqrt, 2, true, 0, 1, -1};
};
struct QSqrt13 {
    // (3 + sqrt(13))/2 = 1 + w
    static constexpr FieldDescriptor descriptor{FieldTag::Q_SQRT13, "Q_SQRT13", 13, OmegaKind::HalfSqrt, 2, true, 1, 1, -1};
};

template <class K>
concept BaseField = requires {
    { K::descriptor } -> std::convertible_to<FieldDescriptor>;
};

inline constexpr std::array<FieldDescriptor, 5> field_registry{
    Rationals::descriptor, GaussianRationals::descriptor, QSqrt2::descriptor,
    QSqrt5::descriptor, QSqrt13::descriptor,
};

inline const FieldDescriptor& descriptor_of(FieldTag tag)
{
    for (const auto& d : field_registry)
        if (d.tag == tag)
            return d;
    raise(ErrorKind::WrongBase, "unregistered field tag");
}

/// Accepts the canonical names ("Q_SQRT2") and the lowercase CLI spellings
/// ("q_sqrt2", "qsqrt2", "q", "qi").
inline std::optional<FieldTag> parse_field_tag(std::string_view text)
{
    std::string key;
    for (char c : text)
        if (c != '_' && c != '(' && c != ')' && c != '-')
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (key == "q")
        return FieldTag::Q;
    if (key == "qi")
        return FieldTag::Q_I;
    if (key == "qsqrt2")
        return FieldTag::Q_SQRT2;
    if (key == "qsqrt5")
        return FieldTag::Q_SQRT5;
    if (key == "qsqrt13")
        return FieldTag::Q_SQRT13;
    return std::nullopt;
}

/// Calls f with a default-constructed tag type for the given field.
template <class F>
decltype(auto) with_field(FieldTag tag, F&& f)
{
    switch (tag) {
    case FieldTag::Q: return f(Rationals{});
    case FieldTag::Q_I: return f(GaussianRationals{});
    case FieldTag::Q_SQRT2: return f(QSqrt2{});
    case FieldTag::Q_SQRT5: return f(QSqrt5{});
    case FieldTag::Q_SQRT13: return f(QSqrt13{});
    }
    raise(ErrorKind::WrongBase, "unregistered field tag");
}

/// An element c0 + c1*w of K with exact rational coordinates.
template <BaseField K>
class KElement {
public:
    static constexpr FieldDescriptor field = K::descriptor;

    KElement() = default;

    template <std::integral I>
    KElement(I value) : c0_(value)
    {
    }

    KElement(const Integer& value) : c0_(value) {}
    KElement(const Rational& value) : c0_(value) {}

    KElement(Rational c0, Rational c1) : c0_(std::move(c0)), c1_(std::move(c1))
    {
        if (field.degree() == 1 && c1_ != 0)
            raise(ErrorKind::ParseError, "Q has no w coordinate");
    }

    static KElement omega()
    {
        if constexpr (field.degree() == 1)
            raise(ErrorKind::WrongBase, "Q has no generator w");
        else
            return KElement(0, 1);
    }

    /// Builds A + B*sqrt(m) in {1, w} coordinates.
    static KElement from_sqrt_m(const Rational& a, const Rational& b)
    {
        if constexpr (field.omega_kind == OmegaKind::None) {
            if (b != 0)
                raise(ErrorKind::WrongBase, "Q has no sqrt(m)");
            return KElement(a);
        } else if constexpr (field.omega_kind == OmegaKind::Sqrt) {
            return KElement(a, b);
        } else {
            return KElement(a - b, 2 * b);
        }
    }

    const Rational& c0() const noexcept { return c0_; }
    const Rational& c1() const noexcept { return c1_; }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    bool is_integral() const { return qfc::is_integer(c0_) && qfc::is_integer(c1_); }

    /// Coordinates (A, B) with value A + B*sqrt(m).
    std::pair<Rational, Rational> sqrt_m_coords() const
    {
        if constexpr (field.omega_kind == OmegaKind::HalfSqrt)
            return {c0_ + c1_ / 2, c1_ / 2};
        else
            return {c0_, c1_};
    }

    /// The nontrivial automorphism of K/Q; identity on Q.
    KElement conj() const
    {
        switch (field.omega_kind) {
        case OmegaKind::None: return *this;
        case OmegaKind::Sqrt: return KElement(c0_, -c1_);
        case OmegaKind::HalfSqrt: return KElement(c0_ + c1_, -c1_);
        }
        return *this;
    }

    /// Absolute norm N_{K/Q}.
    Rational norm() const
    {
        switch (field.omega_kind) {
        case OmegaKind::None: return c0_;
        case OmegaKind::Sqrt: return c0_ * c0_ - field.m * c1_ * c1_;
        case OmegaKind::HalfSqrt: return c0_ * c0_ + c0_ * c1_ - ((field.m - 1) / 4) * c1_ * c1_;
        }
        return c0_;
    }

    Rational trace() const
    {
        switch (field.omega_kind) {
        case OmegaKind::None: return c0_;
        case OmegaKind::Sqrt: return 2 * c0_;
        case OmegaKind::HalfSqrt: return 2 * c0_ + c1_;
        }
        return c0_;
    }

    KElement inverse() const
    {
        if (is_zero())
            raise(ErrorKind::DivisionByZero, "inverse of zero in " + std::string(field.name));
        if constexpr (field.degree() == 1)
            return KElement(1 / c0_);
        else {
            Rational n = norm();
            KElement c = conj();
            return KElement(c.c0_ / n, c.c1_ / n);
        }
    }

    KElement operator-() const { return KElement(-c0_, -c1_, raw_tag{}); }

    KElement& operator+=(const KElement& o)
    {
        c0_ += o.c0_;
        c1_ += o.c1_;
        return *this;
    }
    KElement& operator-=(const KElement& o)
    {
        c0_ -= o.c0_;
        c1_ -= o.c1_;
        return *this;
    }
    KElement& operator*=(const KElement& o) { return *this = *this * o; }
    KElement& operator/=(const KElement& o) { return *this = *this / o; }

    friend KElement operator+(KElement a, const KElement& b) { return a += b; }
    friend KElement operator-(KElement a, const KElement& b) { return a -= b; }

    friend KElement operator*(const KElement& a, const KElement& b)
    {
        switch (field.omega_kind) {
        case OmegaKind::None:
            return KElement(a.c0_ * b.c0_, Rational(0), raw_tag{});
        case OmegaKind::Sqrt:
            return KElement(a.c0_ * b.c0_ + field.m * a.c1_ * b.c1_, a.c0_ * b.c1_ + a.c1_ * b.c0_, raw_tag{});
        case OmegaKind::HalfSqrt: {
            // w^2 = w + (m - 1)/4
            Rational t = a.c1_ * b.c1_;
            return KElement(a.c0_ * b.c0_ + ((field.m - 1) / 4) * t, a.c0_ * b.c1_ + a.c1_ * b.c0_ + t, raw_tag{});
        }
        }
        return {};
    }

    friend KElement operator/(const KElement& a, const KElement& b) { return a * b.inverse(); }

    friend bool operator==(const KElement&, const KElement&) = default;

    /// Text syntax "c0+c1w", e.g. "3", "-w", "1/2+1/2w".
    std::string to_string() const
    {
        if (c1_ == 0)
            return to_short_string(c0_);
        std::string out;
        if (c0_ != 0)
            out = to_short_string(c0_);
        Rational mag = c1_ < 0 ? Rational(-c1_) : c1_;
        if (c1_ < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (mag != 1)
            out += to_short_string(mag);
        out += "w";
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const KElement& x) { return os << x.to_string(); }

private:
    struct raw_tag {};
    KElement(Rational c0, Rational c1, raw_tag) : c0_(std::move(c0)), c1_(std::move(c1)) {}

    Rational c0_{0};
    Rational c1_{0};
};

/// Lexicographic order on (c0, c1); used wherever output must be deterministic.
template <BaseField K>
bool lex_less(const KElement<K>& a, const KElement<K>& b)
{
    if (a.c0() != b.c0())
        return a.c0() < b.c0();
    return a.c1() < b.c1();
}

template <BaseField K>
KElement<K> pow(KElement<K> base, long long exponent)
{
    if (exponent < 0) {
        base = base.inverse();
        exponent = -exponent;
    }
    KElement<K> result(1);
    while (exponent > 0) {
        if (exponent & 1)
            result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

/// Parses the "c0+c1w" syntax.
template <BaseField K>
KElement<K> parse_kelement(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        raise(ErrorKind::ParseError, "empty field element");

    std::vector<std::string> terms;
    std::size_t start = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));

    std::optional<Rational> c0, c1;
    for (const auto& term : terms) {
        if (!term.empty() && term.back() == 'w') {
            std::string coeff = term.substr(0, term.size() - 1);
            if (!coeff.empty() && coeff.back() == '*')
                coeff.pop_back();
            Rational v;
            if (coeff.empty() || coeff == "+")
                v = 1;
            else if (coeff == "-")
                v = -1;
            else
                v = parse_rational(coeff);
            if (c1)
                raise(ErrorKind::ParseError, "repeated w term in '" + s + "'");
            c1 = v;
        } else {
            if (c0)
                raise(ErrorKind::ParseError, "repeated constant term in '" + s + "'");
            c0 = parse_rational(term);
        }
    }
    if (c1 && K::descriptor.degree() == 1)
        raise(ErrorKind::ParseError, "Q elements have no w term: '" + s + "'");
    return KElement<K>(c0.value_or(0), c1.value_or(0));
}

// ---------------------------------------------------------------------------
// Signs under the real embeddings.

class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::vector<int> signs) : signs_(std::move(signs)) {}
    SignVector(std::initializer_list<int> signs) : signs_(signs) {}

    static SignVector all_positive(int r) { return SignVector(std::vector<int>(static_cast<std::size_t>(r), 1)); }

    std::size_t size() const noexcept { return signs_.size(); }
    int operator[](std::size_t i) const { return signs_.at(i); }
    const std::vector<int>& values() const noexcept { return signs_; }

    bool is_all_positive() const
    {
        return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s > 0; });
    }

    friend SignVector operator*(const SignVector& a, const SignVector& b)
    {
        if (a.size() != b.size())
            raise(ErrorKind::ExtensionMismatch, "sign vectors of different length");
        std::vector<int> out(a.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.signs_[i] * b.signs_[i];
        return SignVector(std::move(out));
    }

    SignVector operator-() const
    {
        SignVector out = *this;
        for (auto& s : out.signs_)
            s = -s;
        return out;
    }

    friend bool operator==(const SignVector&, const SignVector&) = default;

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < signs_.size(); ++i) {
            if (i)
                out += ",";
            out += signs_[i] > 0 ? "+1" : "-1";
        }
        return out + ")";
    }

private:
    std::vector<int> signs_;
};

namespace detail {

/// Sign of a + b*sqrt(m) for m > 0 not a square, decided exactly.
inline int sign_with_sqrt(const Rational& a, const Rational& b, int m)
{
    int sa = sign(a), sb = sign(b);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    // opposite signs: compare a^2 with m*b^2
    Rational lhs = a * a, rhs = m * b * b;
    return lhs > rhs ? sa : sb;
}

} // namespace detail

/// Sign of sigma_i(x), i in [0, r). sigma_0 sends sqrt(m) to the positive root.
template <BaseField K>
int sign_at(const KElement<K>& x, int i)
{
    constexpr auto& f = K::descriptor;
    if (i < 0 || i >= f.real_embeddings)
        raise(ErrorKind::WrongBase, "embedding index out of range");
    if constexpr (f.degree() == 1) {
        return sign(x.c0());
    } else {
        auto [a, b] = x.sqrt_m_coords();
        return detail::sign_with_sqrt(a, i == 0 ? b : Rational(-b), f.m);
    }
}

template <BaseField K>
SignVector embed_signs(const KElement<K>& x)
{
    if (x.is_zero())
        raise(ErrorKind::ZeroArgument, "sign vector of zero");
    std::vector<int> out;
    for (int i = 0; i < K::descriptor.real_embeddings; ++i)
        out.push_back(sign_at(x, i));
    return SignVector(std::move(out));
}

template <BaseField K>
bool is_totally_positive(const KElement<K>& x)
{
    if (x.is_zero())
        return false;
    return embed_signs(x).is_all_positive();
}

template <BaseField K>
bool is_totally_negative(const KElement<K>& x)
{
    return is_totally_positive(KElement<K>(-x));
}

// ---------------------------------------------------------------------------
// Units.

template <BaseField K>
bool is_unit(const KElement<K>& x)
{
    if (x.is_zero() || !x.is_integral())
        return false;
    Rational n = x.norm();
    return n == 1 || n == -1;
}

template <BaseField K>
KElement<K> fundamental_unit()
{
    constexpr auto& f = K::descriptor;
    if constexpr (!f.has_fundamental_unit)
        raise(ErrorKind::WrongBase, std::string(f.name) + " has no fundamental unit");
    else
        return KElement<K>(f.unit_c0, f.unit_c1);
}

/// A unit whose sign vector is `signs`; exists because h+(K) = 1.
template <BaseField K>
KElement<K> unit_with_signs(const SignVector& signs)
{
    constexpr auto& f = K::descriptor;
    if (static_cast<int>(signs.size()) != f.real_embeddings)
        raise(ErrorKind::ExtensionMismatch, "sign vector length does not match the field");
    if constexpr (f.real_embeddings == 0) {
        return KElement<K>(1);
    } else if constexpr (f.degree() == 1) {
        return KElement<K>(signs[0]);
    } else {
        KElement<K> eps = fundamental_unit<K>();
        for (const auto& u : {KElement<K>(1), KElement<K>(-1), eps, KElement<K>(-eps)})
            if (embed_signs(u) == signs)
                return u;
        raise(ErrorKind::NotAUnit, "no unit with signs " + signs.to_string());
    }
}

/// Units of the shape +-1, +-i (Q(i)) or +-eps^k with |k| <= max_exponent.
template <BaseField K>
std::vector<KElement<K>> small_units(int max_exponent)
{
    constexpr auto& f = K::descriptor;
    std::vector<KElement<K>> out{KElement<K>(1), KElement<K>(-1)};
    if constexpr (f.tag == FieldTag::Q_I) {
        out.push_back(KElement<K>(0, 1));
        out.push_back(KElement<K>(0, -1));
    } else if constexpr (f.has_fundamental_unit) {
        KElement<K> eps = fundamental_unit<K>();
        for (int k = 1; k <= max_exponent; ++k)
            for (int e : {k, -k}) {
                KElement<K> u = pow(eps, e);
                out.push_back(u);
                out.push_back(-u);
            }
    }
    return out;
}

template <BaseField K>
struct Associate {
    KElement<K> value;  // unit * x
    KElement<K> unit;
};

/// Canonical associate of x. Q: positive. Q(i): c0 > 0 and c1 >= 0. Real
/// quadratic: the unit multiple minimizing Tr(x^2), ties broken toward
/// |sigma_1| > |sigma_2|, then sigma_1 > 0.
template <BaseField K>
Associate<K> normalize_associate(const KElement<K>& x)
{
    constexpr auto& f = K::descriptor;
    if (x.is_zero())
        return {x, KElement<K>(1)};
    if constexpr (f.degree() == 1) {
        KElement<K> u(x.c0() < 0 ? -1 : 1);
        return {x * u, u};
    } else if constexpr (f.tag == FieldTag::Q_I) {
        KElement<K> u(1), i(0, 1), g = x;
        while (!(g.c0() > 0 && g.c1() >= 0)) {
            g *= i;
            u *= i;
        }
        return {g, u};
    } else {
        const KElement<K> eps = fundamental_unit<K>();
        const KElement<K> eps_inv = eps.inverse();
        auto size = [](const KElement<K>& v) { return (v * v).trace(); };
        KElement<K> g = x, u(1);
        for (;;) {
            Rational s = size(g);
            if (size(g * eps) < s) {
                g *= eps;
                u *= eps;
            } else if (size(g * eps_inv) < s) {
                g *= eps_inv;
                u *= eps_inv;
            } else {
                break;
            }
        }
        auto sigma1_dominates = [](const KElement<K>& v) {
            auto [a, b] = v.sqrt_m_coords();
            return a * b > 0;
        };
        for (const auto& step : {eps, eps_inv}) {
            KElement<K> h = g * step;
            if (size(h) == size(g) && !sigma1_dominates(g) && sigma1_dominates(h)) {
                g = h;
                u *= step;
                break;
            }
        }
        if (sign_at(g, 0) < 0) {
            g = -g;
            u = -u;
        }
        return {g, u};
    }
}

// ---------------------------------------------------------------------------
// Euclidean structure.

template <BaseField K>
void require_integral(const KElement<K>& x, std::string_view what)
{
    if (!x.is_integral())
        raise(ErrorKind::NotIntegral, std::string(what) + " " + x.to_string() + " is not in O_K");
}

/// x / y with coordinates rounded to the nearest integers. The remainder
/// x - q*y has |N| < |N(y)| in every registry field, and is canonical modulo y*O_K.
template <BaseField K>
KElement<K> round_quotient(const KElement<K>& x, const KElement<K>& y)
{
    KElement<K> q = x / y;
    return KElement<K>(Rational(round_nearest(q.c0())), Rational(round_nearest(q.c1())));
}

template <BaseField K>
KElement<K> euclid_rem(const KElement<K>& x, const KElement<K>& y)
{
    KElement<K> r = x - round_quotient(x, y) * y;
    if (abs(r.norm()) >= abs(y.norm()))
        throw std::logic_error("norm-Euclidean division failed to reduce the norm");
    return r;
}

template <BaseField K>
bool divides(const KElement<K>& d, const KElement<K>& x)
{
    if (d.is_zero())
        return x.is_zero();
    return (x / d).is_integral();
}

/// Normalized greatest common divisor in O_K.
template <BaseField K>
KElement<K> gcd_k(KElement<K> x, KElement<K> y)
{
    require_integral(x, "gcd argument");
    require_integral(y, "gcd argument");
    if (x.is_zero() && y.is_zero())
        raise(ErrorKind::ZeroArgument, "gcd(0, 0)");
    while (!y.is_zero()) {
        KElement<K> r = euclid_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return normalize_associate(x).value;
}

/// Bezout data: g = s*x + t*y with g the normalized gcd.
template <BaseField K>
struct Bezout {
    KElement<K> g, s, t;
};

template <BaseField K>
Bezout<K> extended_gcd(const KElement<K>& x, const KElement<K>& y)
{
    require_integral(x, "gcd argument");
    require_integral(y, "gcd argument");
    if (x.is_zero() && y.is_zero())
        raise(ErrorKind::ZeroArgument, "gcd(0, 0)");
    KElement<K> r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        KElement<K> q = round_quotient(r0, r1);
        KElement<K> r2 = r0 - q * r1;
        r0 = std::exchange(r1, r2);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    auto [g, u] = normalize_associate(r0);
    return {g, s0 * u, t0 * u};
}

// ---------------------------------------------------------------------------
// Squares, residues and factorization.

/// A square root of d in K, if one exists.
template <BaseField K>
std::optional<KElement<K>> sqrt_in_k(const KElement<K>& d)
{
    constexpr auto& f = K::descriptor;
    if (d.is_zero())
        return KElement<K>(0);
    auto [a, b] = d.sqrt_m_coords();
    if constexpr (f.degree() == 1) {
        if (auto s = exact_sqrt(a))
            return KElement<K>(*s);
        return std::nullopt;
    } else {
        if (b == 0) {
            if (auto s = exact_sqrt(a))
                return KElement<K>::from_sqrt_m(*s, 0);
            if (auto t = exact_sqrt(Rational(a / f.m)))
                return KElement<K>::from_sqrt_m(0, *t);
            return std::nullopt;
        }
        // (x0 + x1 sqrt m)^2 = d  =>  x0^2 = (a +- sqrt(a^2 - m b^2)) / 2
        auto n = exact_sqrt(Rational(a * a - f.m * b * b));
        if (!n)
            return std::nullopt;
        for (const Rational& branch : {Rational(a + *n), Rational(a - *n)}) {
            auto x0 = exact_sqrt(Rational(branch / 2));
            if (!x0 || *x0 == 0)
                continue;
            Rational x1 = b / (2 * *x0);
            KElement<K> root = KElement<K>::from_sqrt_m(*x0, x1);
            if (root * root == d)
                return root;
        }
        return std::nullopt;
    }
}

template <BaseField K>
bool is_square(const KElement<K>& d)
{
    return sqrt_in_k(d).has_value();
}

/// True iff t^2 = d (mod 4 O_K) for some t. Representatives of O_K/2 suffice
/// because (t + 2s)^2 = t^2 (mod 4).
template <BaseField K>
bool is_qr_mod4(const KElement<K>& d)
{
    require_integral(d, "residue argument");
    const int span = K::descriptor.degree() == 1 ? 1 : 2;
    for (int t0 = 0; t0 < 2; ++t0)
        for (int t1 = 0; t1 < span; ++t1) {
            KElement<K> t(t0, t1);
            if (((t * t - d) / KElement<K>(4)).is_integral())
                return true;
        }
    return false;
}

namespace detail {

inline std::vector<Integer> rational_prime_factors(Integer n)
{
    std::vector<Integer> out;
    if (n < 0)
        n = -n;
    if (n <= 1)
        return out;
    if (n <= Integer(std::numeric_limits<std::uint64_t>::max())) {
        auto v = static_cast<std::uint64_t>(n);
        for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
            if (v % p == 0) {
                out.emplace_back(p);
                while (v % p == 0)
                    v /= p;
            }
        }
        if (v > 1)
            out.emplace_back(v);
        return out;
    }
    for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

inline Integer mod(const Integer& a, const Integer& p)
{
    Integer r = a % p;
    return r < 0 ? Integer(r + p) : r;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks).
inline std::optional<Integer> sqrt_mod_prime(const Integer& a_in, const Integer& p)
{
    using boost::multiprecision::powm;
    Integer a = mod(a_in, p);
    if (a == 0)
        return Integer(0);
    if (powm(a, (p - 1) / 2, p) != 1)
        return std::nullopt;
    Integer q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    Integer z = 2;
    while (powm(z, (p - 1) / 2, p) != p - 1)
        ++z;
    Integer c = powm(z, q, p), x = powm(a, (q + 1) / 2, p), t = powm(a, q, p);
    unsigned mm = s;
    while (t != 1) {
        unsigned i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (unsigned j = 0; j + i + 1 < mm; ++j)
            b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        mm = i;
    }
    return x;
}

} // namespace detail

/// Normalized prime elements of O_K above the rational prime ell.
template <BaseField K>
std::vector<KElement<K>> primes_above(const Integer& ell)
{
    constexpr auto& f = K::descriptor;
    if constexpr (f.degree() == 1) {
        return {KElement<K>(ell)};
    } else {
        // roots of the minimal polynomial of w modulo ell
        std::vector<Integer> roots;
        auto minpoly = [&](const Integer& t) {
            if (f.omega_kind == OmegaKind::Sqrt)
                return Integer(t * t - f.m);
            return Integer(t * t - t - (f.m - 1) / 4);
        };
        if (ell == 2) {
            for (int t = 0; t < 2; ++t)
                if (detail::mod(minpoly(t), 2) == 0)
                    roots.emplace_back(t);
        } else if (auto s = detail::sqrt_mod_prime(Integer(f.m), ell)) {
            for (const Integer& sq : {*s, Integer(ell - *s)}) {
                Integer t = f.omega_kind == OmegaKind::Sqrt ? sq : detail::mod((1 + sq) * ((ell + 1) / 2), ell);
                if (std::find(roots.begin(), roots.end(), t) == roots.end())
                    roots.push_back(t);
            }
        }
        if (roots.empty())
            return {KElement<K>(ell)};
        std::vector<KElement<K>> out;
        for (const auto& t : roots) {
            KElement<K> pi = gcd_k(KElement<K>(ell), KElement<K>(Rational(-t), Rational(1)));
            if (std::find(out.begin(), out.end(), pi) == out.end())
                out.push_back(pi);
        }
        return out;
    }
}

template <BaseField K>
struct Factorization {
    KElement<K> unit;
    std::vector<std::pair<KElement<K>, int>> primes;
};

/// x = unit * prod p^e over normalized primes p.
template <BaseField K>
Factorization<K> factor(const KElement<K>& x)
{
    require_integral(x, "factorization argument");
    if (x.is_zero())
        raise(ErrorKind::ZeroArgument, "factorization of zero");
    Factorization<K> out;
    KElement<K> rest = x;
    for (const Integer& ell : detail::rational_prime_factors(numerator(x.norm()))) {
        for (const auto& p : primes_above<K>(ell)) {
            int e = 0;
            while (divides(p, rest)) {
                rest /= p;
                ++e;
            }
            if (e > 0)
                out.primes.emplace_back(p, e);
        }
    }
    if (!is_unit(rest))
        throw std::logic_error("factorization left a non-unit cofactor");
    out.unit = rest;
    return out;
}

/// d is a quadratic residue mod 4 and every non-unit p with p^2 | d divides 2
/// with d/p^2 not a quadratic residue mod 4.
template <BaseField K>
bool is_fundamental(const KElement<K>& d)
{
    require_integral(d, "discriminant");
    if (d.is_zero())
        raise(ErrorKind::ZeroArgument, "zero is not a discriminant");
    if (is_square(d))
        raise(ErrorKind::SquareInput, d.to_string() + " is a square in " + std::string(K::descriptor.name));
    if (!is_qr_mod4(d))
        return false;

    auto fac = factor(d);
    // every non-unit p with p^2 | d, up to units: exponents f_j <= e_j / 2
    std::vector<int> limit, f(fac.primes.size(), 0);
    for (const auto& [p, e] : fac.primes)
        limit.push_back(e / 2);
    const KElement<K> two(2);
    for (;;) {
        std::size_t j = 0;
        while (j < f.size() && f[j] == limit[j])
            f[j++] = 0;
        if (j == f.size())
            break;
        ++f[j];
        KElement<K> p(1);
        for (std::size_t i = 0; i < f.size(); ++i)
            p *= pow(fac.primes[i].first, f[i]);
        if (!divides(p, two) || is_qr_mod4(d / (p * p)))
            return false;
    }
    return true;
}

} // namespace qfc
