#pragma once

// Binary quadratic forms ax^2 + bxy + cy^2 over O_K and their equivalence
// Q~(x, y) = u Q(px + qy, rx + sy) with ps - qr and u totally positive units.

#include <algorithm>
#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "qfc/extension.hpp"

namespace qfc {

template <BaseField K>
struct QuadraticForm {
    using Scalar = KElement<K>;

    Scalar a{0}, b{0}, c{0};

    Scalar disc() const { return b * b - Scalar(4) * a * c; }

    Scalar evaluate(const Scalar& x, const Scalar& y) const { return a * x * x + b * x * y + c * y * y; }

    bool is_integral() const { return a.is_integral() && b.is_integral() && c.is_integral(); }

    QuadraticForm scaled(const Scalar& k) const { return {k * a, k * b, k * c}; }

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

    /// "a,b,c" in the element syntax.
    std::string to_string() const { return a.to_string() + "," + b.to_string() + "," + c.to_string(); }
};

template <BaseField K>
bool form_less(const QuadraticForm<K>& x, const QuadraticForm<K>& y)
{
    auto key = [](const QuadraticForm<K>& f) {
        return std::array<const Rational*, 6>{&f.a.c0(), &f.a.c1(), &f.b.c0(), &f.b.c1(), &f.c.c0(), &f.c.c1()};
    };
    auto kx = key(x), ky = key(y);
    for (std::size_t i = 0; i < kx.size(); ++i)
        if (*kx[i] != *ky[i])
            return *kx[i] < *ky[i];
    return false;
}

template <BaseField K>
KElement<K> disc(const QuadraticForm<K>& q)
{
    return q.disc();
}

template <BaseField K>
struct FormTransformation {
    using Scalar = KElement<K>;

    Scalar p{1}, q{0}, r{0}, s{1};
    Scalar u{1};

    Scalar det() const { return p * s - q * r; }

    static FormTransformation identity() { return {}; }
};

/// The coefficients are integral, ps - qr and u are totally positive units.
template <BaseField K>
bool is_valid(const FormTransformation<K>& t)
{
    for (const auto* x : {&t.p, &t.q, &t.r, &t.s})
        if (!x->is_integral())
            return false;
    const auto det = t.det();
    return is_unit(det) && is_totally_positive(det) && is_unit(t.u) && is_totally_positive(t.u);
}

template <BaseField K>
QuadraticForm<K> transform(const QuadraticForm<K>& f, const FormTransformation<K>& t)
{
    if (!is_valid(t))
        raise(ErrorKind::InvalidTransformation, "ps - qr and u must be totally positive units over O_K");
    using S = KElement<K>;
    const S two(2);
    return {t.u * (f.a * t.p * t.p + f.b * t.p * t.r + f.c * t.r * t.r),
            t.u * (two * f.a * t.p * t.q + f.b * (t.p * t.s + t.q * t.r) + two * f.c * t.r * t.s),
            t.u * (f.a * t.q * t.q + f.b * t.q * t.s + f.c * t.s * t.s)};
}

/// Recovers Q from Q~ = transform(Q, t).
template <BaseField K>
QuadraticForm<K> inverse_transform(const QuadraticForm<K>& g, const FormTransformation<K>& t)
{
    if (!is_valid(t))
        raise(ErrorKind::InvalidTransformation, "ps - qr and u must be totally positive units over O_K");
    using S = KElement<K>;
    const S two(2);
    const S det = t.det();
    const S k = (t.u * det * det).inverse();
    return {k * (g.a * t.s * t.s - g.b * t.r * t.s + g.c * t.r * t.r),
            k * (-two * g.a * t.q * t.s + g.b * (t.p * t.s + t.q * t.r) - two * g.c * t.p * t.r),
            k * (g.a * t.q * t.q - g.b * t.p * t.q + g.c * t.p * t.p)};
}

template <BaseField K>
KElement<K> content(const QuadraticForm<K>& f)
{
    for (const auto* x : {&f.a, &f.b, &f.c})
        require_integral(*x, "form coefficient");
    if (f.a.is_zero() && f.b.is_zero() && f.c.is_zero())
        raise(ErrorKind::ZeroArgument, "content of the zero form");
    KElement<K> g = f.a;
    for (const auto* x : {&f.b, &f.c})
        g = g.is_zero() ? *x : (x->is_zero() ? g : gcd_k(g, *x));
    return g;
}

template <BaseField K>
bool is_primitive(const QuadraticForm<K>& f)
{
    if (!f.is_integral() || (f.a.is_zero() && f.b.is_zero() && f.c.is_zero()))
        return false;
    return is_unit(content(f));
}

/// u * Q(p x + q y, r x + s y) == Q2 coefficientwise.
template <BaseField K>
bool verify_equivalence_witness(const QuadraticForm<K>& q1, const QuadraticForm<K>& q2,
                                const FormTransformation<K>& t)
{
    if (!is_valid(t))
        return false;
    return transform(q1, t) == q2;
}

/// (p0, q0, r0, s0) with p0 s0 - q0 r0 = N(mu) and N(mu) Q(x, y) = Q(p0 x + q0 y, r0 x + s0 y).
template <BaseField K>
struct Automorph {
    KElement<K> p, q, r, s;

    KElement<K> det() const { return p * s - q * r; }
};

template <BaseField K>
Automorph<K> automorph_from_unit(const QuadraticForm<K>& f, const Extension<K>& ext, const LElement<K>& mu)
{
    using S = KElement<K>;
    ext.check(mu);
    if (f.disc() != ext.discriminant())
        raise(ErrorKind::DiscriminantMismatch, "form discriminant " + f.disc().to_string() +
                                                   " differs from D = " + ext.discriminant().to_string());
    if (!ext.is_integral(mu) || !is_unit(rel_norm(mu)))
        raise(ErrorKind::NotAUnit, mu.to_string() + " is not a unit of O_L");
    // mu = u/2 + (v/2) sqrt(D)
    const S u = S(2) * mu.x(), v = S(2) * mu.y();
    const S half = S(Rational(1, 2));
    return {half * (u - f.b * v), -f.c * v, f.a * v, half * (u + f.b * v)};
}

/// The four equations relating an automorph to Q, with det = N(mu) checked by the caller.
template <BaseField K>
bool satisfies_automorph_system(const QuadraticForm<K>& f, const Automorph<K>& m)
{
    using S = KElement<K>;
    const S det = m.det();
    const S two(2);
    return det * f.a == f.a * m.p * m.p + f.b * m.p * m.r + f.c * m.r * m.r &&
           det * f.b == two * f.a * m.p * m.q + f.b * (m.p * m.s + m.q * m.r) + two * f.c * m.r * m.s &&
           det * f.c == f.a * m.q * m.q + f.b * m.q * m.s + f.c * m.s * m.s;
}

/// Checks (p theta~ + q)/(r theta~ + s) = theta for the first roots
/// theta = (-b + sqrt(D))/2a of Q and theta~ of Q~ = Q(px + qy, rx + sy),
/// taking sqrt(D~) = (ps - qr) sqrt(D).
template <BaseField K>
bool root_transport_check(const QuadraticForm<K>& f, const QuadraticForm<K>& g, const FormTransformation<K>& t)
{
    using S = KElement<K>;
    using L = LElement<K>;
    FormTransformation<K> plain = t;
    plain.u = S(1);
    if (!is_valid(plain) || transform(f, plain) != g)
        return false;
    const S d = f.disc();
    if (f.a.is_zero() || g.a.is_zero() || d.is_zero())
        return false;
    const S half(Rational(1, 2));
    const L theta(-f.b * half / f.a, half / f.a, d);
    const L theta_t(-g.b * half / g.a, t.det() * half / g.a, d);
    const L den = theta_t * t.r + L(t.s, 0, d);
    if (den.is_zero())
        return false;
    return (theta_t * t.p + L(t.q, 0, d)) / den == theta;
}

/// Q is totally positive definite; requires Disc(Q) totally negative.
template <BaseField K>
bool is_tpd(const QuadraticForm<K>& f)
{
    const auto d = f.disc();
    if (d.is_zero() || !is_totally_negative(d))
        raise(ErrorKind::DiscriminantNotTotallyNegative, "Disc = " + d.to_string() + " is not totally negative");
    return is_totally_positive(f.a);
}

// ---------------------------------------------------------------------------
// Classical reduction over Z for negative discriminants.

template <BaseField K>
QuadraticForm<K> reduce_form_Q(const QuadraticForm<K>& f)
{
    if constexpr (K::descriptor.degree() != 1) {
        raise(ErrorKind::WrongBase, "reduction is only available over Q");
    } else {
        if (!f.is_integral())
            raise(ErrorKind::NotIntegral, "form coefficients must be integers");
        Integer a = numerator(f.a.c0()), b = numerator(f.b.c0()), c = numerator(f.c.c0());
        if (b * b - 4 * a * c >= 0 || a <= 0)
            raise(ErrorKind::IndefiniteForm, "reduction needs a positive definite form");
        for (;;) {
            if (b > a || b <= -a) {
                // x -> x - k y with b - 2ka in (-a, a]
                Integer k = floor_div(b + a - 1, 2 * a);
                Integer nb = b - 2 * k * a;
                c = c - k * b + k * k * a;
                b = nb;
                continue;
            }
            if (a > c) {
                std::swap(a, c);
                b = -b;
                continue;
            }
            if (a == c && b < 0)
                b = -b;
            break;
        }
        using S = KElement<K>;
        return {S(a), S(b), S(c)};
    }
}

/// All reduced primitive positive definite forms of discriminant D < 0, sorted by (a, b, c).
template <BaseField K>
std::vector<QuadraticForm<K>> enumerate_classes_Q(const KElement<K>& d)
{
    if constexpr (K::descriptor.degree() != 1) {
        raise(ErrorKind::WrongBase, "class tables are only available over Q");
    } else {
        if (!d.is_integral())
            raise(ErrorKind::NotIntegral, "discriminant must be an integer");
        const Integer dd = numerator(d.c0());
        if (dd >= 0)
            raise(ErrorKind::IndefiniteForm, "class tables need D < 0");
        using S = KElement<K>;
        std::vector<QuadraticForm<K>> out;
        const Integer n = -dd;
        // reduced forms satisfy 3a^2 <= |D|
        for (Integer a = 1; 3 * a * a <= n; ++a) {
            for (Integer b = -a + 1; b <= a; ++b) {
                Integer num = b * b - dd;
                if (num % (4 * a) != 0)
                    continue;
                Integer c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                QuadraticForm<K> f{S(a), S(b), S(c)};
                if (is_primitive(f))
                    out.push_back(f);
            }
        }
        std::sort(out.begin(), out.end(), form_less<K>);
        return out;
    }
}

} // namespace qfc
