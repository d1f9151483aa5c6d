#pragma once

// The relative quadratic extension L = K(sqrt(D)) of a base field K, for a
// fundamental discriminant D. O_L = [1, Omega] over O_K with
// Omega = (-w + sqrt(D))/2 a root of x^2 + w x + z.

#include <string>
#include <utility>

#include "qfc/base_field.hpp"

namespace qfc {

/// x + y*sqrt(D) with x, y in K.
template <BaseField K>
class LElement {
public:
    using Scalar = KElement<K>;

    LElement() = default;
    LElement(Scalar x, Scalar y, Scalar d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {}

    const Scalar& x() const noexcept { return x_; }
    const Scalar& y() const noexcept { return y_; }
    const Scalar& radicand() const noexcept { return d_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    LElement conj() const { return LElement(x_, -y_, d_); }

    /// N_{L/K}(a) = a * conj(a) = x^2 - y^2 D.
    Scalar norm() const { return x_ * x_ - y_ * y_ * d_; }

    LElement inverse() const
    {
        if (is_zero())
            raise(ErrorKind::DivisionByZero, "inverse of zero in L");
        Scalar n = norm();
        return LElement(x_ / n, -y_ / n, d_);
    }

    LElement operator-() const { return LElement(-x_, -y_, d_); }

    LElement& operator+=(const LElement& o)
    {
        check(o);
        x_ += o.x_;
        y_ += o.y_;
        return *this;
    }
    LElement& operator-=(const LElement& o)
    {
        check(o);
        x_ -= o.x_;
        y_ -= o.y_;
        return *this;
    }
    LElement& operator*=(const LElement& o) { return *this = *this * o; }
    LElement& operator*=(const Scalar& s)
    {
        x_ *= s;
        y_ *= s;
        return *this;
    }

    friend LElement operator+(LElement a, const LElement& b) { return a += b; }
    friend LElement operator-(LElement a, const LElement& b) { return a -= b; }

    friend LElement operator*(const LElement& a, const LElement& b)
    {
        a.check(b);
        return LElement(a.x_ * b.x_ + a.y_ * b.y_ * a.d_, a.x_ * b.y_ + a.y_ * b.x_, a.d_);
    }
    friend LElement operator*(LElement a, const Scalar& s) { return a *= s; }
    friend LElement operator*(const Scalar& s, LElement a) { return a *= s; }

    friend LElement operator/(const LElement& a, const LElement& b) { return a * b.inverse(); }
    friend LElement operator/(const LElement& a, const Scalar& s)
    {
        if (s.is_zero())
            raise(ErrorKind::DivisionByZero, "division by zero in L");
        return a * s.inverse();
    }

    friend bool operator==(const LElement&, const LElement&) = default;

    std::string to_string() const { return "(" + x_.to_string() + ") + (" + y_.to_string() + ")*sqrt(D)"; }

private:
    void check(const LElement& o) const
    {
        if (d_ != o.d_)
            raise(ErrorKind::ExtensionMismatch, "elements of different extensions");
    }

    Scalar x_{0};
    Scalar y_{0};
    Scalar d_{0};
};

template <BaseField K>
class Extension {
public:
    using Scalar = KElement<K>;
    using Element = LElement<K>;

    /// Builds L = K(sqrt(D)). w is the first residue of O_K/2 with
    /// w^2 = D (mod 4), ordered by |N(w)| and then lexicographically.
    static Extension make(const Scalar& discriminant)
    {
        bool fundamental = false;
        try {
            fundamental = is_fundamental(discriminant);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SquareInput && e.kind() != ErrorKind::ZeroArgument)
                throw;
        }
        if (!fundamental)
            raise(ErrorKind::NotFundamental, discriminant.to_string() + " is not fundamental over " +
                                                 std::string(K::descriptor.name));
        std::vector<Scalar> residues;
        const int span = K::descriptor.degree() == 1 ? 1 : 2;
        for (int t0 = 0; t0 < 2; ++t0)
            for (int t1 = 0; t1 < span; ++t1)
                residues.emplace_back(t0, t1);
        std::stable_sort(residues.begin(), residues.end(), [](const Scalar& a, const Scalar& b) {
            Rational na = abs(a.norm()), nb = abs(b.norm());
            if (na != nb)
                return na < nb;
            return lex_less(a, b);
        });
        for (const auto& w : residues) {
            Scalar z = (w * w - discriminant) / Scalar(4);
            if (z.is_integral())
                return Extension(discriminant, w, z);
        }
        throw std::logic_error("fundamental discriminant without a residue w");
    }

    const Scalar& discriminant() const noexcept { return d_; }
    const Scalar& w() const noexcept { return w_; }
    const Scalar& z() const noexcept { return z_; }

    Element embed(const Scalar& x) const { return Element(x, 0, d_); }
    Element element(const Scalar& x, const Scalar& y) const { return Element(x, y, d_); }
    Element one() const { return embed(1); }
    Element sqrt_d() const { return Element(0, 1, d_); }
    Element omega() const { return Element(-w_ / Scalar(2), Scalar(Rational(1, 2)), d_); }

    /// s + t*Omega.
    Element from_omega_coords(const Scalar& s, const Scalar& t) const
    {
        return Element(s - t * w_ / Scalar(2), t / Scalar(2), d_);
    }

    /// (s, t) with a = s + t*Omega.
    std::pair<Scalar, Scalar> omega_coords(const Element& a) const
    {
        check(a);
        return {a.x() + w_ * a.y(), Scalar(2) * a.y()};
    }

    bool is_integral(const Element& a) const
    {
        auto [s, t] = omega_coords(a);
        return s.is_integral() && t.is_integral();
    }

    /// D is negative under every real embedding of K (vacuous when r = 0).
    bool totally_negative() const { return is_totally_negative(d_); }

    void check(const Element& a) const
    {
        if (a.radicand() != d_)
            raise(ErrorKind::ExtensionMismatch, "element does not belong to this extension");
    }

    friend bool operator==(const Extension&, const Extension&) = default;

private:
    Extension(Scalar d, Scalar w, Scalar z) : d_(std::move(d)), w_(std::move(w)), z_(std::move(z)) {}

    Scalar d_, w_, z_;
};

template <BaseField K>
Extension<K> make_extension(const KElement<K>& discriminant)
{
    return Extension<K>::make(discriminant);
}

template <BaseField K>
KElement<K> rel_norm(const LElement<K>& a)
{
    return a.norm();
}

/// Im(c1 + c2 sqrt(D)) = c2.
template <BaseField K>
KElement<K> im_part(const LElement<K>& a)
{
    return a.y();
}

template <BaseField K>
bool is_integral(const LElement<K>& a, const Extension<K>& ext)
{
    return ext.is_integral(a);
}

} // namespace qfc
