#pragma once

// Fractional O_L-ideals as O_K-modules [alpha, beta], oriented by the signs
// of det M = (conj(alpha) beta - alpha conj(beta)) / (Omega - conj(Omega)).

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qfc/extension.hpp"
#include "qfc/real_quadratic.hpp"

namespace qfc {

template <BaseField K>
struct IdealBasis {
    Extension<K> ext;
    LElement<K> alpha;
    LElement<K> beta;
};

template <BaseField K>
struct OrientedIdeal {
    IdealBasis<K> basis;
    SignVector eps;
};

template <BaseField K>
KElement<K> det_m(const IdealBasis<K>& b)
{
    b.ext.check(b.alpha);
    b.ext.check(b.beta);
    // conj(a) b - a conj(b) = 2 (a.x b.y - a.y b.x) sqrt(D), and Omega - conj(Omega) = sqrt(D)
    KElement<K> det = KElement<K>(2) * (b.alpha.x() * b.beta.y() - b.alpha.y() * b.beta.x());
    if (det.is_zero())
        raise(ErrorKind::DegenerateBasis, "alpha and beta are K-linearly dependent");
    return det;
}

template <BaseField K>
SignVector orientation(const IdealBasis<K>& b)
{
    return embed_signs(det_m(b));
}

/// Generator of the O_K-ideal N_{L/K}(I).
template <BaseField K>
KElement<K> rel_norm_ideal(const IdealBasis<K>& b)
{
    return det_m(b);
}

/// K-coordinates (s, t) with e = s*alpha + t*beta.
template <BaseField K>
std::pair<KElement<K>, KElement<K>> basis_coordinates(const IdealBasis<K>& b, const LElement<K>& e)
{
    b.ext.check(e);
    KElement<K> det = b.alpha.x() * b.beta.y() - b.alpha.y() * b.beta.x();
    if (det.is_zero())
        raise(ErrorKind::DegenerateBasis, "alpha and beta are K-linearly dependent");
    return {(e.x() * b.beta.y() - e.y() * b.beta.x()) / det, (b.alpha.x() * e.y() - b.alpha.y() * e.x()) / det};
}

template <BaseField K>
bool contains(const IdealBasis<K>& b, const LElement<K>& e)
{
    auto [s, t] = basis_coordinates(b, e);
    return s.is_integral() && t.is_integral();
}

/// Equality of the O_K-modules spanned by the two bases.
template <BaseField K>
bool same_module(const IdealBasis<K>& a, const IdealBasis<K>& b)
{
    if (!(a.ext == b.ext))
        raise(ErrorKind::ExtensionMismatch, "ideals over different extensions");
    return contains(a, b.alpha) && contains(a, b.beta) && contains(b, a.alpha) && contains(b, a.beta);
}

/// The module is stable under multiplication by Omega.
template <BaseField K>
bool is_ol_module(const IdealBasis<K>& b)
{
    auto omega = b.ext.omega();
    return contains(b, b.alpha * omega) && contains(b, b.beta * omega);
}

template <BaseField K>
IdealBasis<K> scale(const LElement<K>& gamma, const IdealBasis<K>& b)
{
    return {b.ext, gamma * b.alpha, gamma * b.beta};
}

/// Two-element O_K-basis [A, B + C*Omega] / k of the module generated by gens,
/// with A and C normalized associates and B reduced modulo A.
template <BaseField K>
IdealBasis<K> reduce_generators(const std::vector<LElement<K>>& gens, const Extension<K>& ext)
{
    using S = KElement<K>;
    std::vector<std::pair<S, S>> rows;
    Integer k = 1;
    for (const auto& g : gens) {
        auto st = ext.omega_coords(g);
        for (const S* v : {&st.first, &st.second})
            for (const Rational* c : {&v->c0(), &v->c1()})
                k = lcm(k, denominator(*c));
        rows.push_back(std::move(st));
    }
    const S scale_k(k);
    for (auto& [s, t] : rows) {
        s *= scale_k;
        t *= scale_k;
    }

    // Column t: Euclid across rows until one row carries the gcd.
    for (;;) {
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].second.is_zero())
                continue;
            if (pivot == rows.size() || abs(rows[i].second.norm()) < abs(rows[pivot].second.norm()))
                pivot = i;
        }
        if (pivot == rows.size())
            raise(ErrorKind::RankDeficient, "generators lie in K");
        bool changed = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pivot || rows[i].second.is_zero())
                continue;
            S q = round_quotient(rows[i].second, rows[pivot].second);
            rows[i].first -= q * rows[pivot].first;
            rows[i].second -= q * rows[pivot].second;
            changed = true;
        }
        if (!changed) {
            std::swap(rows[pivot], rows.back());
            break;
        }
    }
    auto [b_coef, c_coef] = rows.back();
    rows.pop_back();

    S a_coef(0);
    for (const auto& [s, t] : rows)
        if (!s.is_zero())
            a_coef = a_coef.is_zero() ? normalize_associate(s).value : gcd_k(a_coef, s);
    if (a_coef.is_zero())
        raise(ErrorKind::RankDeficient, "generators span a rank-1 module");

    auto c_norm = normalize_associate(c_coef);
    c_coef = c_norm.value;
    b_coef *= c_norm.unit;
    b_coef -= round_quotient(b_coef, a_coef) * a_coef;

    const S inv_k = S(Rational(1, k));
    return {ext, ext.from_omega_coords(a_coef * inv_k, 0), ext.from_omega_coords(b_coef * inv_k, c_coef * inv_k)};
}

template <BaseField K>
IdealBasis<K> multiply_modules(const IdealBasis<K>& a, const IdealBasis<K>& b)
{
    if (!(a.ext == b.ext))
        raise(ErrorKind::ExtensionMismatch, "ideals over different extensions");
    return reduce_generators<K>({a.alpha * b.alpha, a.alpha * b.beta, a.beta * b.alpha, a.beta * b.beta}, a.ext);
}

/// The same module with alpha multiplied by a unit of K so that the
/// orientation of the basis equals eps.
template <BaseField K>
OrientedIdeal<K> with_orientation(IdealBasis<K> basis, const SignVector& eps)
{
    KElement<K> u = unit_with_signs<K>(eps * orientation(basis));
    basis.alpha *= u;
    return {std::move(basis), eps};
}

/// (I; orientation of the given basis).
template <BaseField K>
OrientedIdeal<K> oriented(IdealBasis<K> basis)
{
    SignVector eps = orientation(basis);
    return {std::move(basis), std::move(eps)};
}

/// ([1, Omega]; +1, ..., +1).
template <BaseField K>
OrientedIdeal<K> unit_ideal(const Extension<K>& ext)
{
    return oriented(IdealBasis<K>{ext, ext.one(), ext.omega()});
}

/// ((gamma); signs of N(gamma)) with basis [gamma, gamma*Omega].
template <BaseField K>
OrientedIdeal<K> principal_oriented(const Extension<K>& ext, const LElement<K>& gamma)
{
    return {IdealBasis<K>{ext, gamma, gamma * ext.omega()}, embed_signs(rel_norm(gamma))};
}

template <BaseField K>
OrientedIdeal<K> scale(const LElement<K>& gamma, const OrientedIdeal<K>& a)
{
    return {scale(gamma, a.basis), a.eps * embed_signs(rel_norm(gamma))};
}

template <BaseField K>
OrientedIdeal<K> ideal_mul(const OrientedIdeal<K>& a, const OrientedIdeal<K>& b)
{
    return with_orientation(multiply_modules(a.basis, b.basis), a.eps * b.eps);
}

/// ([conj(alpha), -conj(beta)]; eps): det M is unchanged.
template <BaseField K>
OrientedIdeal<K> conj_inverse(const OrientedIdeal<K>& a)
{
    return {IdealBasis<K>{a.basis.ext, a.basis.alpha.conj(), -a.basis.beta.conj()}, a.eps};
}

/// Oriented ideals are the same module with the same sign vector.
template <BaseField K>
bool same_oriented(const OrientedIdeal<K>& a, const OrientedIdeal<K>& b)
{
    return a.eps == b.eps && same_module(a.basis, b.basis);
}

// ---------------------------------------------------------------------------
// Equivalence of oriented ideals.

enum class Equivalence { Equivalent, NotEquivalent, Unknown };

template <BaseField K>
struct EquivalenceResult {
    Equivalence status = Equivalence::Unknown;
    std::optional<LElement<K>> gamma;  // gamma * I = J, signs of N(gamma) = eps_I * eps_J
};

namespace detail {

/// Enumerates the nonzero x in Z^n with x^T G x <= bound for a positive
/// definite rational Gram matrix G. The visitor returns true to stop. Returns
/// false when more than `budget` vectors would be visited.
class ShortVectors {
public:
    using Matrix = std::vector<std::vector<Rational>>;

    ShortVectors(const Matrix& gram, Rational bound, std::size_t budget)
        : n_(gram.size()), q_(gram), bound_(std::move(bound)), budget_(budget), x_(gram.size(), 0)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            if (q_[i][i] <= 0)
                throw std::logic_error("Gram matrix is not positive definite");
            for (std::size_t j = i + 1; j < n_; ++j) {
                q_[j][i] = q_[i][j];
                q_[i][j] = q_[i][j] / q_[i][i];
            }
            for (std::size_t k = i + 1; k < n_; ++k)
                for (std::size_t l = k; l < n_; ++l)
                    q_[k][l] -= q_[k][i] * q_[i][l];
        }
    }

    /// true: search finished (or stopped by the visitor) within budget.
    bool run(const std::function<bool(const std::vector<Integer>&)>& visit)
    {
        visit_ = &visit;
        stopped_ = false;
        count_ = 0;
        return descend(n_, bound_);
    }

    bool stopped() const noexcept { return stopped_; }
    std::size_t visited() const noexcept { return count_; }

private:
    // Coordinates i..n-1 are fixed; choose coordinate i-1.
    bool descend(std::size_t i, const Rational& remaining)
    {
        if (i == 0) {
            bool nonzero = false;
            for (const auto& v : x_)
                nonzero = nonzero || v != 0;
            if (!nonzero)
                return true;
            if (++count_ > budget_)
                return false;
            if ((*visit_)(x_))
                stopped_ = true;
            return true;
        }
        std::size_t k = i - 1;
        Rational center = 0;
        for (std::size_t j = k + 1; j < n_; ++j)
            center -= q_[k][j] * Rational(x_[j]);
        const Rational radius2 = remaining / q_[k][k];
        const Integer start = floor(center);
        for (int dir : {0, 1}) {
            for (Integer v = dir == 0 ? start : Integer(start + 1);; v += dir == 0 ? -1 : 1) {
                Rational off = Rational(v) - center;
                Rational used = off * off;
                if (used > radius2)
                    break;
                x_[k] = v;
                if (!descend(k, remaining - q_[k][k] * used))
                    return false;
                if (stopped_)
                    return true;
            }
        }
        x_[k] = 0;
        return true;
    }

    std::size_t n_;
    Matrix q_;
    Rational bound_;
    std::size_t budget_;
    std::vector<Integer> x_;
    const std::function<bool(const std::vector<Integer>&)>* visit_ = nullptr;
    bool stopped_ = false;
    std::size_t count_ = 0;
};

template <BaseField K>
std::vector<LElement<K>> z_basis(const IdealBasis<K>& b)
{
    if constexpr (K::descriptor.degree() == 1) {
        return {b.alpha, b.beta};
    } else {
        const KElement<K> w = KElement<K>::omega();
        return {b.alpha, b.alpha * w, b.beta, b.beta * w};
    }
}

template <BaseField K>
ShortVectors::Matrix gram_matrix(const std::vector<LElement<K>>& basis,
                                 const std::function<Rational(const LElement<K>&)>& q)
{
    const std::size_t n = basis.size();
    ShortVectors::Matrix g(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        g[i][i] = q(basis[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g[i][j] = g[j][i] = (q(basis[i] + basis[j]) - g[i][i] - g[j][j]) / 2;
    return g;
}

/// eta > 1 generating U_L / {+-1}, and an upper bound E >= eta.
inline std::pair<LElement<Rationals>, Rational> unit_and_bound(const Extension<Rationals>& ext)
{
    LElement<Rationals> eta = fundamental_unit(ext);
    const Integer root_ceiling = isqrt(numerator(ext.discriminant().c0())) + 1;
    return {eta, eta.x().c0() + eta.y().c0() * Rational(root_ceiling)};
}

} // namespace detail

/// Searches for gamma with gamma * I_a = I_b and sgn N(gamma) = eps_a * eps_b.
///
/// J = I_b * conj(I_a) = (gamma det M_a) is principal exactly when the
/// classes agree, so the search looks for a generator delta of J with
/// N(delta) = det M_J * unit. The search is exhaustive (definitive answer)
/// when K = Q, or when D is totally negative over a totally real K; otherwise
/// a negative answer is Unknown. search_bound caps the number of lattice
/// points examined.
template <BaseField K>
EquivalenceResult<K> oriented_equivalent(const OrientedIdeal<K>& a, const OrientedIdeal<K>& b,
                                         std::size_t search_bound)
{
    using S = KElement<K>;
    using L = LElement<K>;
    constexpr auto& field = K::descriptor;
    if (!(a.basis.ext == b.basis.ext))
        raise(ErrorKind::ExtensionMismatch, "ideals over different extensions");
    const Extension<K>& ext = a.basis.ext;
    const SignVector wanted = a.eps * b.eps;

    if (a.eps == b.eps && same_module(a.basis, b.basis))
        return {Equivalence::Equivalent, ext.one()};

    const bool definite = field.real_embeddings > 0 && ext.totally_negative();
    if (definite && !wanted.is_all_positive())
        return {Equivalence::NotEquivalent, std::nullopt};

    const IdealBasis<K> j = multiply_modules(b.basis, conj_inverse(a).basis);
    const S det_j = det_m(j);
    const S det_a = det_m(a.basis);

    // Over Q with D > 0 a unit of norm -1, when there is one, repairs the sign of N(delta).
    std::optional<L> sign_flip;
    std::optional<Rational> unit_bound;
    if constexpr (field.degree() == 1) {
        if (!definite) {
            auto [eta, e] = detail::unit_and_bound(ext);
            unit_bound = e;
            if (rel_norm(eta) == S(-1))
                sign_flip = eta;
        }
    }

    std::optional<L> found;
    auto accept = [&](L delta) {
        if (delta.is_zero())
            return false;
        S n = rel_norm(delta);
        if (!is_unit(S(n / det_j)))
            return false;
        if (field.real_embeddings > 0 && embed_signs(n) != wanted) {
            if (!sign_flip)
                return false;
            delta *= *sign_flip;
        }
        L gamma = delta / det_a;
        if (!same_module(scale(gamma, a.basis), b.basis))
            return false;
        found = gamma;
        return true;
    };

    const std::vector<L> zb = detail::z_basis(j);
    auto element_of = [&](const std::vector<Integer>& x) {
        L delta = ext.embed(0);
        for (std::size_t i = 0; i < zb.size(); ++i)
            if (x[i] != 0)
                delta += zb[i] * S(x[i]);
        return delta;
    };
    auto visitor = [&](const std::vector<Integer>& x) { return accept(element_of(x)); };

    // Exhaustive cases: a positive definite quadratic form q on J and a bound
    // that every class of generators must meet.
    std::function<Rational(const L&)> q;
    std::optional<Rational> complete_bound;
    if (definite) {
        q = [](const L& d) { return rel_norm(d).trace(); };
        S g = det_j * unit_with_signs<K>(embed_signs(det_j));
        complete_bound = g.trace();
    } else if constexpr (field.degree() == 1) {
        // D > 0: multiplying by eta scales |delta / conj(delta)| by eta^2, so
        // some generator has the ratio t in [1/eta, eta) and
        // delta^2 + conj(delta)^2 = |N(delta)| (t + 1/t) <= |det J| (eta + 1).
        q = [](const L& d) {
            return Rational(2) * (d.x().c0() * d.x().c0() + d.radicand().c0() * d.y().c0() * d.y().c0());
        };
        complete_bound = abs(det_j.c0()) * (*unit_bound + 1);
    } else {
        q = [](const L& d) {
            return d.x().c0() * d.x().c0() + d.x().c1() * d.x().c1() + d.y().c0() * d.y().c0() +
                   d.y().c1() * d.y().c1();
        };
    }

    const auto gram = detail::gram_matrix<K>(zb, q);
    if (complete_bound) {
        detail::ShortVectors sv(gram, *complete_bound, search_bound);
        bool finished = sv.run(visitor);
        if (found)
            return {Equivalence::Equivalent, found};
        return {finished ? Equivalence::NotEquivalent : Equivalence::Unknown, std::nullopt};
    }

    Rational threshold = gram[0][0];
    for (std::size_t i = 1; i < gram.size(); ++i)
        threshold = std::min(threshold, gram[i][i]);
    for (;;) {
        detail::ShortVectors sv(gram, threshold, search_bound);
        bool finished = sv.run(visitor);
        if (found)
            return {Equivalence::Equivalent, found};
        if (!finished)
            return {Equivalence::Unknown, std::nullopt};
        threshold *= 4;
    }
}

} // namespace qfc
