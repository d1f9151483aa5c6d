#pragma once

// The maps between oriented ideal classes and form classes:
//   Phi([alpha, beta]; eps) = N(alpha x - beta y) / det M
//   Psi(ax^2 + bxy + cy^2)  = ([a, (-b + sqrt(Disc))/2]; sgn a)
// and what they induce: composition, identity, inverses, class counts over Q.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfc/forms.hpp"
#include "qfc/ideals.hpp"
#include "qfc/real_quadratic.hpp"

namespace qfc {

template <BaseField K>
QuadraticForm<K> phi(const OrientedIdeal<K>& ideal)
{
    const auto& [ext, alpha, beta] = ideal.basis;
    const KElement<K> det = det_m(ideal.basis);
    if (embed_signs(det) != ideal.eps)
        raise(ErrorKind::OrientationMismatch,
              "basis orientation " + embed_signs(det).to_string() + " differs from " + ideal.eps.to_string());
    const LElement<K> ca = alpha.conj(), cb = beta.conj();
    return {(alpha * ca).x() / det, -(ca * beta + alpha * cb).x() / det, (beta * cb).x() / det};
}

/// The totally positive unit u with Disc(Q) = u^2 D. Over Q(i) every unit
/// qualifies and the root with c0 > 0, or c0 = 0 and c1 > 0, is taken.
template <BaseField K>
KElement<K> discriminant_unit(const Extension<K>& ext, const QuadraticForm<K>& f)
{
    using S = KElement<K>;
    const S d = f.disc();
    if (d == ext.discriminant())
        return S(1);
    auto root = sqrt_in_k(S(d / ext.discriminant()));
    if (!root || !is_unit(*root))
        raise(ErrorKind::DiscriminantNotInClass,
              "Disc = " + d.to_string() + " is not u^2 D for a unit u, D = " + ext.discriminant().to_string());
    S u = *root;
    if constexpr (K::descriptor.real_embeddings == 0) {
        if (u.c0() < 0 || (u.c0() == 0 && u.c1() < 0))
            u = -u;
    } else {
        if (!is_totally_positive(u))
            u = -u;
        if (!is_totally_positive(u))
            raise(ErrorKind::DiscriminantNotInClass,
                  "Disc = " + d.to_string() + " is u^2 D only for units u that are not totally positive");
    }
    return u;
}

template <BaseField K>
OrientedIdeal<K> psi(const Extension<K>& ext, const QuadraticForm<K>& f)
{
    using S = KElement<K>;
    if (!is_primitive(f))
        raise(ErrorKind::NotPrimitive, "form " + f.to_string() + " is not primitive");
    const S u = discriminant_unit(ext, f);
    const S half(Rational(1, 2));
    IdealBasis<K> basis{ext, ext.embed(f.a), ext.element(-f.b * half, u * half)};
    return {std::move(basis), embed_signs(f.a)};
}

template <BaseField K>
QuadraticForm<K> identity_form(const Extension<K>& ext)
{
    return {KElement<K>(1), ext.w(), ext.z()};
}

template <BaseField K>
QuadraticForm<K> inverse_form(const QuadraticForm<K>& f)
{
    if (!is_primitive(f))
        raise(ErrorKind::NotPrimitive, "form " + f.to_string() + " is not primitive");
    return {f.a, -f.b, f.c};
}

template <BaseField K>
QuadraticForm<K> compose(const Extension<K>& ext, const QuadraticForm<K>& f1, const QuadraticForm<K>& f2)
{
    return phi(ideal_mul(psi(ext, f1), psi(ext, f2)));
}

/// gamma = det M / conj(alpha) with gamma * Psi(Phi(I)) = I, checked exactly.
template <BaseField K>
LElement<K> roundtrip_gamma(const OrientedIdeal<K>& ideal)
{
    const OrientedIdeal<K> adjusted = with_orientation(ideal.basis, ideal.eps);
    const LElement<K> gamma = adjusted.basis.alpha.conj().inverse() * det_m(adjusted.basis);
    const OrientedIdeal<K> back = scale(gamma, psi(ideal.basis.ext, phi(adjusted)));
    if (!same_oriented(back, ideal))
        throw std::logic_error("round trip through Phi and Psi did not return the ideal");
    return gamma;
}

template <BaseField K>
struct SignConditions {
    bool form_positive;  // sigma_i(Q) positive definite
    bool det_positive;   // sigma_i(det M) > 0
    bool im_positive;    // sigma_i(Im(beta / alpha)) > 0

    bool agree() const { return form_positive == det_positive && det_positive == im_positive; }
};

template <BaseField K>
SignConditions<K> tpd_sign_check(const OrientedIdeal<K>& ideal, int i)
{
    const auto& b = ideal.basis;
    if (!b.ext.totally_negative())
        raise(ErrorKind::DiscriminantNotTotallyNegative,
              "D = " + b.ext.discriminant().to_string() + " is not totally negative");
    const QuadraticForm<K> f = phi(oriented(b));
    return {sign_at(f.a, i) > 0, sign_at(det_m(b), i) > 0, sign_at(im_part(b.beta / b.alpha), i) > 0};
}

// ---------------------------------------------------------------------------
// Form equivalence certified on the ideal side.

template <BaseField K>
struct FormEquivalence {
    Equivalence status = Equivalence::Unknown;
    std::optional<FormTransformation<K>> witness;
    std::optional<LElement<K>> gamma;
};

namespace detail {

template <BaseField K>
FormEquivalence<K> form_equivalent_direct(const Extension<K>& ext, const QuadraticForm<K>& f1,
                                          const QuadraticForm<K>& f2, std::size_t search_bound)
{
    using S = KElement<K>;
    const S u1 = discriminant_unit(ext, f1), u2 = discriminant_unit(ext, f2);
    const OrientedIdeal<K> i1 = psi(ext, f1), i2 = psi(ext, f2);
    const EquivalenceResult<K> res = oriented_equivalent(i1, i2, search_bound);
    if (res.status != Equivalence::Equivalent)
        return {res.status, std::nullopt, std::nullopt};

    // [alpha2, beta2] = [p g alpha1 + r g beta1, q g alpha1 + s g beta1]
    const IdealBasis<K> moved = scale(*res.gamma, i1.basis);
    auto [p, r] = basis_coordinates(moved, i2.basis.alpha);
    auto [q, s] = basis_coordinates(moved, i2.basis.beta);
    FormTransformation<K> t{p, -q, -r, s, S(1)};
    t.u = u2 / (t.det() * u1);
    if (!verify_equivalence_witness(f1, f2, t))
        throw std::logic_error("ideal-side witness does not transform the forms");
    return {Equivalence::Equivalent, t, res.gamma};
}

} // namespace detail

/// Decides Q1 ~ Q2 through Psi. On success the witness satisfies
/// verify_equivalence_witness(Q1, Q2, witness). When K has no real
/// embedding, -1 is a totally positive unit, so Q1(x, -y) is tried as well;
/// its ideal is the conjugate of Psi(Q1).
template <BaseField K>
FormEquivalence<K> form_equivalent(const Extension<K>& ext, const QuadraticForm<K>& f1, const QuadraticForm<K>& f2,
                                   std::size_t search_bound)
{
    FormEquivalence<K> direct = detail::form_equivalent_direct(ext, f1, f2, search_bound);
    if constexpr (K::descriptor.real_embeddings == 0) {
        if (direct.status == Equivalence::Equivalent)
            return direct;
        FormEquivalence<K> flipped = detail::form_equivalent_direct(ext, inverse_form(f1), f2, search_bound);
        if (flipped.status == Equivalence::Equivalent) {
            // f2 = u f1(p x + q y, -(r x + s y))
            auto& t = *flipped.witness;
            t.r = -t.r;
            t.s = -t.s;
            if (!verify_equivalence_witness(f1, f2, t))
                throw std::logic_error("flipped witness does not transform the forms");
            return flipped;
        }
        if (direct.status == Equivalence::Unknown || flipped.status == Equivalence::Unknown)
            return {Equivalence::Unknown, std::nullopt, std::nullopt};
    }
    return direct;
}

// ---------------------------------------------------------------------------
// Quadratic fields over Q.

struct OclReport {
    int case_number = 0;
    Integer h = 0;
    Integer ocl_order = 0;
    Integer ocl_order_direct = 0;   // oriented classes counted on the ideal side
    bool complete = true;           // false when a bounded search returned Unknown
    std::optional<LElement<Rationals>> fundamental_unit;  // D > 0
    std::vector<int> unit_norm_signs;                      // H
};

namespace detail {

/// Primitive integral ideals [a, b + Omega] with a <= bound_a, 0 <= b < a.
inline std::vector<IdealBasis<Rationals>> small_primitive_ideals(const Extension<Rationals>& ext, const Integer& bound_a)
{
    using S = KElement<Rationals>;
    std::vector<IdealBasis<Rationals>> out;
    const Integer w = numerator(ext.w().c0()), z = numerator(ext.z().c0());
    for (Integer a = 1; a <= bound_a; ++a)
        for (Integer b = 0; b < a; ++b) {
            Integer n = b * b - w * b + z;
            if (n % a != 0)
                continue;
            out.push_back({ext, ext.embed(S(a)), ext.from_omega_coords(S(b), S(1))});
        }
    return out;
}

/// Splits items into classes under `same`; returns the number of classes, or
/// nullopt when some comparison was inconclusive.
template <class T, class Same>
std::optional<std::size_t> count_classes(const std::vector<T>& items, Same same)
{
    std::vector<const T*> reps;
    for (const auto& x : items) {
        bool placed = false;
        for (const T* rep : reps) {
            Equivalence e = same(*rep, x);
            if (e == Equivalence::Unknown)
                return std::nullopt;
            if (e == Equivalence::Equivalent) {
                placed = true;
                break;
            }
        }
        if (!placed)
            reps.push_back(&x);
    }
    return reps.size();
}

} // namespace detail

template <BaseField K>
OclReport ocl_structure_Q(const KElement<K>& d, std::size_t search_bound = 1000)
{
    if constexpr (K::descriptor.degree() != 1) {
        raise(ErrorKind::WrongBase, "the three-case description is for K = Q");
    } else {
        using S = KElement<Rationals>;
        const Extension<Rationals> ext = make_extension<Rationals>(S(d.c0()));
        const Integer dd = numerator(d.c0());
        OclReport report;
        Integer bound_a;
        if (dd < 0) {
            report.case_number = 1;
            report.h = enumerate_classes_Q(d).size();
            report.unit_norm_signs = {1};
            bound_a = isqrt(Integer(-dd / 3));
        } else {
            const LElement<Rationals> eta = fundamental_unit(ext);
            report.fundamental_unit = eta;
            const bool negative = rel_norm(eta) == S(-1);
            report.case_number = negative ? 3 : 2;
            report.unit_norm_signs = negative ? std::vector<int>{1, -1} : std::vector<int>{1};
            // every class holds an integral ideal of norm <= sqrt(D)/2
            bound_a = isqrt(Integer(dd / 4));
        }

        const auto ideals = detail::small_primitive_ideals(ext, bound_a);
        const SignVector plus{1}, minus{-1};

        if (dd > 0) {
            auto wide = [&](const IdealBasis<Rationals>& x, const IdealBasis<Rationals>& y) {
                const auto ox = with_orientation(x, plus);
                Equivalence e1 = oriented_equivalent(ox, with_orientation(y, plus), search_bound).status;
                if (e1 == Equivalence::Equivalent)
                    return e1;
                Equivalence e2 = oriented_equivalent(ox, with_orientation(y, minus), search_bound).status;
                if (e2 == Equivalence::Equivalent)
                    return e2;
                return (e1 == Equivalence::Unknown || e2 == Equivalence::Unknown) ? Equivalence::Unknown
                                                                                  : Equivalence::NotEquivalent;
            };
            auto h = detail::count_classes(ideals, wide);
            if (h)
                report.h = *h;
            else
                report.complete = false;
        }
        report.ocl_order = report.case_number == 3 ? report.h : Integer(2 * report.h);

        std::vector<OrientedIdeal<Rationals>> oriented_ideals;
        for (const auto& b : ideals)
            for (const auto* e : {&plus, &minus})
                oriented_ideals.push_back(with_orientation(b, *e));
        auto direct = detail::count_classes(oriented_ideals, [&](const auto& x, const auto& y) {
            return oriented_equivalent(x, y, search_bound).status;
        });
        if (direct)
            report.ocl_order_direct = *direct;
        else
            report.complete = false;
        return report;
    }
}

} // namespace qfc
