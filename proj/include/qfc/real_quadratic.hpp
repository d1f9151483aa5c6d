#pragma once

// Fundamental unit of a real quadratic field Q(sqrt(D)), D > 0 fundamental,
// from the period of the continued fraction of the reduced irrational
// theta = (b + sqrt(D))/2.

#include "qfc/extension.hpp"

namespace qfc {

/// The fundamental unit eta > 1 of O_L for L = Q(sqrt(D)), D > 0.
inline LElement<Rationals> fundamental_unit(const Extension<Rationals>& ext)
{
    const Integer d = numerator(ext.discriminant().c0());
    if (d <= 0)
        raise(ErrorKind::WrongBase, "fundamental unit requested for an imaginary quadratic field");
    const Integer s = isqrt(d);

    // b = D (mod 2), b < sqrt(D) < b + 2, so theta > 1 and -1 < conj(theta) < 0
    const Integer b = ((s - d) % 2 == 0) ? s : Integer(s - 1);
    const Integer p0 = b, q0 = 2;

    Integer p = p0, q = q0;
    Integer prev2 = 1, prev1 = 0;  // q_{k-2}, q_{k-1} of the convergent denominators
    for (;;) {
        Integer a = floor_div(p + s, q);
        Integer cur = a * prev1 + prev2;
        prev2 = prev1;
        prev1 = cur;
        Integer np = a * q - p;
        Integer nq = (d - np * np) / q;
        p = np;
        q = nq;
        if (p == p0 && q == q0)
            break;
    }
    // eta = q_{l-1} * theta + q_{l-2}
    using S = KElement<Rationals>;
    return ext.element(S(Rational(prev1 * b, 2) + Rational(prev2)), S(Rational(prev1, 2)));
}

} // namespace qfc
