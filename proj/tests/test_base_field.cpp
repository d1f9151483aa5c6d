#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace qfc;

using QQ = KElement<Rationals>;
using QI = KElement<GaussianRationals>;
using Q2 = KElement<QSqrt2>;
using Q5 = KElement<QSqrt5>;
using Q13 = KElement<QSqrt13>;

TEST(Arithmetic, SqrtTwoSquared)
{
    EXPECT_EQ(Q2::omega() * Q2::omega(), Q2(2));
}

TEST(Arithmetic, InverseOfOnePlusSqrtTwo)
{
    EXPECT_EQ(Q2(1) / Q2(1, 1), Q2(-1, 1));
}

TEST(Arithmetic, ConjugateSumInQSqrt5)
{
    Q5 x = Q5::from_sqrt_m(Rational(1, 2), Rational(1, 2));
    Q5 y = Q5::from_sqrt_m(Rational(1, 2), Rational(-1, 2));
    EXPECT_EQ(x + y, Q5(1));
    EXPECT_EQ(y, x.conj());
}

TEST(Arithmetic, DivisionByZero)
{
    try {
        (void)(Q2(1) / Q2(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    }
}

TEST(Arithmetic, ConjIsIdentityOverQ)
{
    EXPECT_EQ(QQ(Rational(-7, 3)).conj(), QQ(Rational(-7, 3)));
}

TEST(Arithmetic, OmegaSquaredHalfSqrt)
{
    // w = (1 + sqrt 13)/2 satisfies w^2 = w + 3
    EXPECT_EQ(Q13::omega() * Q13::omega(), Q13::omega() + Q13(3));
}

TEST(Arithmetic, ParseAndPrintRoundTrip)
{
    for (const char* s : {"0", "3", "-w", "1/2+1/2w", "-7/3-2w", "w", "5/4w"}) {
        Q5 x = parse_kelement<QSqrt5>(s);
        EXPECT_EQ(parse_kelement<QSqrt5>(x.to_string()), x) << s;
    }
    EXPECT_EQ(parse_kelement<QSqrt2>("1-w"), Q2(1, -1));
    EXPECT_THROW(parse_kelement<Rationals>("1+w"), Error);
    EXPECT_THROW(parse_kelement<Rationals>("1/0"), Error);
    EXPECT_THROW(parse_kelement<Rationals>("abc"), Error);
}

TEST(Signs, Examples)
{
    EXPECT_EQ(embed_signs(Q2(1)), (SignVector{1, 1}));
    EXPECT_EQ(embed_signs(Q2::omega()), (SignVector{1, -1}));
    EXPECT_EQ(embed_signs(QQ(-5)), (SignVector{-1}));
    EXPECT_EQ(embed_signs(QI(0, 1)).size(), 0u);
    EXPECT_THROW(embed_signs(Q2(0)), Error);
}

TEST(Signs, TotalPositivity)
{
    EXPECT_TRUE(is_totally_positive(Q5::from_sqrt_m(3, -1)));
    EXPECT_FALSE(is_totally_positive(Q2::omega()));
    EXPECT_TRUE(is_totally_positive(QI(-3, 2)));
    EXPECT_FALSE(is_totally_positive(QI(0)));
    // 1 + sqrt 2 has norm -1: one embedding of each sign
    EXPECT_FALSE(is_totally_positive(Q2(1, 1)));
    EXPECT_TRUE(is_totally_positive(Q2(1, 1) * Q2(1, 1)));
}

TEST(Signs, TightComparisons)
{
    // 99^2 = 9801 < 2 * 70^2 = 9800 + 1: 99 - 70 sqrt(2) > 0 barely
    EXPECT_EQ(embed_signs(Q2(99, -70)), (SignVector{1, 1}));
    EXPECT_EQ(embed_signs(Q2(-99, 70)), (SignVector{-1, -1}));
    EXPECT_EQ(embed_signs(Q2(70, -99)), (SignVector{-1, 1}));
}

template <class K>
void sign_multiplicativity(std::uint64_t seed)
{
    gen::Rng rng(seed);
    for (int i = 0; i < 300; ++i) {
        auto x = gen::nonzero_rational<K>(rng, 9), y = gen::nonzero_rational<K>(rng, 9);
        EXPECT_EQ(embed_signs(x * y), embed_signs(x) * embed_signs(y));
    }
}

TEST(Signs, MultiplicativeProperty)
{
    sign_multiplicativity<Rationals>(1);
    sign_multiplicativity<GaussianRationals>(2);
    sign_multiplicativity<QSqrt2>(3);
    sign_multiplicativity<QSqrt5>(4);
    sign_multiplicativity<QSqrt13>(5);
}

TEST(Signs, AgreeWithFloatingPointAwayFromZero)
{
    gen::Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        Q13 x = gen::nonzero_integral<QSqrt13>(rng, 50);
        auto [a, b] = x.sqrt_m_coords();
        double s1 = a.convert_to<double>() + b.convert_to<double>() * std::sqrt(13.0);
        double s2 = a.convert_to<double>() - b.convert_to<double>() * std::sqrt(13.0);
        if (std::abs(s1) < 1e-6 || std::abs(s2) < 1e-6)
            continue;
        EXPECT_EQ(embed_signs(x), (SignVector{s1 > 0 ? 1 : -1, s2 > 0 ? 1 : -1}));
    }
}

TEST(Gcd, Examples)
{
    EXPECT_EQ(gcd_k(QQ(4), QQ(6)), QQ(2));
    Q2 g = gcd_k(Q2(2), Q2::omega());
    EXPECT_TRUE(is_unit(g / Q2::omega()));
    QI h = gcd_k(QI(1, 1), QI(2));
    EXPECT_TRUE(is_unit(h / QI(1, 1)));
    EXPECT_THROW(gcd_k(QQ(Rational(1, 2)), QQ(3)), Error);
}

TEST(Gcd, NormalizedFirstEmbeddingPositive)
{
    gen::Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        Q5 x = gen::nonzero_integral<QSqrt5>(rng, 20), y = gen::nonzero_integral<QSqrt5>(rng, 20);
        EXPECT_GT(sign_at(gcd_k(x, y), 0), 0);
    }
}

template <class K>
void gcd_property(std::uint64_t seed)
{
    gen::Rng rng(seed);
    for (int i = 0; i < 150; ++i) {
        auto c = gen::nonzero_integral<K>(rng, 4);
        auto x = c * gen::integral<K>(rng, 12), y = c * gen::nonzero_integral<K>(rng, 12);
        auto g = gcd_k(x, y);
        EXPECT_TRUE(divides(g, x));
        EXPECT_TRUE(divides(g, y));
        EXPECT_TRUE(divides(c, g));
        auto [g2, s, t] = extended_gcd(x, y);
        EXPECT_EQ(s * x + t * y, g2);
        EXPECT_TRUE(is_unit(g2 / g));
    }
}

TEST(Gcd, DividesBothAndIsDividedByCommonDivisors)
{
    gcd_property<Rationals>(11);
    gcd_property<GaussianRationals>(12);
    gcd_property<QSqrt2>(13);
    gcd_property<QSqrt5>(14);
    gcd_property<QSqrt13>(15);
}

template <class K>
void euclid_property(std::uint64_t seed)
{
    gen::Rng rng(seed);
    for (int i = 0; i < 300; ++i) {
        auto x = gen::integral<K>(rng, 30), y = gen::nonzero_integral<K>(rng, 30);
        auto r = euclid_rem(x, y);
        EXPECT_LT(abs(r.norm()), abs(y.norm()));
        EXPECT_TRUE(divides(y, x - r));
    }
}

TEST(Gcd, NormEuclideanRemainders)
{
    euclid_property<GaussianRationals>(21);
    euclid_property<QSqrt2>(22);
    euclid_property<QSqrt5>(23);
    euclid_property<QSqrt13>(24);
}

TEST(Units, FundamentalUnitNorms)
{
    for (const auto& d : field_registry) {
        with_field(d.tag, [&](auto k) {
            using K = decltype(k);
            if constexpr (K::descriptor.has_fundamental_unit) {
                auto e = fundamental_unit<K>();
                EXPECT_EQ(e * e.conj(), KElement<K>(K::descriptor.unit_norm_sign)) << d.name;
                EXPECT_TRUE(is_unit(e));
            }
        });
    }
    EXPECT_EQ(Q2(1, 1) * Q2(1, -1), Q2(-1));
}

TEST(Units, EverySignPatternHasAUnit)
{
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            SignVector v{s1, s2};
            EXPECT_EQ(embed_signs(unit_with_signs<QSqrt2>(v)), v);
            EXPECT_EQ(embed_signs(unit_with_signs<QSqrt5>(v)), v);
            EXPECT_EQ(embed_signs(unit_with_signs<QSqrt13>(v)), v);
        }
    EXPECT_EQ(unit_with_signs<Rationals>(SignVector{-1}), QQ(-1));
}

TEST(Units, NormalizeAssociateIsCanonical)
{
    gen::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        Q2 x = gen::nonzero_integral<QSqrt2>(rng, 10);
        Q2 u = gen::unit<QSqrt2>(rng);
        EXPECT_EQ(normalize_associate(x).value, normalize_associate(Q2(u * x)).value);
        QI y = gen::nonzero_integral<GaussianRationals>(rng, 10);
        EXPECT_EQ(normalize_associate(y).value, normalize_associate(QI(QI(0, 1) * y)).value);
    }
}

TEST(Residues, Examples)
{
    EXPECT_TRUE(is_qr_mod4(QQ(-23)));
    EXPECT_TRUE(is_qr_mod4(QQ(-8)));
    EXPECT_FALSE(is_qr_mod4(QQ(2)));
    EXPECT_THROW(is_qr_mod4(QQ(Rational(1, 2))), Error);
}

TEST(Residues, MatchBruteForceOverZ)
{
    for (int d = -200; d <= 200; ++d)
        EXPECT_EQ(is_qr_mod4(QQ(d)), oracle::qr_mod4(d)) << d;
}

template <class K>
void residues_against_full_system(std::uint64_t seed)
{
    // all 16 classes t0 + t1 w with 0 <= t0, t1 < 4
    gen::Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
        auto d = gen::integral<K>(rng, 40);
        bool brute = false;
        for (int t0 = 0; t0 < 4; ++t0)
            for (int t1 = 0; t1 < 4; ++t1) {
                KElement<K> t(t0, t1);
                KElement<K> q = (t * t - d) / KElement<K>(4);
                brute = brute || (is_integer(q.c0()) && is_integer(q.c1()));
            }
        EXPECT_EQ(is_qr_mod4(d), brute) << d;
    }
}

TEST(Residues, MatchFullResidueSystemOverQuadraticFields)
{
    residues_against_full_system<GaussianRationals>(41);
    residues_against_full_system<QSqrt2>(42);
    residues_against_full_system<QSqrt5>(43);
    residues_against_full_system<QSqrt13>(44);
}

TEST(Fundamental, Examples)
{
    EXPECT_TRUE(is_fundamental(QQ(-23)));
    EXPECT_TRUE(is_fundamental(QQ(-4)));
    EXPECT_FALSE(is_fundamental(QQ(-12)));
    EXPECT_THROW(is_fundamental(QQ(9)), Error);
    EXPECT_THROW(is_fundamental(QQ(0)), Error);
    EXPECT_THROW(is_fundamental(QQ(Rational(3, 2))), Error);
}

TEST(Fundamental, MatchClassicalDiscriminantsOverZ)
{
    for (int d = -400; d <= 400; ++d) {
        if (d == 0 || oracle::is_perfect_square(d))
            continue;
        EXPECT_EQ(is_fundamental(QQ(d)), oracle::fundamental_discriminant(d)) << d;
    }
}

template <class K>
void fundamental_unit_twist(std::uint64_t seed)
{
    gen::Rng rng(seed);
    auto ds = gen::fundamental_discriminants<K>(16, false);
    ASSERT_FALSE(ds.empty());
    for (int i = 0; i < 40; ++i) {
        auto d = rng.pick(ds);
        auto u = gen::unit<K>(rng);
        EXPECT_TRUE(is_fundamental(KElement<K>(u * u * d))) << d << " * " << u << "^2";
    }
}

TEST(Fundamental, StableUnderUnitSquares)
{
    fundamental_unit_twist<GaussianRationals>(51);
    fundamental_unit_twist<QSqrt2>(52);
    fundamental_unit_twist<QSqrt5>(53);
    fundamental_unit_twist<QSqrt13>(54);
}

TEST(Fundamental, FactorizationReconstructs)
{
    gen::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        Q13 x = gen::nonzero_integral<QSqrt13>(rng, 60);
        auto f = factor(x);
        Q13 prod = f.unit;
        for (const auto& [p, e] : f.primes)
            prod *= pow(p, e);
        EXPECT_EQ(prod, x);
        EXPECT_TRUE(is_unit(f.unit));
    }
}

TEST(Registry, ParsesCliSpellings)
{
    EXPECT_EQ(parse_field_tag("q"), FieldTag::Q);
    EXPECT_EQ(parse_field_tag("QI"), FieldTag::Q_I);
    EXPECT_EQ(parse_field_tag("q_sqrt2"), FieldTag::Q_SQRT2);
    EXPECT_EQ(parse_field_tag("Q_SQRT5"), FieldTag::Q_SQRT5);
    EXPECT_EQ(parse_field_tag("qsqrt13"), FieldTag::Q_SQRT13);
    EXPECT_FALSE(parse_field_tag("q_sqrt3").has_value());
}
