#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace qfc;

namespace {

template <BaseField K>
std::string show(const QuadraticForm<K>& f)
{
    return "(" + f.to_string() + ")";
}

oracle::Form to_oracle(const QuadraticForm<Rationals>& f)
{
    auto i = [](const KElement<Rationals>& x) { return numerator(x.c0()).convert_to<oracle::i64>(); };
    return {i(f.a), i(f.b), i(f.c)};
}

template <BaseField K>
std::vector<KElement<K>> definite_discriminants()
{
    return gen::fundamental_discriminants<K>(K::descriptor.degree() == 1 ? 60 : 12, true);
}

} // namespace

// Transforming by a matrix with totally positive determinant and a totally
// positive multiplier gives a form that the ideal side recognises, with a
// witness that reproduces it.
template <BaseField K>
void transforms_are_recognised(std::uint64_t seed, int count)
{
    gen::Rng rng(seed);
    auto ds = definite_discriminants<K>();
    ASSERT_FALSE(ds.empty());
    for (int i = 0; i < count; ++i) {
        auto ext = make_extension(rng.pick(ds));
        auto f = gen::primitive_form(rng, ext, 3);
        auto t = gen::unimodular<K>(rng, 2, true);
        t.u = gen::totally_positive_unit<K>(rng);
        auto g = transform(f, t);
        ASSERT_TRUE(verify_equivalence_witness(f, g, t));
        auto r = form_equivalent(ext, f, g, 20000);
        ASSERT_EQ(r.status, Equivalence::Equivalent) << show(f) << " -> " << show(g);
        EXPECT_TRUE(verify_equivalence_witness(f, g, *r.witness));
        EXPECT_EQ(is_tpd(f), is_tpd(g));
    }
}

TEST(Recognition, OverQ) { transforms_are_recognised<Rationals>(101, 120); }
TEST(Recognition, OverGaussianRationals) { transforms_are_recognised<GaussianRationals>(102, 60); }
TEST(Recognition, OverQSqrt2) { transforms_are_recognised<QSqrt2>(103, 60); }
TEST(Recognition, OverQSqrt5) { transforms_are_recognised<QSqrt5>(104, 60); }
TEST(Recognition, OverQSqrt13) { transforms_are_recognised<QSqrt13>(105, 40); }

TEST(Recognition, AgreesWithReducedFormsOverQ)
{
    gen::Rng rng(111);
    std::vector<KElement<Rationals>> ds;
    for (int d = -300; d <= -3; ++d)
        if (oracle::fundamental_discriminant(d))
            ds.emplace_back(d);
    int equal = 0;
    for (int i = 0; i < 300; ++i) {
        auto ext = make_extension(rng.pick(ds));
        auto f = gen::primitive_form(rng, ext, 6);
        auto g = gen::primitive_form(rng, ext, 6);
        if (f.a.c0() < 0 || g.a.c0() < 0)
            continue;
        bool same = oracle::reduce(to_oracle(f)) == oracle::reduce(to_oracle(g));
        equal += same;
        auto r = form_equivalent(ext, f, g, 5000);
        EXPECT_EQ(r.status, same ? Equivalence::Equivalent : Equivalence::NotEquivalent) << show(f) << show(g);
    }
    EXPECT_GT(equal, 10);
}

// gamma * I with the orientation carried by sgn N(gamma) is the same class.
template <BaseField K>
void scaled_ideals_are_equivalent(std::uint64_t seed, int count)
{
    gen::Rng rng(seed);
    auto ds = definite_discriminants<K>();
    for (int i = 0; i < count; ++i) {
        auto ext = make_extension(rng.pick(ds));
        auto a = gen::oriented_ideal(rng, ext);
        auto gamma = ext.element(gen::nonzero_rational<K>(rng, 3), gen::integral<K>(rng, 3));
        if (gamma.is_zero())
            continue;
        auto b = scale(gamma, a);
        auto r = oriented_equivalent(a, b, 20000);
        ASSERT_EQ(r.status, Equivalence::Equivalent);
        EXPECT_TRUE(same_module(scale(*r.gamma, a.basis), b.basis));
        EXPECT_EQ(embed_signs(rel_norm(*r.gamma)) * a.eps, b.eps);
        EXPECT_EQ(phi(with_orientation(a.basis, a.eps)).disc(), phi(with_orientation(b.basis, b.eps)).disc());
    }
}

TEST(IdealClasses, ScalingOverQ) { scaled_ideals_are_equivalent<Rationals>(121, 80); }
TEST(IdealClasses, ScalingOverGaussianRationals) { scaled_ideals_are_equivalent<GaussianRationals>(122, 40); }
TEST(IdealClasses, ScalingOverQSqrt2) { scaled_ideals_are_equivalent<QSqrt2>(123, 40); }
TEST(IdealClasses, ScalingOverQSqrt5) { scaled_ideals_are_equivalent<QSqrt5>(124, 40); }

// composition only depends on the classes of its arguments
template <BaseField K>
void compose_respects_classes(std::uint64_t seed, const KElement<K>& d, int count)
{
    gen::Rng rng(seed);
    auto ext = make_extension(d);
    for (int i = 0; i < count; ++i) {
        auto f = gen::primitive_form(rng, ext, 2);
        auto g = gen::primitive_form(rng, ext, 2);
        auto t = gen::unimodular<K>(rng, 2, true);
        t.u = gen::totally_positive_unit<K>(rng);
        auto f2 = transform(f, t);
        auto r = form_equivalent(ext, compose(ext, f, g), compose(ext, f2, g), 20000);
        ASSERT_EQ(r.status, Equivalence::Equivalent) << show(f) << show(g);
        EXPECT_TRUE(verify_equivalence_witness(compose(ext, f, g), compose(ext, f2, g), *r.witness));
        auto c = compose(ext, f, g);
        EXPECT_EQ(c.disc(), ext.discriminant());
        EXPECT_TRUE(is_primitive(c));
    }
}

TEST(Composition, RespectsClassesOverQ) { compose_respects_classes<Rationals>(131, KElement<Rationals>(-84), 25); }
TEST(Composition, RespectsClassesOverQSqrt2)
{
    compose_respects_classes<QSqrt2>(132, KElement<QSqrt2>(-5, 2), 10);
}
TEST(Composition, RespectsClassesOverQSqrt5) { compose_respects_classes<QSqrt5>(133, KElement<QSqrt5>(-23), 10); }

TEST(Composition, MatchesDirichletOnRandomPairs)
{
    gen::Rng rng(141);
    std::vector<int> ds;
    for (int d = -2000; d <= -3; ++d)
        if (oracle::fundamental_discriminant(d))
            ds.push_back(d);
    for (int i = 0; i < 300; ++i) {
        int d = rng.pick(ds);
        auto ext = make_extension(KElement<Rationals>(d));
        auto classes = enumerate_classes_Q(KElement<Rationals>(d));
        auto f = rng.pick(classes), g = rng.pick(classes);
        auto c = reduce_form_Q(compose(ext, f, g));
        EXPECT_EQ(to_oracle(c), oracle::reduce(oracle::dirichlet(to_oracle(f), to_oracle(g)))) << d;
    }
}

// ideal multiplication commutes on the nose and its norm is multiplicative
template <BaseField K>
void ideal_product_properties(std::uint64_t seed, const KElement<K>& d, int count)
{
    gen::Rng rng(seed);
    auto ext = make_extension(d);
    for (int i = 0; i < count; ++i) {
        auto f = gen::primitive_form(rng, ext, 2);
        auto g = gen::primitive_form(rng, ext, 2);
        auto prod = ideal_mul(psi(ext, f), psi(ext, g));
        EXPECT_TRUE(same_oriented(prod, ideal_mul(psi(ext, g), psi(ext, f))));
        auto n = rel_norm_ideal(prod.basis);
        EXPECT_TRUE(is_unit(n / (rel_norm_ideal(psi(ext, f).basis) * rel_norm_ideal(psi(ext, g).basis))));
    }
}

TEST(Composition, IdealProductOverQ) { ideal_product_properties<Rationals>(151, KElement<Rationals>(-71), 30); }
TEST(Composition, IdealProductOverQSqrt5)
{
    ideal_product_properties<QSqrt5>(152, KElement<QSqrt5>(-23), 10);
}
TEST(Composition, IdealProductOverGaussianRationals)
{
    ideal_product_properties<GaussianRationals>(153, KElement<GaussianRationals>(-3), 10);
}

TEST(RealQuadratic, RecognitionWithSmallUnits)
{
    gen::Rng rng(161);
    for (int d : {5, 8, 12, 13, 21, 24, 28, 40, 60, 73}) {
        auto ext = make_extension(KElement<Rationals>(d));
        for (int i = 0; i < 8; ++i) {
            auto f = gen::primitive_form(rng, ext, 3);
            auto t = gen::unimodular<Rationals>(rng, 2, true);
            auto g = transform(f, t);
            auto r = form_equivalent(ext, f, g, 20000);
            ASSERT_EQ(r.status, Equivalence::Equivalent) << d << show(f) << show(g);
            EXPECT_TRUE(verify_equivalence_witness(f, g, *r.witness));
        }
    }
}
