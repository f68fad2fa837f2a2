#include <gtest/gtest.h>

#include "padyn/phi.hpp"
#include "padyn/random.hpp"

using namespace padyn;

namespace {

const std::vector<std::tuple<unsigned long, int, int>> kFields = {
    {2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {2, 1, 2}, {5, 1, 1}};

}

TEST(PhiTest, RejectsBadParameters) {
    const Field F = make_field(2, 1, 1, 32);
    EXPECT_THROW(make_phi(F, 1, 1), BadParameters);
    EXPECT_THROW(make_phi(F, 2, 3), BadParameters);
    EXPECT_THROW(make_phi(F, 3, 0), BadParameters);
    EXPECT_THROW(make_phi(F, 17, 2), ExponentTooLarge);
    EXPECT_THROW(make_phi(make_field(5, 1, 1, 16), 7, 2), ExponentTooLarge);
}

TEST(PhiTest, Regime) {
    const Field F = make_field(2, 1, 1, 32);
    EXPECT_EQ(make_phi(F, 3, 2).regime_flag(), "verified");
    EXPECT_EQ(make_phi(F, 2, 1).regime_flag(), "experimental_n1");
    EXPECT_EQ(make_phi(F, 3, 2).degree(), 8u);
}

TEST(PhiTest, KnownValues) {
    const Field F = make_field(2, 1, 1, 32);
    const PhiMap phi = make_phi(F, 3, 2);
    // (4 - 2) / (2 + 256 - 16) = 1/121.
    const Element v = eval_affine(phi, Element::from_integer(F, 2));
    EXPECT_TRUE(indistinguishable(v * Element::from_integer(F, 121), Element::one(F)));
    EXPECT_TRUE(eval_affine(phi, Element::zero(F)).is_zero());
    EXPECT_TRUE(eval(phi, infinity_point(F)).is_integral());
    EXPECT_TRUE(eval(phi, infinity_point(F)).affine().is_zero());
}

TEST(PhiTest, TeichmullerPointsMapToZero) {
    for (auto [p, e, f] : kFields) {
        const Field F = make_field(p, e, f, 16);
        const PhiMap phi = make_phi(F, 3, 2);
        for (std::uint64_t c = 0; c < F->residue_size(); ++c)
            EXPECT_TRUE(eval_affine(phi, teichmuller({c}, F)).is_zero()) << F->spec_string() << " c=" << c;
    }
}

TEST(PhiTest, HomogeneousAgreesWithAffine) {
    for (auto [p, e, f] : kFields) {
        const Field F = make_field(p, e, f, 16);
        const PhiMap phi = make_phi(F, 3, 2);
        RandomStream rng(21);
        for (int i = 0; i < 40; ++i) {
            const Element z = random_integral(F, rng);
            const ProjectivePoint img = eval(phi, affine_point(z));
            ASSERT_TRUE(img.is_integral());
            EXPECT_TRUE(indistinguishable(img.affine(), eval_affine(phi, z)));
        }
    }
}

TEST(PhiTest, LocalScaling) {
    for (auto [p, e, f] : kFields) {
        const Field F = make_field(p, e, f, 16);
        const PhiMap phi = make_phi(F, 3, 2);
        const int N = F->pi_precision;
        RandomStream rng(17);
        for (int depth = 1; depth <= N - 2; ++depth) {
            const Element x = random_integral(F, rng);
            const Element y = random_at_distance(x, rng, depth);
            EXPECT_EQ((eval_affine(phi, x) - eval_affine(phi, y)).valuation(), depth - 1)
                << F->spec_string() << " depth " << depth;
        }
    }
}

TEST(PhiTest, OutsidePointsLandInPiOK) {
    for (auto [p, e, f] : kFields) {
        const Field F = make_field(p, e, f, 16);
        const PhiMap phi = make_phi(F, 3, 2);
        RandomStream rng(4);
        for (int i = 0; i < 40; ++i) {
            const ProjectivePoint img = eval(phi, random_outside_point(F, rng, 4));
            ASSERT_TRUE(img.is_integral());
            EXPECT_GE(img.affine().valuation_bound(), 1);
        }
    }
}

TEST(PhiTest, Orbit) {
    const Field F = make_field(2, 1, 1, 32);
    const PhiMap phi = make_phi(F, 3, 2);
    const Orbit o = orbit(phi, affine_point(Element::from_integer(F, 2)), 5);
    ASSERT_EQ(o.points.size(), 6u);
    EXPECT_FALSE(o.truncated_at.has_value());
    EXPECT_TRUE(indistinguishable(o.points[1], eval(phi, o.points[0])));
    EXPECT_THROW(orbit(phi, infinity_point(F), 33), PrecisionExhausted);
}
