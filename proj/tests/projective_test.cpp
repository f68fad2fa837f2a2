#include <gtest/gtest.h>

#include "padyn/random.hpp"

using namespace padyn;

TEST(ProjectiveTest, Normalization) {
    const Field F = make_field(2, 1, 1, 16);
    const Element z = Element::zero(F);
    EXPECT_THROW(normalize(z, z), BothCoordinatesVanish);
    const ProjectivePoint inf = infinity_point(F);
    EXPECT_TRUE(inf.is_infinity());
    EXPECT_FALSE(inf.is_integral());
    const ProjectivePoint P = normalize(Element::from_integer(F, 6), Element::from_integer(F, 4));
    EXPECT_FALSE(P.is_integral());
    EXPECT_TRUE(indistinguishable(P.x() / P.y(), Element::from_integer(F, 3) / Element::from_integer(F, 2)));
    EXPECT_TRUE(affine_point(Element::from_integer(F, 3)).is_integral());
}

TEST(ProjectiveTest, KnownDistances) {
    const Field F = make_field(2, 1, 1, 16);
    EXPECT_EQ(spherical_distance(infinity_point(F), affine_point(Element::zero(F))), 0);
    EXPECT_EQ(spherical_distance(affine_point(Element::from_integer(F, 1)), affine_point(Element::from_integer(F, 9))), 3);
    EXPECT_THROW(spherical_distance(infinity_point(F), infinity_point(F)), PrecisionExhausted);
    EXPECT_FALSE(spherical_distance_bound(infinity_point(F), infinity_point(F)).resolved);
}

// rho(z1, z2) = |z1 - z2| on O_K and |1/z1 - 1/z2| outside it.
TEST(ProjectiveTest, DistanceMatchesChartFormula) {
    for (auto [p, e, f] : std::vector<std::tuple<unsigned long, int, int>>{{2, 1, 1}, {3, 2, 1}, {2, 1, 2}}) {
        const Field F = make_field(p, e, f, 16);
        RandomStream rng(9);
        for (int i = 0; i < 200; ++i) {
            const Element a = random_integral(F, rng);
            const Element b = a + random_with_valuation(F, rng, static_cast<int>(rng.below(8)));
            EXPECT_EQ(spherical_distance(affine_point(a), affine_point(b)), (a - b).valuation());

            const int s = 1 + static_cast<int>(rng.below(4));
            const Element u = random_unit(F, rng).shifted(s);  // 1/z with z outside O_K
            const Element w = u + random_with_valuation(F, rng, s + static_cast<int>(rng.below(6)));
            const ProjectivePoint P = normalize(Element::one(F), u), Q = normalize(Element::one(F), w);
            EXPECT_EQ(spherical_distance(P, Q), (u - w).valuation());

            // An integral point and an outside point are at distance 1.
            EXPECT_EQ(spherical_distance(affine_point(a), P), 0);
        }
    }
}

TEST(ProjectiveTest, Literals) {
    const Field F = make_field(3, 1, 1, 12);
    EXPECT_TRUE(parse_point(F, "inf").is_infinity());
    EXPECT_EQ(to_point_literal(parse_point(F, "inf")), "inf");
    // Digits are Teichmuller representatives: 5 = -1 + 3 (-1) + 9.
    EXPECT_EQ(to_point_literal(parse_point(F, "5")), "digits:[2,2,1]");
    const ProjectivePoint P = parse_point(F, "pi^-1*1");
    EXPECT_FALSE(P.is_integral());
    EXPECT_EQ(to_string(P), "[digits:[1] : digits:[0,1]]");
}
