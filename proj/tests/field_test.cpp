#include <gtest/gtest.h>

#include "padyn/element.hpp"

using namespace padyn;

TEST(FieldTest, RejectsBadParameters) {
    EXPECT_THROW(make_field(4, 1, 1, 32), NotPrime);
    EXPECT_THROW(make_field(1, 1, 1, 32), NotPrime);
    EXPECT_THROW(make_field(2, 3, 3, 32), DegreeTooLarge);
    EXPECT_THROW(make_field(2, 0, 1, 32), BadParameters);
    EXPECT_THROW(make_field(2, 1, 0, 32), BadParameters);
    EXPECT_THROW(make_field(2, 1, 1, 4), BadParameters);
}

TEST(FieldTest, Descriptor) {
    const Field F = make_field(2, 2, 2, 20);
    EXPECT_EQ(F->d, 4);
    EXPECT_EQ(F->pi_precision, 40);
    EXPECT_EQ(F->residue_size(), 4u);
    EXPECT_EQ(F->unram_poly_string(), "X^2+X+1");
    EXPECT_EQ(F->spec_string(), "p=2,e=2,f=2,prec=20");
    EXPECT_TRUE(parse_field_spec(F->spec_string())->same_as(*F));
    EXPECT_THROW(parse_field_spec("p=2,e=x"), ParseError);
    EXPECT_THROW(parse_field_spec("p=2,g=1"), ParseError);
}

TEST(FieldTest, EisensteinRelation) {
    for (auto [p, e] : std::vector<std::pair<unsigned long, int>>{{2, 2}, {3, 2}, {2, 3}, {5, 4}}) {
        const Field F = make_field(p, e, 1, 16);
        const Element pe = Element::pi_power(F, 1).pow(static_cast<std::uint64_t>(e));
        EXPECT_TRUE(indistinguishable(pe, Element::from_integer(F, static_cast<long>(p)))) << p << "," << e;
        EXPECT_EQ(Element::from_integer(F, static_cast<long>(p)).valuation(), e);
    }
}

TEST(FieldTest, TeichmullerTableMatchesIteration) {
    for (auto [p, f] : std::vector<std::pair<unsigned long, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 1}, {7, 2}}) {
        const Field F = make_field(p, 1, f, 24);
        for (std::uint64_t c = 0; c < F->residue_size(); ++c) {
            const Element table = teichmuller({c}, F);
            const Element iter = Element::from_coords(F, ring::teichmuller_by_iteration(*F, {c}));
            EXPECT_TRUE(indistinguishable(table, iter)) << "p=" << p << " f=" << f << " c=" << c;
        }
    }
}

TEST(FieldTest, TeichmullerKnownValue) {
    // The lift of 2 in Z_5 is the 4th root of unity congruent to 57 mod 125.
    EXPECT_THROW(make_field(5, 1, 1, 3), BadParameters);
    const Field G = make_field(5, 1, 1, 10);
    const Element t = teichmuller({2}, G);
    const Element diff = t - Element::from_integer(G, 57);
    EXPECT_GE(diff.valuation_bound(), 3);
    EXPECT_TRUE(indistinguishable(t.pow(4), Element::one(G)));
}

TEST(FieldTest, TeichmullerLargeResidueField) {
    for (int f = 1; f <= 8; ++f) {
        const Field F = make_field(2, 1, f, 12);
        const std::uint64_t q = F->residue_size();
        for (std::uint64_t c : {std::uint64_t{1}, q - 1, q / 2 + 1}) {
            if (c >= q) continue;
            const Element t = teichmuller({c}, F);
            EXPECT_TRUE(indistinguishable(t.pow(q), t)) << "f=" << f << " c=" << c;
            EXPECT_EQ(t.reduction(), ResidueElement{c});
        }
    }
}
