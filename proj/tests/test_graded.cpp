#include "ainf/builders.hpp"

#include <gtest/gtest.h>

using namespace ainf;

TEST(Graded, Maltese) {
    std::vector<int> d{0, 1, 2, 1};
    EXPECT_EQ(maltese(d, 0), 0);
    EXPECT_EQ(maltese(d, 1), -1);
    EXPECT_EQ(maltese(d, 3), 0);
    EXPECT_EQ(maltese(d, 4), 0);
    EXPECT_THROW(maltese(d, 5), std::out_of_range);
}

TEST(Graded, CyclicKoszulSign) {
    // moving a shifted-odd element past a shifted-odd block flips the sign
    EXPECT_EQ(koszul_sign_cyclic({2, 0}), -1);
    EXPECT_EQ(koszul_sign_cyclic({1, 2}), 1);
    EXPECT_EQ(koszul_sign_cyclic({2, 2, 0}), 1);
    EXPECT_EQ(koszul_sign_cyclic({3}), 1);
    EXPECT_THROW(koszul_sign_cyclic({}), std::invalid_argument);
}

TEST(Graded, BasisNames) {
    Basis B = torus_basis();
    EXPECT_EQ(B.index("ab"), 3);
    EXPECT_EQ(B.find("c"), -1);
    EXPECT_THROW(B.index("c"), ConfigError);
    EXPECT_THROW(B.add("a", 1), ConfigError);
    EXPECT_THROW(B.set_unit(1), ConfigError);
    EXPECT_EQ(B.word_name({1, 3, 0}), "(a,ab,1)");
    EXPECT_EQ(B.sd({1, 3, 0}), 0 + 1 - 1);
}

TEST(Graded, SubstituteSign) {
    Basis B = torus_basis();
    const Rational E(2);
    auto one = RingElement::constant(1, E);
    // (b, ab, a): replace ab by a at position 1, sign (-1)^{|b|'} = 1
    auto r = substitute(B, {2, 3, 1}, one, 1, 1, basis_element(1, one));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.begin()->first, (Word{2, 1, 1}));
    EXPECT_EQ(r.begin()->second, one);
    // (ab, a): replace a at position 1, sign (-1)^{|ab|'} = -1
    auto s = substitute(B, {3, 1}, one, 1, 1, basis_element(2, one));
    EXPECT_EQ(s.begin()->second, -one);
    // span 0 inserts, sign (-1)^{|ab|' + |a|'} = -1
    auto t = substitute(B, {3, 1}, one, 2, 0, basis_element(0, one));
    EXPECT_EQ(t.begin()->first, (Word{3, 1, 0}));
    EXPECT_EQ(t.begin()->second, -one);
    EXPECT_THROW(substitute(B, {3}, one, 1, 1, basis_element(0, one)), std::out_of_range);
}

TEST(Graded, HomogeneousDegree) {
    Basis B = e1_basis();
    VarConfig vc{0, {0}};
    const Rational E(3);
    Element<RingElement> x{{1, parse_ring("T^1/2", E)}};
    EXPECT_EQ(homogeneous_degree(B, vc, x), 1);
    x[0] = parse_ring("T e^-1", E);
    EXPECT_EQ(homogeneous_degree(B, vc, x), std::nullopt);
    x[0] = parse_ring("T e^-1 + s", E);
    EXPECT_EQ(homogeneous_degree(B, vc, x), std::nullopt);
    Element<RingElement> y{{0, parse_ring("s", E)}};
    EXPECT_EQ(homogeneous_degree(B, vc, y), 0);
    EXPECT_EQ(homogeneous_degree(B, VarConfig{2, {}}, y), 2);
}
