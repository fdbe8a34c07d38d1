#include "ainf/builders.hpp"

#include <gtest/gtest.h>

using namespace ainf;

namespace {

const Rational E3(3);

RingElement R(const char* s, const Rational& E = E3) { return parse_ring(s, E); }

// naive oracle: a series as a map from (lambda, e, s, t0) to a coefficient
using Naive = std::map<std::tuple<Rational, int, int, int>, Rational>;

Naive naive(const RingElement& a) {
    Naive n;
    for (const auto& [m, c] : a.terms()) n[{m.lambda, m.e, m.s, m.t.empty() ? 0 : m.t[0]}] += c;
    return n;
}

Naive naive_mul(const Naive& a, const Naive& b, const Rational& E) {
    Naive r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto [la, ea, sa, ta] = ka;
            auto [lb, eb, sb, tb] = kb;
            Rational val = la + lb + sa + sb + ta + tb;
            if (val > E) continue;
            r[{la + lb, ea + eb, sa + sb, ta + tb}] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
    return r;
}

}  // namespace

TEST(Coeff, ParsesAndPrints) {
    auto a = R("2 T^1/2 s - 1/3 e^-1 + T t0^2");
    EXPECT_EQ(to_string(a), "-1/3 e^-1 + 2 T^1/2 s + T t0^2");
    EXPECT_EQ(R(to_string(a).c_str()), a);
    EXPECT_EQ(to_string(R("0")), "0");
    EXPECT_EQ(R("T*T"), R("T^2"));
}

TEST(Coeff, ValuationCountsFormalVariables) {
    EXPECT_EQ(*R("T^1/2 s t0").valuation(), Rational(5, 2));
    EXPECT_EQ(*R("e^3").valuation(), Rational(0));
    EXPECT_FALSE(R("0").valuation().has_value());
}

TEST(Coeff, TruncationDropsHighEnergy) {
    EXPECT_TRUE(R("T^5/2 s e").is_zero());
    EXPECT_FALSE(R("T^3 e").is_zero());
    auto a = R("T^3/4", Rational(1)), b = R("T^1/2", Rational(1));
    EXPECT_TRUE((a * b).is_zero());
    EXPECT_EQ(R("T + T^2").truncate(Rational(3, 2)), R("T", Rational(3, 2)));
}

TEST(Coeff, PathRing) {
    auto p = extend_path(R("T"));
    EXPECT_EQ(specialize(p, Rational(1, 3)), R("T"));
    auto q = parse_series<Poly>("(1 + t) T^1/2 + t^2 e", E3);
    EXPECT_EQ(specialize(q, Rational(2)), R("3 T^1/2 + 4 e"));
    EXPECT_EQ(d_dt(q), parse_series<Poly>("T^1/2 + 2 t e", E3));
    EXPECT_TRUE(d_dt(extend_path(R("T + s"))).is_zero());
    // product commutes with evaluation
    auto r = parse_series<Poly>("(2 - t) T + (1/2 t^3) s", E3);
    for (int k = -2; k <= 2; ++k) {
        Rational t0(k, 3);
        EXPECT_EQ(specialize(q * r, t0), specialize(q, t0) * specialize(r, t0));
    }
}

TEST(Coeff, ParseErrorsCarryOffsets) {
    try {
        parse_ring("T + x", E3);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pos, 4u);
    }
    EXPECT_THROW(parse_ring("", E3), ParseError);
    EXPECT_THROW(parse_ring("T t", E3), ParseError);
    EXPECT_THROW(parse_ring("(1 + t) T", E3), ParseError);
    EXPECT_THROW(parse_ring("T^-1", E3), ParseError);
    EXPECT_THROW(parse_ring("2 3", E3), ParseError);
}

TEST(Coeff, OddVariablesRejected) {
    EXPECT_THROW((VarConfig{1, {}}.validate()), ConfigError);
    EXPECT_THROW((VarConfig{0, {2, 3}}.validate()), ConfigError);
    EXPECT_NO_THROW((VarConfig{2, {0, -2}}.validate()));
}

TEST(Coeff, MismatchedCutoffsThrow) {
    EXPECT_THROW(R("T", Rational(1)) + R("T", Rational(2)), ConfigError);
}

TEST(Coeff, DegreeFromConfig) {
    VarConfig vc{2, {0}};
    EXPECT_EQ(R("T s e").homogeneous_degree(vc), 4);
    EXPECT_EQ(R("s + e").homogeneous_degree(vc), 2);
    EXPECT_FALSE(R("s + 1").homogeneous_degree(vc).has_value());
}

TEST(Coeff, RingLawsOnRandomTriples) {
    Rng rng(11);
    auto A = e1(E3);
    Algebra wide = e1(Rational(40));
    long checked = 0;
    for (int i = 0; i < 10000; ++i) {
        auto a = random_ring(rng, A, 2 * rng.between(-1, 1), 0, 2);
        auto b = random_ring(rng, A, 2 * rng.between(-1, 1), 0, 2);
        auto c = random_ring(rng, A, 0, 0, 2);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a + b) - b, a);
        ASSERT_EQ(naive(a * b), naive_mul(naive(a), naive(b), E3));
        // no truncation at a large cutoff: valuations add
        RingElement wa(a.terms(), wide.emax), wb(b.terms(), wide.emax);
        if (!wa.is_zero() && !wb.is_zero()) {
            ASSERT_EQ(*(wa * wb).valuation(), *wa.valuation() + *wb.valuation());
        }
        ++checked;
    }
    EXPECT_EQ(checked, 10000);
}
