#include "ainf/reference.hpp"

#include <gtest/gtest.h>

using namespace ainf;

namespace {

const Rational E3(3);

InfinityInnerProduct make_phi(const Algebra& A, CocycleTower T, int lmax) {
    auto b = build_phi(A, std::move(T), lmax);
    EXPECT_TRUE(b.validation.pass());
    return *b.phi;
}

Element<RingElement> el(const Algebra& A, std::initializer_list<std::pair<const char*, const char*>> xs) {
    Element<RingElement> x;
    for (const auto& [n, c] : xs) add_term(x, A.basis.index(n), parse_ring(c, A.emax));
    return x;
}

Element<PathRingElement> path(const Algebra& A, std::initializer_list<std::pair<const char*, const char*>> xs) {
    Element<PathRingElement> x;
    for (const auto& [n, c] : xs) add_term(x, A.basis.index(n), parse_series<Poly>(c, A.emax));
    return x;
}

}  // namespace

TEST(Potential, HandValueOnE2) {
    auto A = e2(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_e1(A)}), 4);
    // only phi(m0)(b) survives: phi(1)(x) = 1
    for (int a : {-3, -1, 1, 2, 5}) {
        Rational al(a);
        auto b = el(A, {{"x", "T^1/2"}});
        b[1] = b[1].scaled(al);
        EXPECT_EQ(infty_cyclic_potential(A, phi, b), parse_ring("T^3/2 e", E3).scaled(al));
    }
    EXPECT_EQ(infty_cyclic_potential(A, phi, el(A, {{"x", "-1/3 T + T^3/2 s"}})), parse_ring("-1/3 T^2 e", E3));
    EXPECT_TRUE(infty_cyclic_potential(A, phi, Element<RingElement>{}).is_zero());
    EXPECT_EQ(auto_nmax(A, el(A, {{"x", "T^1/2"}})), 5);
    EXPECT_EQ(auto_nmax(A, el(A, {{"x", "T"}})), 2);
    EXPECT_THROW(infty_cyclic_potential(A, phi, el(A, {{"x", "1"}})), ConfigError);
}

TEST(Potential, OgwAddsConstantTerm) {
    auto A = e2(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_e1(A)}), 4);
    PotentialInput in{&A, &phi, el(A, {{"x", "2 T^1/2"}}), parse_ring("5 T^2 e", E3), std::nullopt};
    EXPECT_EQ(ogw_potential(in), parse_ring("2 T^3/2 e + 5 T^2 e", E3));
    in.b.clear();
    EXPECT_EQ(ogw_potential(in), in.m_minus_one);
}

TEST(Potential, StrictEqualsInfty) {
    Rng rng(31);
    struct Case {
        Algebra A;
        std::map<Word, RingElement> tower;
    };
    std::vector<Case> cases;
    {
        auto A = e2(E3);
        cases.push_back({A, reference::poincare_e1(A)});
    }
    {
        auto A = reference::torus(E3);
        cases.push_back({A, reference::poincare_torus(A)});
    }
    for (const auto& c : cases) {
        auto T = table_tower(c.A, {c.tower});
        ASSERT_TRUE(T.strict);
        auto phi = make_phi(c.A, T, 3);
        for (int i = 0; i < 25; ++i) {
            auto b = random_element(rng, c.A, 1, make_rational(1, 2), Rational(2));
            EXPECT_EQ(strict_cyclic_potential(c.A, T, b), infty_cyclic_potential(c.A, phi, b)) << to_string(c.A.basis, b);
        }
    }
    auto tw = reference::twisted_torus(E3);
    EXPECT_THROW(strict_cyclic_potential(tw.algebra, table_tower(tw.algebra, {tw.tower}), {}), ConfigError);
}

TEST(Potential, GaugePathOnTwistedInterval) {
    auto tw = reference::twisted_interval(E3);
    const auto& A = tw.algebra;
    auto phi = make_phi(A, table_tower(A, {tw.tower}), 3);
    auto g = gauge_invariance_check(A, phi, reference::gauge_path(tw));
    EXPECT_TRUE(g.report.pass()) << (g.report.witnesses.empty() ? "" : g.report.witnesses[0]);
    EXPECT_EQ(specialize(g.c, 0), parse_ring("T e", E3));
    EXPECT_EQ(g.at0, parse_ring("2 T^3/2 e", E3));
    EXPECT_EQ(g.at1, g.at0);
    EXPECT_TRUE(g.derivative.is_zero());
    // the N <= 0 truncation alone is not constant; the N = 1 terms cancel its t-dependence
    auto p0 = infty_cyclic_potential(A, phi, reference::gauge_path(tw), 0);
    EXPECT_FALSE(d_dt(p0).is_zero());
}

TEST(Potential, LinearPathOnFlatInterval) {
    auto A = reference::interval(E3, false);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_interval(A)}), 3);
    // (1 - t) T^1/2 x + t T^1/2 (x + g): velocity T^1/2 g = m1(T^1/2 u)
    auto g = gauge_invariance_check(A, phi, path(A, {{"x", "T^1/2"}, {"g", "(t) T^1/2"}}));
    EXPECT_TRUE(g.report.pass()) << (g.report.witnesses.empty() ? "" : g.report.witnesses[0]);
    EXPECT_TRUE(g.c.is_zero());
}

TEST(Potential, ConstantPath) {
    auto A = e2(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_e1(A)}), 4);
    auto g = gauge_invariance_check(A, phi, path(A, {{"x", "3 T^1/2"}}));
    EXPECT_TRUE(g.report.pass());
    EXPECT_EQ(g.at0, parse_ring("3 T^3/2 e", E3));
}

TEST(Potential, NonExactPathMovesPotential) {
    auto A = reference::interval(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_interval(A)}), 3);
    // T^1/2 (g + (1 + t) x): pointwise weak MC, but the velocity T^1/2 x is not exact
    auto g = gauge_invariance_check(A, phi, path(A, {{"g", "T^1/2"}, {"x", "(1 + t) T^1/2"}}));
    EXPECT_FALSE(g.report.pass());
    EXPECT_FALSE(g.derivative.is_zero());
    EXPECT_NE(g.at0, g.at1);
}

TEST(Potential, NonMaurerCartanPathRejected) {
    auto A = reference::interval(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_interval(A)}), 3);
    auto g = gauge_invariance_check(A, phi, path(A, {{"ux", "(t) T^1/2"}}));
    EXPECT_FALSE(g.report.pass());
    ASSERT_FALSE(g.report.witnesses.empty());
    EXPECT_NE(g.report.witnesses[0].find("not Maurer-Cartan"), std::string::npos);
}

TEST(Potential, IdentityChainOnRandomInput) {
    Rng rng(32);
    auto e = e2(E3);
    auto tt = reference::twisted_torus(E3);
    auto ti = reference::twisted_interval(E3);
    std::vector<std::pair<const Algebra*, InfinityInnerProduct>> cases;
    cases.emplace_back(&e, make_phi(e, table_tower(e, {reference::poincare_e1(e)}), 4));
    cases.emplace_back(&tt.algebra, make_phi(tt.algebra, table_tower(tt.algebra, {tt.tower}), 3));
    cases.emplace_back(&ti.algebra, make_phi(ti.algebra, table_tower(ti.algebra, {ti.tower}), 3));
    for (const auto& [A, phi] : cases)
        for (int i = 0; i < 6; ++i) {
            auto b = random_element(rng, *A, 1, make_rational(1, 2), Rational(2));
            auto w = wall_crossing_decomposition(*A, phi, b, 5);
            EXPECT_TRUE(w.residual_I1.is_zero()) << A->name << " " << to_string(w.residual_I1);
            EXPECT_TRUE(w.residual_I2.is_zero()) << A->name << " " << to_string(w.residual_I2);
        }
}

TEST(Potential, UnitInsertion) {
    auto A = e2(E3);
    auto phi = make_phi(A, table_tower(A, {reference::poincare_e1(A)}), 4);
    EXPECT_TRUE(unit_insertion_vanishing(A, phi, el(A, {{"x", "T^1/2"}}), 4).pass());
    auto I = reference::interval(E3);
    auto pi = make_phi(I, table_tower(I, {reference::poincare_interval(I)}), 3);
    EXPECT_FALSE(unit_insertion_vanishing(I, pi, el(I, {{"ux", "T^1/2"}}), 3).pass());
}

TEST(Potential, WallCrossingReport) {
    auto tw = reference::twisted_interval(E3);
    const auto& A = tw.algebra;
    auto phi = make_phi(A, table_tower(A, {tw.tower}), 3);
    auto p = reference::gauge_path(tw);
    auto mm = parse_ring("T^2 e", E3);
    PotentialInput minus{&A, &phi, specialize_element(p, 0), mm, A.zero()};
    PotentialInput plus{&A, &phi, specialize_element(p, 1), mm, A.zero()};
    auto r = wall_crossing_report(minus, plus);
    EXPECT_TRUE(r.report.pass());
    EXPECT_TRUE(r.residual.is_zero());
    EXPECT_EQ(r.phi_minus, parse_ring("2 T^3/2 e + T^2 e", E3));

    minus.wall_crossing_gw = plus.wall_crossing_gw = parse_ring("T^3", E3);
    auto wrong = wall_crossing_report(minus, plus);
    EXPECT_FALSE(wrong.report.pass());
    EXPECT_EQ(wrong.residual, parse_ring("-T^3", E3));

    plus.wall_crossing_gw = A.zero();
    EXPECT_THROW(wall_crossing_report(minus, plus), ConfigError);
}
