#pragma once

// The reference data behind the shipped corpus: E1, E2, the torus, their Poincare towers,
// twisted versions transported along explicit A-infinity isomorphisms, and the gauge path.

#include "document.hpp"

namespace ainf::reference {

// psi_0(1 | x) = 1
inline std::map<Word, RingElement> poincare_e1(const Algebra& A) { return {{{0, 1}, A.scalar(1)}}; }

// psi_0(1 | ab) = psi_0(b | a) = 1
inline std::map<Word, RingElement> poincare_torus(const Algebra& A) { return {{{0, 3}, A.scalar(1)}, {{2, 1}, A.scalar(1)}}; }

// pulled back from E1 along u -> 1, g -> 0
inline std::map<Word, RingElement> poincare_interval(const Algebra& A) {
    std::map<Word, RingElement> t;
    for (int v : {0, 1})
        for (int a : {3, 4}) t[{v, a}] = A.scalar(1);
    return t;
}

inline Algebra torus(const Rational& emax, bool curved = true) {
    return make_algebra(curved ? "torus" : "torus_flat", torus_basis(), VarConfig{0, {0}}, emax, torus_table(emax, curved));
}

inline Algebra interval(const Rational& emax, bool curved = true) {
    return make_algebra(curved ? "interval" : "interval_flat", interval_basis(), VarConfig{0, {0}}, emax, interval_table(emax, curved));
}

inline Morphism torus_twist(const Rational& emax) {
    Morphism F;
    add_term(F.higher[{1, 2}], 1, parse_ring("T", emax));
    add_term(F.higher[{2, 2}], 2, parse_ring("-1/2 T", emax));
    add_term(F.higher[{3, 1}], 3, parse_ring("T", emax));
    return F;
}

inline Morphism interval_twist(const Rational& emax) {
    Morphism F;
    add_term(F.higher[{3, 3}], 3, parse_ring("T", emax));
    add_term(F.higher[{2, 3}], 4, parse_ring("T", emax));
    add_term(F.higher[{1, 3}], 1, parse_ring("2 T", emax));
    add_term(F.higher[{4, 1}], 1, parse_ring("T", emax));
    return F;
}

// arity bound for twisting by components of energy >= 1
inline int twist_arity(const Rational& emax) {
    mpz_class f = emax.get_num() / emax.get_den();
    return 2 + static_cast<int>(f.get_si());
}

struct Twisted {
    Algebra algebra;
    Morphism F, H;  // F : base -> twisted, H = F^{-1}
    std::map<Word, RingElement> tower;
};

// the twisted algebra and the base tower transported to it, tabulated on words
// of up to lmax slots (longer words carry energy above E_max)
inline Twisted twisted(const Algebra& base, const Morphism& F, const std::map<Word, RingElement>& base_tower, const std::string& name) {
    int K = twist_arity(base.emax);
    Twisted t{twist(base, F, K, name), F, inverse_morphism(base, F, K), {}};
    Cochain psi = table_cochain(base_tower, base.emax);
    t.tower = tabulate(t.algebra, pull_cochain(t.algebra, t.H, psi), K);
    return t;
}

inline Twisted twisted_torus(const Rational& emax) {
    auto base = torus(emax);
    return twisted(base, torus_twist(emax), poincare_torus(base), "torus_twisted");
}

inline Twisted twisted_interval(const Rational& emax) {
    auto base = interval(emax);
    return twisted(base, interval_twist(emax), poincare_interval(base), "interval_twisted");
}

// b_t = (1 + t) T^1/2 g + 2 T^1/2 x on the interval algebra: pointwise weak MC with c = T e,
// velocity m1-exact; pushed to the twisted algebra
inline Element<PathRingElement> gauge_path(const Twisted& tw) {
    const Rational& E = tw.algebra.emax;
    Element<PathRingElement> b;
    b[2] = parse_series<Poly>("(1 + t) T^1/2", E);
    b[3] = parse_series<Poly>("2 T^1/2", E);
    auto base = interval(E);
    return push_element(base, tw.F, b);
}

// m1_{(0,0)} on the interval algebra: u -> g, ux -> gx
inline Homotopy interval_homotopy(const Algebra& A) {
    return {{2, basis_element(1, A.scalar(1))}, {5, basis_element(4, A.scalar(1))}};
}

}  // namespace ainf::reference
