#pragma once

// Reference algebras, twisting by an A-infinity isomorphism, and seeded random data.

#include "potential.hpp"

#include <random>

namespace ainf {

// Build an algebra from assembled structure constants: every coefficient monomial
// T^lambda e^m is filed under the monoid element (lambda, 2m).
inline Algebra make_algebra(std::string name, Basis basis, VarConfig vars, Rational emax, const std::map<Word, Element<RingElement>>& table,
                            bool complete = true, int table_arity = 0) {
    Algebra A;
    A.name = std::move(name);
    A.basis = std::move(basis);
    A.vars = std::move(vars);
    A.emax = emax;
    A.complete = complete;
    A.table_arity = table_arity;
    auto monoid_index = [&](const Rational& lambda, int mu) {
        for (std::size_t i = 0; i < A.monoid.size(); ++i)
            if (A.monoid[i].lambda == lambda && A.monoid[i].mu == mu) return static_cast<int>(i);
        A.monoid.push_back({lambda, mu});
        return static_cast<int>(A.monoid.size()) - 1;
    };
    for (const auto& [w, el] : table) {
        std::map<int, OpEntry> by_beta;
        for (const auto& [o, c] : el)
            for (const auto& [m, q] : c.terms()) {
                int beta = monoid_index(m.lambda, 2 * m.e);
                Monomial rest = m;
                rest.lambda = 0;
                rest.e = 0;
                auto& en = by_beta[beta];
                en.beta = beta;
                en.inputs = w;
                add_term(en.output, o, RingElement::monomial(rest, q, emax));
            }
        for (auto& [b, en] : by_beta) A.entries.push_back(std::move(en));
    }
    if (!complete) {
        for (const auto& [w, el] : table) A.table_arity = std::max(A.table_arity, static_cast<int>(w.size()));
    }
    A.finalize();
    return A;
}

// m2(a,b) = (-1)^{|a|} a.b for a graded algebra given by its product table
inline std::map<Word, Element<RingElement>> dga_table(const Basis& B, const Rational& emax,
                                                      const std::vector<std::tuple<int, int, int, long>>& products,
                                                      const std::vector<std::tuple<int, int, long>>& differential = {}) {
    std::map<Word, Element<RingElement>> t;
    for (const auto& [a, b, o, c] : products)
        add_term(t[{a, b}], o, RingElement::constant(Rational(c * parity_sign(B.deg[static_cast<std::size_t>(a)])), emax));
    for (const auto& [a, o, c] : differential) add_term(t[{a}], o, RingElement::constant(Rational(c), emax));
    return t;
}

inline Basis e1_basis() {
    Basis B;
    B.add("1", 0);
    B.add("x", 1);
    B.set_unit(0);
    return B;
}

inline std::map<Word, Element<RingElement>> e1_table(const Rational& emax) {
    return dga_table(e1_basis(), emax, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}});
}

inline Algebra e1(const Rational& emax) { return make_algebra("E1", e1_basis(), VarConfig{0, {0}}, emax, e1_table(emax)); }

// E1 with curvature m0 = T e 1
inline Algebra e2(const Rational& emax) {
    auto t = e1_table(emax);
    add_term(t[{}], 0, RingElement::monomial(T_pow(1, 1), 1, emax));
    return make_algebra("E2", e1_basis(), VarConfig{0, {0}}, emax, t);
}

// cohomology of the 2-torus: 1, a, b, ab
inline Basis torus_basis() {
    Basis B;
    B.add("1", 0);
    B.add("a", 1);
    B.add("b", 1);
    B.add("ab", 2);
    B.set_unit(0);
    return B;
}

inline std::map<Word, Element<RingElement>> torus_table(const Rational& emax, bool curved) {
    std::vector<std::tuple<int, int, int, long>> prod;
    for (int i = 0; i < 4; ++i) {
        prod.emplace_back(0, i, i, 1);
        if (i) prod.emplace_back(i, 0, i, 1);
    }
    prod.emplace_back(1, 2, 3, 1);
    prod.emplace_back(2, 1, 3, -1);
    auto t = dga_table(torus_basis(), emax, prod);
    if (curved) add_term(t[{}], 0, RingElement::monomial(T_pow(1, 1), 1, emax));
    return t;
}

// cochains of the interval (1, u, g = du; uu = u, gu = g) tensored with E1
inline Basis interval_basis() {
    Basis B;
    B.add("1", 0);
    B.add("u", 0);
    B.add("g", 1);
    B.add("x", 1);
    B.add("ux", 1);
    B.add("gx", 2);
    B.set_unit(0);
    return B;
}

inline std::map<Word, Element<RingElement>> interval_table(const Rational& emax, bool curved) {
    // factors: interval part {1,u,g} (deg 0,0,1), E1 part {1,x} (deg 0,1)
    struct F {
        int i, e;
    };
    const F f[6] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    const int ideg[3] = {0, 0, 1};
    auto imul = [](int a, int b) -> int {  // -1: zero
        if (a == 0) return b;
        if (b == 0) return a;
        if (a == 1 && b == 1) return 1;
        if (a == 2 && b == 1) return 2;
        return -1;
    };
    auto index = [&](int i, int e) {
        for (int k = 0; k < 6; ++k)
            if (f[k].i == i && f[k].e == e) return k;
        return -1;
    };
    std::vector<std::tuple<int, int, int, long>> prod;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int ii = imul(f[a].i, f[b].i);
            if (ii < 0 || f[a].e + f[b].e > 1) continue;
            long sign = parity_sign(static_cast<long>(f[a].e) * ideg[f[b].i]);
            prod.emplace_back(a, b, index(ii, f[a].e + f[b].e), sign);
        }
    // d(u) = g, d(ux) = gx
    auto t = dga_table(interval_basis(), emax, prod, {{1, 2, 1}, {4, 5, 1}});
    if (curved) add_term(t[{}], 0, RingElement::monomial(T_pow(1, 1), 1, emax));
    return t;
}

// ------------------------------------------------------------- A-infinity isomorphisms

// F = id + higher components (arity >= 2), all of shifted degree 0
struct Morphism {
    std::map<Word, Element<RingElement>> higher;
    int max_arity() const {
        int k = 1;
        for (const auto& [w, e] : higher) k = std::max(k, static_cast<int>(w.size()));
        return k;
    }
};

// F-hat on one word: sum over splittings into consecutive blocks
inline void morphism_hat(const Morphism& F, const Word& w, const RingElement& coeff, LinComb<RingElement>& out) {
    int K = F.max_arity();
    std::function<void(std::size_t, Word&, const RingElement&)> rec = [&](std::size_t pos, Word& pre, const RingElement& c) {
        if (pos == w.size()) {
            add_term(out, pre, c);
            return;
        }
        pre.push_back(w[pos]);
        rec(pos + 1, pre, c);
        pre.pop_back();
        for (std::size_t L = 2; L <= static_cast<std::size_t>(K) && pos + L <= w.size(); ++L) {
            auto it = F.higher.find(Word(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos + L)));
            if (it == F.higher.end()) continue;
            for (const auto& [o, oc] : it->second) {
                RingElement cc = c * oc;
                if (cc.is_zero()) continue;
                pre.push_back(o);
                rec(pos + L, pre, cc);
                pre.pop_back();
            }
        }
    };
    Word pre;
    rec(0, pre, coeff);
}

inline LinComb<RingElement> morphism_hat(const Morphism& F, const LinComb<RingElement>& x) {
    LinComb<RingElement> out;
    for (const auto& [w, c] : x) morphism_hat(F, w, c, out);
    return out;
}

// F-hat^{-1} = sum_j (-G)^j with G = F-hat - id, which strictly shortens words
inline LinComb<RingElement> morphism_hat_inverse(const Morphism& F, const LinComb<RingElement>& x) {
    LinComb<RingElement> out = x, cur = x;
    int sign = 1;
    while (!cur.empty()) {
        LinComb<RingElement> next = morphism_hat(F, cur);
        for (const auto& [w, c] : cur) add_term(next, w, -c);
        sign = -sign;
        cur = std::move(next);
        add_signed(out, cur, sign);
    }
    return out;
}

// components of F^{-1} up to arity K
inline Morphism inverse_morphism(const Algebra& A, const Morphism& F, int K) {
    Morphism H;
    for (int n = 2; n <= K; ++n)
        for_each_basis_word(A.basis.size(), n, [&](const Word& w) {
            auto x = morphism_hat_inverse(F, LinComb<RingElement>{{w, A.scalar(1)}});
            for (const auto& [u, c] : x)
                if (u.size() == 1) add_term(H.higher[w], u[0], c);
            if (H.higher[w].empty()) H.higher.erase(w);
        });
    return H;
}

// the algebra structure F m-hat F^{-1} transported along F, all arities up to K
inline Algebra twist(const Algebra& A, const Morphism& F, int K, std::string name) {
    std::map<Word, Element<RingElement>> table;
    for (int n = 0; n <= K; ++n)
        for_each_basis_word(A.basis.size(), n, [&](const Word& w) {
            auto x = morphism_hat_inverse(F, LinComb<RingElement>{{w, A.scalar(1)}});
            auto z = morphism_hat(F, coderivation(A, x));
            for (const auto& [u, c] : z)
                if (u.size() == 1) add_term(table[w], u[0], c);
            if (table[w].empty()) table.erase(w);
        });
    return make_algebra(std::move(name), A.basis, A.vars, A.emax, table);
}

// F_*(b) = sum_k F_k(b, ..., b)
inline Element<RingElement> push_element(const Algebra& A, const Morphism& F, const Element<RingElement>& b) {
    Element<RingElement> out = b;
    for (const auto& [w, v] : F.higher) {
        RingElement c = A.scalar(1);
        for (int i : w) {
            auto it = b.find(i);
            if (it == b.end()) {
                c = A.zero();
                break;
            }
            c *= it->second;
        }
        if (c.is_zero()) continue;
        for (const auto& [o, oc] : v) add_term(out, o, oc * c);
    }
    return out;
}

inline Element<PathRingElement> push_element(const Algebra& A, const Morphism& F, const Element<PathRingElement>& b) {
    Element<PathRingElement> out = b;
    for (const auto& [w, v] : F.higher) {
        PathRingElement c = A.ring_one<PathRingElement>();
        for (int i : w) {
            auto it = b.find(i);
            if (it == b.end()) {
                c = A.ring_zero<PathRingElement>();
                break;
            }
            c *= it->second;
        }
        if (c.is_zero()) continue;
        for (const auto& [o, oc] : v) add_term(out, o, extend_path(oc) * c);
    }
    return out;
}

inline Element<RingElement> specialize_element(const Element<PathRingElement>& x, const Rational& t0) {
    Element<RingElement> out;
    for (const auto& [i, c] : x) add_term(out, i, specialize(c, t0));
    return out;
}

// Induced map on Hochschild chains: H(tail, v, head) | H-hat(middle), with the rotation sign of b.
inline LinComb<RingElement> push_chain(const Algebra& A, const Morphism& H, const Word& ch) {
    LinComb<RingElement> out;
    int v = ch[0];
    Word a(ch.begin() + 1, ch.end());
    std::size_t k = a.size();
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = 0; i + j <= k; ++j) {
            Word block(a.end() - static_cast<long>(i), a.end());
            block.push_back(v);
            block.insert(block.end(), a.begin(), a.begin() + static_cast<long>(j));
            Element<RingElement> val;
            if (block.size() == 1) {
                val = basis_element(v, A.scalar(1));
            } else {
                auto it = H.higher.find(block);
                if (it == H.higher.end()) continue;
                val = it->second;
            }
            long e = A.basis.sd(a, k - i) * (A.sd(v) + A.basis.sd(a, 0, k - i));
            Word mid(a.begin() + static_cast<long>(j), a.end() - static_cast<long>(i));
            LinComb<RingElement> midimg;
            morphism_hat(H, mid, A.scalar(1), midimg);
            for (const auto& [o, oc] : val)
                for (const auto& [mw, mc] : midimg) {
                    Word r{o};
                    r.insert(r.end(), mw.begin(), mw.end());
                    add_term(out, std::move(r), (oc * mc).scaled(parity_sign(e)));
                }
        }
    return out;
}

// psi' = psi o H_* for H : A' -> A
inline Cochain pull_cochain(const Algebra& target, const Morphism& H, Cochain psi) {
    const Algebra* Ap = &target;
    return memoize([Ap, H, psi = std::move(psi)](const Word& w) {
        if (has_unit_slot(*Ap, w)) return Ap->zero();
        return evaluate(*Ap, psi, reduce(*Ap, push_chain(*Ap, H, w)));
    });
}

inline std::map<Word, RingElement> tabulate(const Algebra& A, const Cochain& f, int lmax) {
    std::map<Word, RingElement> t;
    for_each_reduced_word(A, lmax, [&](const Word& w) {
        RingElement v = f(w);
        if (!v.is_zero()) t.emplace(w, v);
    });
    return t;
}

// --------------------------------------------------------------------- random data

// mt19937_64 is specified bit-for-bit by the standard; the helpers below only use
// its raw output so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    int below(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
    int between(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(int num, int den) { return below(den) < num; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
    }

private:
    std::mt19937_64 g_;
};

inline Rational random_scalar(Rng& r) {
    static const std::vector<long> nums{-3, -2, -1, 1, 2, 3};
    long d = r.between(1, 3);
    return make_rational(r.pick(nums), d);
}

// random ring element with monomials of the given coefficient degree and valuation in [vmin, vmax] (steps of 1/2)
inline RingElement random_ring(Rng& r, const Algebra& A, int coeff_degree, const Rational& vmin, const Rational& vmax, int max_terms = 3) {
    std::vector<RingElement::Term> terms;
    int n = r.between(1, max_terms);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        Rational span = (vmax - vmin) * 2;
        mpz_class steps = span.get_num() / span.get_den();
        m.lambda = vmin + make_rational(r.between(0, static_cast<int>(steps.get_si())), 2);
        // trade some T-energy for s or t0 when they have degree 0
        if (A.vars.deg_s == 0 && m.lambda >= 1 && r.chance(1, 4)) {
            m.lambda -= 1;
            m.s = 1;
        } else if (!A.vars.deg_t.empty() && A.vars.deg_t[0] == 0 && m.lambda >= 1 && r.chance(1, 4)) {
            m.lambda -= 1;
            m.t = {1};
        }
        if (coeff_degree % 2 != 0) return A.zero();
        m.e = coeff_degree / 2;
        terms.emplace_back(m, random_scalar(r));
    }
    return RingElement(std::move(terms), A.emax);
}

// random element of total degree d with valuation >= vmin
inline Element<RingElement> random_element(Rng& r, const Algebra& A, int d, const Rational& vmin, const Rational& vmax) {
    Element<RingElement> x;
    std::vector<int> parity_ok;
    for (int i = 0; i < A.basis.size(); ++i)
        if ((d - A.basis.deg[static_cast<std::size_t>(i)]) % 2 == 0) parity_ok.push_back(i);
    if (parity_ok.empty()) return x;
    int n = r.between(1, static_cast<int>(std::min<std::size_t>(parity_ok.size(), 3)));
    for (int k = 0; k < n; ++k) {
        int i = r.pick(parity_ok);
        add_term(x, i, random_ring(r, A, d - A.basis.deg[static_cast<std::size_t>(i)], vmin, vmax, 2));
    }
    return x;
}

// random chain: up to 4 words with 1 + k <= len slots, random coefficients; tensor slots
// avoid the unit unless `reduced` is false
inline LinComb<RingElement> random_chain(Rng& r, const Algebra& A, int max_len, bool reduced) {
    LinComb<RingElement> x;
    std::vector<int> tensor;
    for (int b = 0; b < A.basis.size(); ++b)
        if (!reduced || b != A.basis.unit) tensor.push_back(b);
    int n = r.between(1, 4);
    for (int i = 0; i < n; ++i) {
        int len = r.between(1, max_len);
        Word w{r.below(A.basis.size())};
        for (int j = 1; j < len; ++j) w.push_back(r.pick(tensor));
        RingElement c(std::vector<RingElement::Term>{{T_pow(make_rational(r.between(0, 2), 2), r.between(-1, 1)), random_scalar(r)}}, A.emax);
        add_term(x, std::move(w), c);
    }
    return x;
}

inline LinComb<RingElement> random_reduced_chain(Rng& r, const Algebra& A, int max_len) { return random_chain(r, A, max_len, true); }

// chain degree: |v| + sum (|a_i| - 1)
inline int chain_degree(const Algebra& A, const Word& w) {
    int d = A.basis.deg[static_cast<std::size_t>(w[0])];
    for (std::size_t i = 1; i < w.size(); ++i) d += A.basis.deg[static_cast<std::size_t>(w[i])] - 1;
    return d;
}

// homogeneous random functional of degree delta (coefficient degree minus chain degree):
// each reduced word with at most lmax slots and the right parity gets a value with probability 1/density
inline std::map<Word, RingElement> random_functional(Rng& r, const Algebra& A, int delta, int lmax, int density = 3) {
    std::map<Word, RingElement> t;
    for_each_reduced_word(A, lmax, [&](const Word& w) {
        int cd = chain_degree(A, w);
        if (((delta + cd) % 2 + 2) % 2 != 0 || !r.chance(1, density)) return;
        int e = (delta + cd) / 2;
        t.emplace(w, RingElement(std::vector<RingElement::Term>{{T_pow(make_rational(r.between(0, 2), 2), e), random_scalar(r)}}, A.emax));
    });
    return t;
}

// psi_i = eta_i o b - eta_{i+1} o B, psi_D = eta_D o b, with eta_i of degree d + 2i - 1
inline CocycleTower random_coboundary_tower(Rng& r, const Algebra& A, int depth, int d, int lmax) {
    std::vector<Cochain> eta;
    for (int i = 0; i <= depth; ++i) eta.push_back(table_cochain(random_functional(r, A, d + 2 * i - 1, lmax), A.emax));
    return coboundary_tower(A, eta);
}

// positive data tau_0 = eta_0 o b - eta_1 o B, tau_1 = eta_1 o b; the tower is its B* image
inline std::vector<Cochain> random_positive_data(Rng& r, const Algebra& A, int d, int lmax) {
    std::vector<Cochain> eta{table_cochain(random_functional(r, A, d, lmax), A.emax),
                             table_cochain(random_functional(r, A, d + 2, lmax), A.emax)};
    auto T = coboundary_tower(A, eta);
    return T.psi;
}

}  // namespace ainf
