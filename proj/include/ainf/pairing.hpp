#pragma once

// Infinity inner products phi_{p,q} built from negative cyclic cocycles, and their checks.

#include "hochschild.hpp"
#include "linalg.hpp"

namespace ainf {

template <class F>
void for_each_basis_word(int nb, int len, F&& f) {
    Word w(static_cast<std::size_t>(len), 0);
    if (len == 0) {
        f(w);
        return;
    }
    for (;;) {
        f(w);
        int pos = len - 1;
        while (pos >= 0 && ++w[static_cast<std::size_t>(pos)] == nb) w[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) return;
    }
}

class InfinityInnerProduct {
public:
    InfinityInnerProduct(const Algebra& A, CocycleTower T) : A_(&A), T_(std::move(T)) {}

    const Algebra& algebra() const { return *A_; }
    const CocycleTower& tower() const { return T_; }

    // F_0 on a chain word (module slot first); zero on unit tensor slots
    RingElement psi0(const Word& chain) const {
        if (has_unit_slot(*A_, chain)) return A_->zero();
        return T_.psi[0](chain);
    }

    // the cochain reading of F_0 with the argument x moved behind the word c
    RingElement Psi(const Word& c, int x) const {
        Word ch{x};
        ch.insert(ch.end(), c.begin(), c.end());
        RingElement v = psi0(ch);
        if (v.is_zero()) return v;
        return v.scaled(parity_sign(A_->sd(x) * A_->basis.sd(c)));
    }

    // phi(alpha v beta)(w) = (-1)^kappa Psi(beta w alpha, v) - Psi(alpha v beta, w)
    RingElement operator()(const Word& alpha, int v, const Word& beta, int w) const {
        const Basis& B = A_->basis;
        long kappa = (B.sd(alpha) + A_->sd(v)) * (B.sd(beta) + A_->sd(w));
        Word c1 = beta;
        c1.push_back(w);
        c1.insert(c1.end(), alpha.begin(), alpha.end());
        Word c2 = alpha;
        c2.push_back(v);
        c2.insert(c2.end(), beta.begin(), beta.end());
        return Psi(c1, v).scaled(parity_sign(kappa)) - Psi(c2, w);
    }

    // multilinear extension; slots hold alpha, v, beta in order and v sits at module_pos
    template <class R>
    R eval(const std::vector<const Element<R>*>& slots, std::size_t module_pos, const Element<R>& w) const {
        std::vector<const Element<R>*> xs = slots;
        xs.push_back(&w);
        R acc = A_->ring_zero<R>();
        for_each_word<R>(xs, [&](const Word& word, const R& c) {
            Word al(word.begin(), word.begin() + static_cast<long>(module_pos));
            Word be(word.begin() + static_cast<long>(module_pos) + 1, word.end() - 1);
            RingElement v = (*this)(al, word[module_pos], be, word.back());
            if (!v.is_zero()) acc += lift_to<R>(v) * c;
        });
        return acc;
    }

    // phi(x^p (mid) x^q)(y)
    template <class R>
    R pattern(const Element<R>& x, int p, const Element<R>& mid, int q, const Element<R>& y) const {
        std::vector<const Element<R>*> slots(static_cast<std::size_t>(p), &x);
        slots.push_back(&mid);
        for (int i = 0; i < q; ++i) slots.push_back(&x);
        return eval(slots, static_cast<std::size_t>(p), y);
    }

private:
    const Algebra* A_;
    CocycleTower T_;
};

struct PhiBuild {
    std::optional<InfinityInnerProduct> phi;
    Report validation;
};

inline PhiBuild build_phi(const Algebra& A, CocycleTower T, int lmax) {
    PhiBuild r;
    r.validation = validate_negative_cocycle(A, T, lmax);
    if (r.validation.pass()) r.phi.emplace(A, std::move(T));
    return r;
}

// phi(alpha v beta)(w) = -(-1)^kappa phi(beta w alpha)(v)
inline Report check_skew(const InfinityInnerProduct& phi, int lmax) {
    const Algebra& A = phi.algebra();
    const Basis& B = A.basis;
    Report rep;
    rep.name = "skew";
    for (int len = 1; len <= lmax; ++len)
        for_each_basis_word(B.size(), len + 1, [&](const Word& full) {
            for (int p = 0; p < len; ++p) {
                Word al(full.begin(), full.begin() + p);
                int v = full[static_cast<std::size_t>(p)];
                Word be(full.begin() + p + 1, full.end() - 1);
                int w = full.back();
                ++rep.checked;
                long kappa = (B.sd(al) + A.sd(v)) * (B.sd(be) + A.sd(w));
                RingElement r = phi(al, v, be, w) + phi(be, w, al, v).scaled(parity_sign(kappa));
                if (!r.is_zero())
                    rep.fail(B.word_name(al) + "|" + B.names[static_cast<std::size_t>(v)] + "|" + B.word_name(be) + " ; " +
                             B.names[static_cast<std::size_t>(w)] + " -> " + to_string(r));
            }
        });
    rep.note("L_max", std::to_string(lmax));
    return rep;
}

// On a cyclic word a_0..a_{L-1}: S(i,j) is phi with module slot a_i and argument a_j,
// read on the rotation ending at a_j and normalized by that rotation's Koszul sign.
inline RingElement closed_term(const InfinityInnerProduct& phi, const Word& a, std::size_t i, std::size_t j) {
    const Basis& B = phi.algebra().basis;
    std::size_t L = a.size();
    long head = B.sd(a, 0, j + 1), tail = B.sd(a, j + 1);
    Word r(a.begin() + static_cast<long>(j) + 1, a.end());
    r.insert(r.end(), a.begin(), a.begin() + static_cast<long>(j) + 1);
    std::size_t pos = (i + L - (j + 1) % L) % L;
    Word al(r.begin(), r.begin() + static_cast<long>(pos));
    Word be(r.begin() + static_cast<long>(pos) + 1, r.end() - 1);
    return phi(al, r[pos], be, r.back()).scaled(parity_sign(head * tail));
}

inline Report check_closed(const InfinityInnerProduct& phi, int lmax) {
    const Basis& B = phi.algebra().basis;
    Report rep;
    rep.name = "closed";
    for (int L = 3; L <= lmax + 1; ++L)
        for_each_basis_word(B.size(), L, [&](const Word& a) {
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i + 1; j < a.size(); ++j)
                    for (std::size_t k = j + 1; k < a.size(); ++k) {
                        ++rep.checked;
                        RingElement r = closed_term(phi, a, i, j) + closed_term(phi, a, j, k) + closed_term(phi, a, k, i);
                        if (!r.is_zero())
                            rep.fail(B.word_name(a) + " triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                                     ") -> " + to_string(r));
                    }
        });
    rep.note("L_max", std::to_string(lmax));
    return rep;
}

// F_0(1 | m2(a1,a2)) against phi_{0,0}(a1)(a2). The correction D collects the m1 and m0
// insertions of b(1 | a1, a2); it vanishes when m1 = 0 and m0 is a multiple of the unit.
inline Report trace_identity(const InfinityInnerProduct& phi) {
    const Algebra& A = phi.algebra();
    const Basis& B = A.basis;
    Report rep;
    rep.name = "trace_identity";
    if (!B.has_unit()) {
        rep.fail("no unit");
        return rep;
    }
    int u = B.unit;
    long literal_nonzero = 0;
    for (int a1 = 0; a1 < B.size(); ++a1)
        for (int a2 = 0; a2 < B.size(); ++a2) {
            ++rep.checked;
            RingElement lhs = A.zero();
            if (const auto* m2 = A.m<RingElement>({a1, a2}))
                for (const auto& [o, c] : *m2) lhs += phi.psi0({u, o}) * c;
            RingElement rhs = phi({}, a1, {}, a2);
            // interior m0 and m1 insertions of b(1 | a1 a2)
            RingElement D = A.zero();
            Word a{a1, a2};
            long pre = A.sd(u);
            for (std::size_t st = 0; st <= 2; ++st) {
                if (st > 0) pre += A.sd(a[st - 1]);
                for (int j : {0, 1}) {
                    if (st + static_cast<std::size_t>(j) > 2) continue;
                    Word block(a.begin() + static_cast<long>(st), a.begin() + static_cast<long>(st) + j);
                    const auto* val = A.m<RingElement>(block);
                    if (!val) continue;
                    for (const auto& [o, c] : *val) {
                        Word r{u};
                        r.insert(r.end(), a.begin(), a.begin() + static_cast<long>(st));
                        r.push_back(o);
                        r.insert(r.end(), a.begin() + static_cast<long>(st) + j, a.end());
                        D += (phi.psi0(r) * c).scaled(parity_sign(pre));
                    }
                }
            }
            RingElement literal = lhs - rhs;
            if (!literal.is_zero()) ++literal_nonzero;
            RingElement corrected = literal - D;
            if (!corrected.is_zero())
                rep.fail("(" + B.names[static_cast<std::size_t>(a1)] + "," + B.names[static_cast<std::size_t>(a2)] + ") literal " +
                         to_string(literal) + " correction " + to_string(D));
        }
    rep.note("literal_residual_pairs", std::to_string(literal_nonzero));
    return rep;
}

template <class R>
Element<R> m_of_power(const Algebra& A, const Element<R>& b, int k) {
    return apply_m(A, std::vector<Element<R>>(static_cast<std::size_t>(k), b));
}

// phi(b..b [slot] b..b)(arg) with y substituted at tensor position r of the left (side 0) or right (side 1) word
template <class R>
R phi_with_y(const InfinityInnerProduct& phi, const Element<R>& b, int p, const Element<R>& mid, int q, const Element<R>& y,
             int side, int r, const Element<R>& arg) {
    std::vector<const Element<R>*> slots(static_cast<std::size_t>(p), &b);
    slots.push_back(&mid);
    for (int i = 0; i < q; ++i) slots.push_back(&b);
    std::size_t at = side == 0 ? static_cast<std::size_t>(r) : static_cast<std::size_t>(p + 1 + r);
    slots[at] = &y;
    return phi.eval(slots, static_cast<std::size_t>(p), arg);
}

struct WeakCyclicTerms {
    int N = 0;
    RingElement lhs, s_inside, s_left, s_right, residual;
};

// N * sum phi(b^p m_k(b^k) b^q)(y) = S_inside + (-1)^{|y|'} S_left + S_right, for |b| = 1 and y of one parity
inline std::vector<WeakCyclicTerms> weak_cyclic_terms(const Algebra& A, const InfinityInnerProduct& phi, const Element<RingElement>& b,
                                                      const Element<RingElement>& y, int nmax) {
    if (!b.empty()) {
        auto nu = valuation(b);
        if (sgn(*nu) <= 0) throw ConfigError("weak_cyclic_check: b must have positive valuation");
    }
    std::optional<int> ypar;
    for (const auto& [i, c] : y) {
        int par = ((A.sd(i) % 2) + 2) % 2;
        if (ypar && *ypar != par) throw ConfigError("weak_cyclic_check: y must have a single parity");
        ypar = par;
    }
    int ysign = ypar.value_or(0) ? -1 : 1;
    std::map<int, Element<RingElement>> mk;
    auto m_pow = [&](int k) -> const Element<RingElement>& {
        auto it = mk.find(k);
        if (it == mk.end()) it = mk.emplace(k, m_of_power(A, b, k)).first;
        return it->second;
    };
    std::vector<WeakCyclicTerms> out;
    for (int N = 0; N <= nmax; ++N) {
        WeakCyclicTerms t{N, A.zero(), A.zero(), A.zero(), A.zero(), A.zero()};
        for (int p = 0; p <= N; ++p)
            for (int q = 0; p + q <= N; ++q) {
                int k = N - p - q;
                const auto& m = m_pow(k);
                if (!m.empty()) t.lhs += phi.pattern(b, p, m, q, y);
                for (int r = 0; r < k; ++r) {
                    std::vector<Element<RingElement>> in(static_cast<std::size_t>(k), b);
                    in[static_cast<std::size_t>(r)] = y;
                    auto my = apply_m(A, in);
                    if (!my.empty()) t.s_inside += phi.pattern(b, p, my, q, b);
                }
                if (m.empty()) continue;
                for (int r = 0; r < p; ++r) t.s_left += phi_with_y(phi, b, p, m, q, y, 0, r, b);
                for (int r = 0; r < q; ++r) t.s_right += phi_with_y(phi, b, p, m, q, y, 1, r, b);
            }
        t.lhs = t.lhs.scaled(Rational(N));
        t.residual = t.lhs - t.s_inside - t.s_left.scaled(ysign) - t.s_right;
        out.push_back(std::move(t));
    }
    return out;
}

inline Report weak_cyclic_check(const Algebra& A, const InfinityInnerProduct& phi, const Element<RingElement>& b,
                                const Element<RingElement>& y, int nmax) {
    Report rep;
    rep.name = "weak_cyclic";
    for (const auto& t : weak_cyclic_terms(A, phi, b, y, nmax)) {
        ++rep.checked;
        if (!t.residual.is_zero()) rep.fail("N=" + std::to_string(t.N) + " residual " + to_string(t.residual));
    }
    rep.note("N_max", std::to_string(nmax));
    rep.note("E_max", A.emax.get_str());
    return rep;
}

struct Nondegeneracy {
    bool nondegenerate = false;
    std::size_t cohomology_dim = 0;
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> representatives;  // coordinates in the basis
    Matrix pairing;
};

// valuation-0 part with e set to 1
inline Rational leading_scalar(const RingElement& c) {
    Rational s(0);
    for (const auto& [m, q] : c.terms())
        if (sgn(m.valuation()) == 0) s += q;
    return s;
}

inline Nondegeneracy homological_nondegeneracy(const Algebra& A, const InfinityInnerProduct& phi) {
    std::size_t n = static_cast<std::size_t>(A.basis.size());
    // column z of M is m_{1,(0,0)}(e_z)
    Matrix M = zero_matrix(n, n);
    for (std::size_t z = 0; z < n; ++z)
        for (const auto& [o, c] : m1_zero(A, basis_element(static_cast<int>(z), A.scalar(1))))
            M[static_cast<std::size_t>(o)][z] = leading_scalar(c);
    Matrix M2 = multiply(M, M);
    for (const auto& row : M2)
        for (const auto& x : row)
            if (sgn(x) != 0) throw std::logic_error("homological_nondegeneracy: m_{1,(0,0)} does not square to zero");
    auto ker = nullspace(M, n);
    // image columns, then kernel vectors greedily independent modulo everything chosen so far
    Matrix span;
    auto add_rows = [&](const std::vector<Rational>& v) {
        Matrix t = span;
        t.push_back(v);
        if (rank(t) > span.size()) {
            span.push_back(v);
            return true;
        }
        return false;
    };
    for (std::size_t z = 0; z < n; ++z) {
        std::vector<Rational> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = M[i][z];
        bool nz = false;
        for (const auto& x : col) nz = nz || sgn(x) != 0;
        if (nz) add_rows(col);
    }
    Nondegeneracy r;
    for (const auto& v : ker)
        if (add_rows(v)) r.representatives.push_back(v);
    r.cohomology_dim = r.representatives.size();
    std::size_t h = r.cohomology_dim;
    r.pairing = zero_matrix(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            Rational s(0);
            for (std::size_t a = 0; a < n; ++a) {
                if (sgn(r.representatives[i][a]) == 0) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (sgn(r.representatives[j][b]) == 0) continue;
                    s += r.representatives[i][a] * r.representatives[j][b] *
                         leading_scalar(phi({}, static_cast<int>(a), {}, static_cast<int>(b)));
                }
            }
            r.pairing[i][j] = s;
        }
    r.rank = rank(r.pairing);
    r.nondegenerate = h > 0 && r.rank == h;
    return r;
}

}  // namespace ainf
