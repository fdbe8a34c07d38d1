#pragma once

// Hochschild chains with coefficients in the diagonal bimodule. A chain word is
// (v, a1, ..., ak): the module slot first, then the tensor slots.

#include "algebra.hpp"

#include <memory>

namespace ainf {

template <class R>
struct Chain {
    LinComb<R> terms;
    bool reduced = false;
};

inline bool has_unit_slot(const Algebra& A, const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == A.basis.unit) return true;
    return false;
}

template <class R>
LinComb<R> reduce(const Algebra& A, LinComb<R> x) {
    if (!A.basis.has_unit()) return x;
    for (auto it = x.begin(); it != x.end();) {
        if (has_unit_slot(A, it->first))
            it = x.erase(it);
        else
            ++it;
    }
    return x;
}

template <class R>
Chain<R> make_reduced(const Algebra& A, LinComb<R> x) {
    return Chain<R>{reduce(A, std::move(x)), true};
}

// b on one chain word, unreduced
template <class R>
void hochschild_b_word(const Algebra& A, const Word& ch, const R& coeff, LinComb<R>& out, const SignMutation* mut = nullptr) {
    const Basis& B = A.basis;
    int v = ch[0];
    Word a(ch.begin() + 1, ch.end());
    std::size_t k = a.size();
    long sv = A.sd(v);
    // wrap-around: m(a[k-i:], v, a[:j]) absorbs the module slot
    for (int ar : A.arities_upto(static_cast<int>(k) + 1)) {
        if (ar == 0) continue;
        std::size_t span = static_cast<std::size_t>(ar - 1);
        for (std::size_t i = 0; i <= span; ++i) {
            std::size_t j = span - i;
            if (i + j > k) continue;
            Word block(a.end() - static_cast<long>(i), a.end());
            block.push_back(v);
            block.insert(block.end(), a.begin(), a.begin() + static_cast<long>(j));
            const auto* val = A.m<R>(block);
            if (!val) continue;
            long e = B.sd(a, k - i) * (sv + B.sd(a, 0, k - i));
            int sign = parity_sign(e) * (mut ? mut->wrap_sign(ar, static_cast<int>(i)) : 1);
            for (const auto& [o, c] : *val) {
                Word r{o};
                r.insert(r.end(), a.begin() + static_cast<long>(j), a.end() - static_cast<long>(i));
                add_term(out, std::move(r), (coeff * c).scaled(sign));
            }
        }
    }
    // interior: m_j on a[st:st+j], including m0 insertions
    for (int j : A.arities_upto(static_cast<int>(k))) {
        long pre = sv;
        for (std::size_t st = 0; st + static_cast<std::size_t>(j) <= k; ++st) {
            if (st > 0) pre += A.sd(a[st - 1]);
            Word block(a.begin() + static_cast<long>(st), a.begin() + static_cast<long>(st) + j);
            const auto* val = A.m<R>(block);
            if (!val) continue;
            int sign = parity_sign(pre) * (mut ? mut->interior_sign(j, static_cast<int>(st)) : 1);
            for (const auto& [o, c] : *val) {
                Word r{v};
                r.insert(r.end(), a.begin(), a.begin() + static_cast<long>(st));
                r.push_back(o);
                r.insert(r.end(), a.begin() + static_cast<long>(st) + j, a.end());
                add_term(out, std::move(r), (coeff * c).scaled(sign));
            }
        }
    }
}

template <class R>
LinComb<R> hochschild_b(const Algebra& A, const LinComb<R>& x, const SignMutation* mut = nullptr) {
    LinComb<R> out;
    for (const auto& [w, c] : x) hochschild_b_word(A, w, c, out, mut);
    return out;
}

template <class R>
Chain<R> hochschild_b(const Algebra& A, const Chain<R>& x, const SignMutation* mut = nullptr) {
    auto out = hochschild_b(A, x.terms, mut);
    return Chain<R>{x.reduced ? reduce(A, std::move(out)) : std::move(out), x.reduced};
}

// b' = the bar differential, the module slot read as an ordinary tensor factor
template <class R>
LinComb<R> bar_differential(const Algebra& A, const LinComb<R>& x, const SignMutation* mut = nullptr) {
    return coderivation(A, x, mut);
}

template <class R>
void cyclic_t_word(const Algebra& A, const Word& w, const R& c, LinComb<R>& out) {
    if (w.empty()) return;
    long e = A.sd(w.back()) * A.basis.sd(w, 0, w.size() - 1);
    Word r{w.back()};
    r.insert(r.end(), w.begin(), w.end() - 1);
    add_term(out, std::move(r), c.scaled(parity_sign(e)));
}

template <class R>
LinComb<R> cyclic_t(const Algebra& A, const LinComb<R>& x) {
    LinComb<R> out;
    for (const auto& [w, c] : x) cyclic_t_word(A, w, c, out);
    return out;
}

template <class R>
void operator_N_word(const Algebra& A, const Word& w, const R& c, LinComb<R>& out) {
    Word cur = w;
    int sign = 1;
    for (std::size_t r = 0; r < w.size(); ++r) {
        add_term(out, cur, c.scaled(sign));
        sign *= parity_sign(A.sd(cur.back()) * A.basis.sd(cur, 0, cur.size() - 1));
        std::rotate(cur.begin(), cur.end() - 1, cur.end());
    }
}

template <class R>
LinComb<R> operator_N(const Algebra& A, const LinComb<R>& x) {
    LinComb<R> out;
    for (const auto& [w, c] : x) operator_N_word(A, w, c, out);
    return out;
}

// B(v|a1..ak) = sum of signed rotations of (v,a1,..,ak) behind a unit module slot
template <class R>
Chain<R> connes_B_reduced(const Algebra& A, const Chain<R>& x) {
    if (!x.reduced) throw ConfigError("connes_B_reduced: input chain is not reduced (unreduced B is not supported)");
    if (!A.basis.has_unit()) throw ConfigError("connes_B_reduced: algebra has no unit");
    LinComb<R> rot;
    for (const auto& [w, c] : x.terms) operator_N_word(A, w, c, rot);
    LinComb<R> out;
    for (auto& [w, c] : rot) {
        Word r{A.basis.unit};
        r.insert(r.end(), w.begin(), w.end());
        if (!has_unit_slot(A, r)) add_term(out, std::move(r), c);
    }
    return Chain<R>{std::move(out), true};
}

// Residuals of b^2, b'^2, B^2, bB + Bb, b(1-t) - (1-t)b', b'N - Nb on one reduced chain.
// b, B and their compositions live in the reduced complex; the t-relations are unreduced.
struct ChainIdentityResiduals {
    std::vector<std::pair<std::string, LinComb<RingElement>>> parts;
};

inline ChainIdentityResiduals chain_identities(const Algebra& A, const LinComb<RingElement>& x, const SignMutation* mut = nullptr) {
    ChainIdentityResiduals r;
    Chain<RingElement> c = make_reduced(A, x);
    auto bc = hochschild_b(A, c, mut);
    auto Bc = connes_B_reduced(A, c);
    r.parts.emplace_back("b^2", hochschild_b(A, bc, mut).terms);
    r.parts.emplace_back("b'^2", bar_differential(A, bar_differential(A, x, mut), mut));
    r.parts.emplace_back("B^2", connes_B_reduced(A, Bc).terms);
    LinComb<RingElement> bB = hochschild_b(A, Bc, mut).terms;
    add_signed(bB, connes_B_reduced(A, bc).terms, 1);
    r.parts.emplace_back("bB+Bb", std::move(bB));
    auto one_minus_t = [&](const LinComb<RingElement>& y) {
        LinComb<RingElement> out = y;
        add_signed(out, cyclic_t(A, y), -1);
        return out;
    };
    LinComb<RingElement> lhs = hochschild_b(A, one_minus_t(x), mut);
    add_signed(lhs, one_minus_t(bar_differential(A, x, mut)), -1);
    r.parts.emplace_back("b(1-t)-(1-t)b'", std::move(lhs));
    LinComb<RingElement> nb = bar_differential(A, operator_N(A, x), mut);
    add_signed(nb, operator_N(A, hochschild_b(A, x, mut)), -1);
    r.parts.emplace_back("b'N-Nb", std::move(nb));
    return r;
}

inline Report check_chain_identities(const Algebra& A, const std::vector<LinComb<RingElement>>& chains, const SignMutation* mut = nullptr) {
    Report rep;
    rep.name = "hochschild_identities";
    std::map<std::string, long> failed;
    for (const auto& x : chains) {
        for (const auto& [name, res] : chain_identities(A, x, mut).parts) {
            ++rep.checked;
            if (res.empty()) continue;
            ++failed[name];
            rep.fail(name + " on " + to_string(A.basis, x) + " -> " + to_string(A.basis, res));
        }
    }
    rep.note("chains", std::to_string(chains.size()));
    for (const auto& [name, n] : failed) rep.note("failed " + name, std::to_string(n));
    return rep;
}

// ---------------------------------------------------------------- cochains

// A functional on reduced chain words, evaluated lazily.
using Cochain = std::function<RingElement(const Word&)>;

// finitely supported table
inline Cochain table_cochain(std::map<Word, RingElement> table, Rational emax) {
    auto t = std::make_shared<const std::map<Word, RingElement>>(std::move(table));
    return [t, emax](const Word& w) {
        auto it = t->find(w);
        return it == t->end() ? RingElement(emax) : it->second;
    };
}

inline Cochain zero_cochain(Rational emax) {
    return [emax](const Word&) { return RingElement(emax); };
}

inline Cochain memoize(Cochain f) {
    auto cache = std::make_shared<std::map<Word, RingElement>>();
    return [f = std::move(f), cache](const Word& w) {
        auto it = cache->find(w);
        if (it != cache->end()) return it->second;
        RingElement v = f(w);
        cache->emplace(w, v);
        return v;
    };
}

inline RingElement evaluate(const Algebra& A, const Cochain& f, const LinComb<RingElement>& x) {
    RingElement acc = A.zero();
    for (const auto& [w, c] : x) {
        RingElement v = f(w);
        if (!v.is_zero()) acc += v * c;
    }
    return acc;
}

// b* and B*: precomposition on reduced chains
inline Cochain dual_b_star(const Algebra& A, Cochain f) {
    const Algebra* Ap = &A;
    return memoize([Ap, f = std::move(f)](const Word& w) {
        if (has_unit_slot(*Ap, w)) return Ap->zero();
        LinComb<RingElement> x{{w, Ap->scalar(1)}};
        return evaluate(*Ap, f, reduce(*Ap, hochschild_b(*Ap, x)));
    });
}

inline Cochain dual_B_star(const Algebra& A, Cochain f) {
    const Algebra* Ap = &A;
    return memoize([Ap, f = std::move(f)](const Word& w) {
        if (has_unit_slot(*Ap, w)) return Ap->zero();
        Chain<RingElement> x{{{w, Ap->scalar(1)}}, true};
        return evaluate(*Ap, f, connes_B_reduced(*Ap, x).terms);
    });
}

inline Cochain linear_combination(const Algebra& A, std::vector<std::pair<Cochain, int>> parts) {
    Rational emax = A.emax;
    return [parts = std::move(parts), emax](const Word& w) {
        RingElement acc(emax);
        for (const auto& [f, s] : parts) acc += f(w).scaled(s);
        return acc;
    };
}

struct CocycleTower {
    std::vector<Cochain> psi;  // psi_0 .. psi_D
    std::string origin;        // how the tower was produced, for reports
    // nonzero only on chains with exactly one tensor slot and psi_{i>0} = 0
    bool strict = false;
    std::map<Word, RingElement> strict_pairing;  // (v, a) -> value, when strict

    int depth() const { return static_cast<int>(psi.size()) - 1; }
};

// Enumerate reduced chain words (v | a1..ak) with 1 + k <= lmax.
template <class F>
void for_each_reduced_word(const Algebra& A, int lmax, F&& f) {
    int nb = A.basis.size();
    std::vector<int> tensor;
    for (int b = 0; b < nb; ++b)
        if (b != A.basis.unit) tensor.push_back(b);
    for (int len = 1; len <= lmax; ++len) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(len - 1), 0);
        for (int v = 0; v < nb; ++v) {
            std::fill(idx.begin(), idx.end(), 0);
            if (len > 1 && tensor.empty()) continue;
            for (;;) {
                Word w{v};
                for (auto i : idx) w.push_back(tensor[i]);
                f(w);
                int pos = len - 2;
                while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == tensor.size()) idx[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
        }
    }
}

// psi_i o b = psi_{i+1} o B for i < D and psi_D o b = 0, on reduced words up to lmax slots
inline Report validate_negative_cocycle(const Algebra& A, const CocycleTower& T, int lmax) {
    Report rep;
    rep.name = "negative_cocycle";
    int D = T.depth();
    std::vector<Cochain> bs, Bs;
    for (int i = 0; i <= D; ++i) bs.push_back(dual_b_star(A, T.psi[static_cast<std::size_t>(i)]));
    for (int i = 1; i <= D; ++i) Bs.push_back(dual_B_star(A, T.psi[static_cast<std::size_t>(i)]));
    for_each_reduced_word(A, lmax, [&](const Word& w) {
        for (int i = 0; i <= D; ++i) {
            ++rep.checked;
            RingElement r = bs[static_cast<std::size_t>(i)](w);
            if (i < D) r -= Bs[static_cast<std::size_t>(i)](w);
            if (!r.is_zero())
                rep.fail("i=" + std::to_string(i) + " word " + A.basis.word_name(w) + " residual " + to_string(r));
        }
    });
    rep.note("L_max", std::to_string(lmax));
    rep.note("E_max", A.emax.get_str());
    rep.note("D", std::to_string(D));
    return rep;
}

// B* image of positive cocycle data tau_0..tau_D: the depth-0 tower (tau_0 o B).
inline CocycleTower connecting_map(const Algebra& A, const std::vector<Cochain>& tau) {
    CocycleTower T;
    T.origin = "B* image of positive data";
    if (tau.empty()) {
        T.psi.push_back(zero_cochain(A.emax));
        return T;
    }
    T.psi.push_back(dual_B_star(A, tau[0]));
    return T;
}

// psi_i = eta_i o b - eta_{i+1} o B: a cocycle for any eta
inline CocycleTower coboundary_tower(const Algebra& A, const std::vector<Cochain>& eta) {
    CocycleTower T;
    T.origin = "coboundary";
    for (std::size_t i = 0; i < eta.size(); ++i) {
        std::vector<std::pair<Cochain, int>> parts{{dual_b_star(A, eta[i]), 1}};
        if (i + 1 < eta.size()) parts.push_back({dual_B_star(A, eta[i + 1]), -1});
        T.psi.push_back(memoize(linear_combination(A, std::move(parts))));
    }
    if (T.psi.empty()) T.psi.push_back(zero_cochain(A.emax));
    return T;
}

inline CocycleTower table_tower(const Algebra& A, const std::vector<std::map<Word, RingElement>>& tables) {
    CocycleTower T;
    T.origin = "table";
    bool strict = true;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (const auto& [w, c] : tables[i]) {
            if (has_unit_slot(A, w))
                throw ConfigError("tower entry " + A.basis.word_name(w) + " has the unit in a tensor slot (chains are reduced)");
            if (c.is_zero()) continue;
            if (i > 0 || w.size() != 2) strict = false;
        }
        T.psi.push_back(table_cochain(tables[i], A.emax));
    }
    if (T.psi.empty()) T.psi.push_back(zero_cochain(A.emax));
    if (strict) {
        T.strict = true;
        if (!tables.empty())
            for (const auto& [w, c] : tables[0])
                if (!c.is_zero()) T.strict_pairing[w] = c;
    }
    return T;
}

}  // namespace ainf
