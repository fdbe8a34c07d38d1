#pragma once

// Curved gapped filtered A-infinity algebras given by sparse structure constants.

#include "graded.hpp"
#include "report.hpp"

#include <functional>
#include <set>

namespace ainf {

struct MonoidElement {
    Rational lambda{0};
    int mu = 0;
};

// one structure constant: m_{k,beta}(inputs) = output, output coefficients free of T and e
struct OpEntry {
    int beta = 0;
    Word inputs;
    Element<RingElement> output;
};

// Sign flips injected into the coderivation, keyed by (arity of the inserted op, insertion position),
// and into the Hochschild b: wrap terms keyed by (arity, wrapped tail length), interior terms by (arity, start).
struct SignMutation {
    std::set<std::pair<int, int>> flips, b_wrap, b_interior;
    int sign(int k, int pos) const { return flips.count({k, pos}) ? -1 : 1; }
    int wrap_sign(int k, int i) const { return b_wrap.count({k, i}) ? -1 : 1; }
    int interior_sign(int k, int st) const { return b_interior.count({k, st}) ? -1 : 1; }
    bool empty() const { return flips.empty() && b_wrap.empty() && b_interior.empty(); }
};

class Algebra {
public:
    std::string name;
    Basis basis;
    VarConfig vars;
    std::vector<MonoidElement> monoid{MonoidElement{}};  // index 0 is the neutral element (0,0)
    Rational emax{1};
    int table_arity = 0;    // highest arity the table speaks for
    bool complete = false;  // true: every arity beyond the table is zero
    std::vector<OpEntry> entries;

    void finalize() {
        vars.validate();
        for (std::size_t b = 0; b < monoid.size(); ++b) {
            if (sgn(monoid[b].lambda) < 0) throw ConfigError("monoid element " + std::to_string(b) + " has negative energy");
            if (monoid[b].mu % 2 != 0) throw ConfigError("monoid element " + std::to_string(b) + " has odd Maslov index");
        }
        if (basis.size() == 0) throw ConfigError("empty basis");
        table_q_.clear();
        arities_.clear();
        for (const auto& en : entries) {
            int k = static_cast<int>(en.inputs.size());
            std::string where = "m_" + std::to_string(k) + basis.word_name(en.inputs);
            if (en.beta < 0 || static_cast<std::size_t>(en.beta) >= monoid.size()) throw ConfigError(where + ": unknown monoid index");
            for (int i : en.inputs)
                if (i < 0 || i >= basis.size()) throw ConfigError(where + ": input out of range");
            if (!complete && k > table_arity) throw ConfigError(where + ": arity beyond declared table arity");
            const auto& beta = monoid[static_cast<std::size_t>(en.beta)];
            bool neutral = sgn(beta.lambda) == 0 && beta.mu == 0;
            if (k == 0 && neutral && !en.output.empty())
                throw ConfigError(where + ": violates the invariant m_{0,(0,0)} = 0");
            int expect = 2 - k - beta.mu;
            for (int i : en.inputs) expect += basis.deg[static_cast<std::size_t>(i)];
            Monomial tm = T_pow(beta.lambda, beta.mu / 2);
            for (const auto& [o, c] : en.output) {
                if (o < 0 || o >= basis.size()) throw ConfigError(where + ": output out of range");
                for (const auto& [mono, q] : c.terms()) {
                    if (sgn(mono.lambda) != 0 || mono.e != 0)
                        throw ConfigError(where + ": structure constants must not contain T or e (use the monoid element)");
                    int d = basis.deg[static_cast<std::size_t>(o)] + mono.degree(vars);
                    if (d != expect)
                        throw ConfigError(where + ": degree " + std::to_string(d) + " violates deg(out) = sum deg(in) + 2 - k - mu = " +
                                          std::to_string(expect));
                }
                RingElement full = RingElement::monomial(tm, Rational(1), emax) * lifted(c);
                auto& slot = table_q_[en.inputs];
                add_term(slot, o, full);
                if (slot.empty()) table_q_.erase(en.inputs);
            }
        }
        for (auto it = table_q_.begin(); it != table_q_.end();) {
            if (it->second.empty())
                it = table_q_.erase(it);
            else
                arities_.insert(static_cast<int>((it++)->first.size()));
        }
        table_p_.clear();
        for (const auto& [w, el] : table_q_)
            for (const auto& [o, c] : el) table_p_[w][o] = extend_path(c);
    }

    // coefficient with the algebra's cutoff
    RingElement lifted(const RingElement& c) const {
        RingElement r(c.terms(), emax);
        return r;
    }
    RingElement scalar(const Rational& q) const { return RingElement::constant(q, emax); }
    RingElement zero() const { return RingElement(emax); }

    template <class R>
    R ring_zero() const {
        return R(emax);
    }
    template <class R>
    R ring_one() const {
        return R::constant(typename R::scalar_type(1), emax);
    }

    template <class R>
    const std::map<Word, Element<R>>& table() const {
        if constexpr (std::is_same_v<R, RingElement>)
            return table_q_;
        else
            return table_p_;
    }

    template <class R>
    const Element<R>* m(const Word& w) const {
        require_arity(static_cast<int>(w.size()));
        const auto& t = table<R>();
        auto it = t.find(w);
        return it == t.end() ? nullptr : &it->second;
    }

    // arities with some nonzero structure constant
    const std::set<int>& arities() const { return arities_; }
    int max_arity() const { return arities_.empty() ? -1 : *arities_.rbegin(); }

    void require_arity(int k) const {
        if (!complete && k > table_arity)
            throw ConfigError("arity " + std::to_string(k) + " beyond the structure-constant table of '" + name + "' (table arity " +
                              std::to_string(table_arity) + ")");
    }
    // arities to sum over when the op may eat up to n inputs
    std::vector<int> arities_upto(int n) const {
        require_arity(n);
        std::vector<int> r;
        for (int k : arities_)
            if (k <= n) r.push_back(k);
        return r;
    }

    int sd(int i) const { return basis.sd(i); }

private:
    std::map<Word, Element<RingElement>> table_q_;
    std::map<Word, Element<PathRingElement>> table_p_;
    std::set<int> arities_;
};

namespace detail {

// multilinear expansion of a list of elements into basis words
template <class R, class F>
void expand(const std::vector<const Element<R>*>& xs, std::size_t i, Word& w, const R* coeff, F&& f) {
    if (i == xs.size()) {
        f(w, *coeff);
        return;
    }
    for (const auto& [b, c] : *xs[i]) {
        w.push_back(b);
        if (coeff) {
            R cc = *coeff * c;
            if (!cc.is_zero()) expand(xs, i + 1, w, &cc, f);
        } else {
            expand(xs, i + 1, w, &c, f);
        }
        w.pop_back();
    }
}

}  // namespace detail

template <class R, class F>
void for_each_word(const std::vector<const Element<R>*>& xs, F&& f) {
    Word w;
    if (xs.empty()) {
        // empty product: coefficient 1 without a cutoff, so it adopts the caller's
        f(w, R(std::vector<typename R::Term>{{Monomial{}, typename R::scalar_type(1)}}, std::nullopt));
        return;
    }
    detail::expand<R>(xs, 0, w, nullptr, f);
}

template <class R>
Element<R> apply_m(const Algebra& A, const std::vector<Element<R>>& inputs) {
    A.require_arity(static_cast<int>(inputs.size()));
    std::vector<const Element<R>*> xs;
    for (const auto& x : inputs) xs.push_back(&x);
    Element<R> out;
    for_each_word<R>(xs, [&](const Word& w, const R& c) {
        if (const auto* v = A.m<R>(w))
            for (const auto& [o, oc] : *v) add_term(out, o, oc * c);
    });
    return out;
}

// m-hat on one basis word, all arities, all positions, with the coderivation signs
template <class R>
void coderivation(const Algebra& A, const Word& w, const R& coeff, LinComb<R>& out, const SignMutation* mut = nullptr) {
    int n = static_cast<int>(w.size());
    for (int k : A.arities_upto(n)) {
        long pre = 0;
        for (int i = 0; i + k <= n; ++i) {
            if (i > 0) pre += A.sd(w[static_cast<std::size_t>(i - 1)]);
            Word block(w.begin() + i, w.begin() + i + k);
            const auto* v = A.m<R>(block);
            if (!v) continue;
            int sign = parity_sign(pre) * (mut ? mut->sign(k, i) : 1);
            for (const auto& [o, c] : *v) {
                Word r(w.begin(), w.begin() + i);
                r.push_back(o);
                r.insert(r.end(), w.begin() + i + k, w.end());
                add_term(out, std::move(r), (coeff * c).scaled(sign));
            }
        }
    }
}

template <class R>
LinComb<R> coderivation(const Algebra& A, const LinComb<R>& x, const SignMutation* mut = nullptr) {
    LinComb<R> out;
    for (const auto& [w, c] : x) coderivation(A, w, c, out, mut);
    return out;
}

// Curved A-infinity relations on every basis tuple of length <= kmax.
inline Report check_ainfty(const Algebra& A, int kmax, const SignMutation* mut = nullptr) {
    Report rep;
    rep.name = "ainfty";
    A.require_arity(kmax + 1);
    int nb = A.basis.size();
    Word w;
    std::function<void(int)> rec = [&](int n) {
        if (static_cast<int>(w.size()) == n) {
            ++rep.checked;
            // inner insertions m_l at position i, then the outer op on the whole word
            Element<RingElement> res;
            LinComb<RingElement> inner;
            coderivation(A, w, A.scalar(1), inner, mut);
            for (const auto& [u, c] : inner)
                if (const auto* v = A.m<RingElement>(u))
                    for (const auto& [o, oc] : *v) add_term(res, o, oc * c);
            if (!res.empty()) rep.fail("n=" + std::to_string(n) + " " + A.basis.word_name(w) + " -> " + to_string(A.basis, res));
            return;
        }
        for (int b = 0; b < nb; ++b) {
            w.push_back(b);
            rec(n);
            w.pop_back();
        }
    };
    for (int n = 0; n <= kmax; ++n) rec(n);
    rep.note("K_max", std::to_string(kmax));
    rep.note("E_max", A.emax.get_str());
    return rep;
}

inline Report check_strict_unit(const Algebra& A, int kmax) {
    Report rep;
    rep.name = "strict_unit";
    if (!A.basis.has_unit()) {
        rep.fail("no unit designated");
        return rep;
    }
    int u = A.basis.unit;
    int nb = A.basis.size();
    for (int x = 0; x < nb; ++x) {
        ++rep.checked;
        Element<RingElement> want = basis_element(x, A.scalar(1));
        auto* l = A.m<RingElement>({u, x});
        if (!l || *l != want) rep.fail("m2(1," + A.basis.names[static_cast<std::size_t>(x)] + ") != " + A.basis.names[static_cast<std::size_t>(x)]);
        Element<RingElement> want_r = basis_element(x, A.scalar(parity_sign(A.basis.deg[static_cast<std::size_t>(x)])));
        auto* r = A.m<RingElement>({x, u});
        if (!r || *r != want_r) rep.fail("m2(" + A.basis.names[static_cast<std::size_t>(x)] + ",1) != (-1)^|x| x");
    }
    // every other arity must vanish whenever a slot holds the unit
    for (const auto& [w, v] : A.table<RingElement>()) {
        if (w.size() == 2 || v.empty()) continue;
        if (static_cast<int>(w.size()) > kmax) continue;
        for (std::size_t s = 0; s < w.size(); ++s)
            if (w[s] == u) rep.fail("m" + std::to_string(w.size()) + A.basis.word_name(w) + " != 0 with unit at slot " + std::to_string(s));
    }
    rep.checked += static_cast<long>(A.table<RingElement>().size());
    return rep;
}

// m_0^b = sum_k m_k(b, ..., b)
template <class R>
Element<R> curvature(const Algebra& A, const Element<R>& b) {
    Element<R> out;
    if (const auto* m0 = A.m<R>({})) out = *m0;
    if (b.empty()) return out;
    auto nu = valuation(b);
    if (!nu || sgn(*nu) <= 0) throw ConfigError("curvature: b must have positive valuation (series would diverge)");
    Rational kbound = A.emax / *nu;
    mpz_class kfloor = kbound.get_num() / kbound.get_den();
    long K = kfloor.get_si();
    for (int k : A.arities()) {
        if (k == 0 || k > K) continue;
        std::vector<Element<R>> in(static_cast<std::size_t>(k), b);
        for (const auto& [o, c] : apply_m(A, in)) add_term(out, o, c);
    }
    if (!A.complete && K > A.table_arity)
        throw ConfigError("curvature: energy budget reaches arity " + std::to_string(K) + " beyond the table");
    return out;
}

template <class R>
struct WeakMC {
    bool is_weak_mc = false;
    R c;
};

template <class R>
WeakMC<R> check_weak_mc(const Algebra& A, const Element<R>& b) {
    auto m0 = curvature(A, b);
    WeakMC<R> r{true, A.ring_zero<R>()};
    for (const auto& [o, c] : m0) {
        if (o == A.basis.unit)
            r.c = c;
        else
            r.is_weak_mc = false;
    }
    if (!A.basis.has_unit() && !m0.empty()) r.is_weak_mc = false;
    return r;
}

// right-inverse data for m_{1,(0,0)}: basis index -> preimage
using Homotopy = std::map<int, Element<RingElement>>;

inline Element<RingElement> m1_zero(const Algebra& A, const Element<RingElement>& x) {
    // the valuation-0, beta = (0,0) part of m_1
    Element<RingElement> out;
    for (const auto& en : A.entries) {
        const auto& beta = A.monoid[static_cast<std::size_t>(en.beta)];
        if (en.inputs.size() != 1 || sgn(beta.lambda) != 0 || beta.mu != 0) continue;
        auto it = x.find(en.inputs[0]);
        if (it == x.end()) continue;
        for (const auto& [o, c] : en.output) add_term(out, o, it->second * A.lifted(c));
    }
    return out;
}

inline Element<RingElement> apply_h(const Homotopy& h, const Element<RingElement>& y) {
    Element<RingElement> out;
    for (const auto& [j, c] : y) {
        auto it = h.find(j);
        if (it == h.end()) continue;
        for (const auto& [o, oc] : it->second) add_term(out, o, oc * c);
    }
    return out;
}

struct MCSolution {
    bool solved = false;
    Element<RingElement> b;
    RingElement c;
    std::optional<Rational> obstruction_energy;
    Element<RingElement> obstruction;
    int steps = 0;
};

inline MCSolution solve_mc(const Algebra& A, const Homotopy& h, const Element<RingElement>& seed) {
    // validate h as a right inverse on the image of m_{1,(0,0)}
    for (int z = 0; z < A.basis.size(); ++z) {
        auto y = m1_zero(A, basis_element(z, A.scalar(1)));
        if (y.empty()) continue;
        if (m1_zero(A, apply_h(h, y)) != y)
            throw ConfigError("solve_mc: homotopy is not a right inverse of m_{1,(0,0)} on m1(" + A.basis.names[static_cast<std::size_t>(z)] + ")");
    }
    MCSolution s;
    s.b = seed;
    s.c = A.zero();
    for (int it = 0; it < 100000; ++it) {
        auto m0 = curvature(A, s.b);
        Element<RingElement> r;
        s.c = A.zero();
        for (const auto& [o, c] : m0) {
            if (o == A.basis.unit)
                s.c = c;
            else
                r[o] = c;
        }
        if (r.empty()) {
            s.solved = true;
            return s;
        }
        Rational E = *valuation(r);
        Element<RingElement> low;
        for (const auto& [o, c] : r) {
            std::vector<RingElement::Term> keep;
            for (const auto& t : c.terms())
                if (t.first.valuation() == E) keep.push_back(t);
            RingElement part(std::move(keep), A.emax);
            if (!part.is_zero()) low[o] = part;
        }
        auto corr = apply_h(h, low);
        if (m1_zero(A, corr) != low) {
            s.obstruction_energy = E;
            s.obstruction = low;
            return s;
        }
        for (const auto& [o, c] : corr) add_term(s.b, o, -c);
        ++s.steps;
    }
    throw ConfigError("solve_mc: no convergence");
}

// Dual bimodule structure map applied to a covector f of shifted degree f_sd:
// (-1)^eps f(m(right, w, left)).
template <class R>
R dual_action(const Algebra& A, const std::vector<Element<R>>& left, const Element<R>& covector, int covector_sd,
              const std::vector<Element<R>>& right, const Element<R>& w) {
    std::vector<const Element<R>*> xs;
    for (const auto& x : right) xs.push_back(&x);
    xs.push_back(&w);
    for (const auto& x : left) xs.push_back(&x);
    std::size_t k = left.size(), l = right.size();
    A.require_arity(static_cast<int>(k + l + 1));
    R out = A.ring_zero<R>();
    for_each_word<R>(xs, [&](const Word& word, const R& c) {
        const auto* v = A.m<R>(word);
        if (!v) return;
        long s_right = A.basis.sd(word, 0, l);
        long s_w = A.sd(word[l]);
        long s_left = A.basis.sd(word, l + 1);
        long eps = covector_sd + s_left + s_right + s_left * (covector_sd + s_right + s_w);
        for (const auto& [o, oc] : *v) {
            auto it = covector.find(o);
            if (it == covector.end()) continue;
            out += (it->second * oc * c).scaled(parity_sign(eps));
        }
    });
    return out;
}

// phi(alpha | v | beta)(w) on basis data
template <class R>
using PhiFn = std::function<R(const Word& alpha, int v, const Word& beta, int w)>;

// Bimodule homomorphism equation for phi : A_diag -> A_dual on all basis data with p + q + 1 <= lmax.
// Values of phi are paired with their argument u through (-1)^{|u|'}.
inline Report check_bimodule_hom(const Algebra& A, const PhiFn<RingElement>& phi, int lmax) {
    Report rep;
    rep.name = "bimodule_hom";
    const Basis& B = A.basis;
    int nb = B.size();
    auto cov = [&](const Word& a, int v, const Word& b, int u) { return phi(a, v, b, u).scaled(parity_sign(A.sd(u))); };
    auto one = A.scalar(1);

    auto lhs = [&](const Word& al, int v, const Word& be, int w) {
        RingElement acc = A.zero();
        LinComb<RingElement> da, db;
        coderivation(A, al, one, da);
        for (const auto& [a2, c] : da) acc += cov(a2, v, be, w) * c;
        coderivation(A, be, one, db);
        int sgn_b = parity_sign(B.sd(al) + A.sd(v));
        for (const auto& [b2, c] : db) acc += (cov(al, v, b2, w) * c).scaled(sgn_b);
        for (std::size_t i = 0; i <= al.size(); ++i)
            for (std::size_t j = 0; j <= be.size(); ++j) {
                Word mid(al.begin() + static_cast<long>(i), al.end());
                mid.push_back(v);
                mid.insert(mid.end(), be.begin(), be.begin() + static_cast<long>(j));
                const auto* mv = A.m<RingElement>(mid);
                if (!mv) continue;
                Word a1(al.begin(), al.begin() + static_cast<long>(i));
                Word b2(be.begin() + static_cast<long>(j), be.end());
                int s = parity_sign(B.sd(a1));
                for (const auto& [o, c] : *mv) acc += (cov(a1, o, b2, w) * c).scaled(s);
            }
        return acc;
    };
    auto rhs = [&](const Word& al, int v, const Word& be, int w) {
        RingElement acc = A.zero();
        for (std::size_t i = 0; i <= al.size(); ++i)
            for (std::size_t j = 0; j <= be.size(); ++j) {
                Word a1(al.begin(), al.begin() + static_cast<long>(i));
                Word a2(al.begin() + static_cast<long>(i), al.end());
                Word b1(be.begin(), be.begin() + static_cast<long>(j));
                Word b2(be.begin() + static_cast<long>(j), be.end());
                long fd = B.sd(a2) + A.sd(v) + B.sd(b1);
                // covector u -> cov(a2 v b1)(u)
                Element<RingElement> f;
                for (int u = 0; u < nb; ++u) add_term(f, u, cov(a2, v, b1, u));
                if (f.empty()) continue;
                std::vector<Element<RingElement>> left, right;
                for (int x : a1) left.push_back(basis_element(x, one));
                for (int x : b2) right.push_back(basis_element(x, one));
                acc += dual_action(A, left, f, static_cast<int>(fd), right, basis_element(w, one));
            }
        return acc;
    };

    for (int len = 1; len <= lmax; ++len) {
        // words of length len: alpha (p), v, beta (q) with p + q + 1 = len
        std::vector<int> idx(static_cast<std::size_t>(len), 0);
        for (;;) {
            for (int p = 0; p < len; ++p) {
                Word al(idx.begin(), idx.begin() + p);
                int v = idx[static_cast<std::size_t>(p)];
                Word be(idx.begin() + p + 1, idx.end());
                for (int w = 0; w < nb; ++w) {
                    ++rep.checked;
                    RingElement d = lhs(al, v, be, w) - rhs(al, v, be, w);
                    if (!d.is_zero())
                        rep.fail(B.word_name(al) + "|" + B.names[static_cast<std::size_t>(v)] + "|" + B.word_name(be) + " ; " +
                                 B.names[static_cast<std::size_t>(w)] + " -> " + to_string(d));
                }
            }
            int pos = len - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == nb) idx[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    rep.note("L_max", std::to_string(lmax));
    rep.note("E_max", A.emax.get_str());
    return rep;
}

}  // namespace ainf
