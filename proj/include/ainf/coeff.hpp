#pragma once

// Coefficient rings: truncated Novikov-type series in T^lambda, e^{+-1}, s, t_0..t_N
// over Q (RingElement) or over Q[t] (PathRingElement, for polynomial gauge paths).

#include "poly.hpp"
#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

// Degrees of the formal variables; deg T = 0 and deg e = 2 are fixed.
struct VarConfig {
    int deg_s = 0;
    std::vector<int> deg_t;

    void validate() const {
        if (deg_s % 2 != 0) throw ConfigError("odd-degree variable s is unsupported");
        for (std::size_t i = 0; i < deg_t.size(); ++i)
            if (deg_t[i] % 2 != 0)
                throw ConfigError("odd-degree variable t" + std::to_string(i) + " is unsupported");
    }
};

struct Monomial {
    Rational lambda{0};
    int e = 0;
    int s = 0;
    std::vector<int> t;  // trailing zeros trimmed, so comparison is canonical

    void normalize() {
        while (!t.empty() && t.back() == 0) t.pop_back();
    }
    Rational valuation() const {
        long extra = s;
        for (int x : t) extra += x;
        return lambda + extra;
    }
    int degree(const VarConfig& vc) const {
        int d = 2 * e + s * vc.deg_s;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i >= vc.deg_t.size()) throw ConfigError("monomial uses undeclared variable t" + std::to_string(i));
            d += t[i] * vc.deg_t[i];
        }
        return d;
    }
    bool is_one() const { return sgn(lambda) == 0 && e == 0 && s == 0 && t.empty(); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.lambda = a.lambda + b.lambda;
        r.e = a.e + b.e;
        r.s = a.s + b.s;
        r.t.resize(std::max(a.t.size(), b.t.size()), 0);
        for (std::size_t i = 0; i < a.t.size(); ++i) r.t[i] += a.t[i];
        for (std::size_t i = 0; i < b.t.size(); ++i) r.t[i] += b.t[i];
        r.normalize();
        return r;
    }
    friend int compare(const Monomial& a, const Monomial& b) {
        int c = cmp(a.lambda, b.lambda);
        if (c != 0) return c < 0 ? -1 : 1;
        if (a.e != b.e) return a.e < b.e ? -1 : 1;
        if (a.s != b.s) return a.s < b.s ? -1 : 1;
        if (a.t != b.t) return a.t < b.t ? -1 : 1;
        return 0;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
};

inline Monomial T_pow(const Rational& lambda, int e = 0) {
    Monomial m;
    m.lambda = lambda;
    m.e = e;
    return m;
}

inline std::string to_string(const Monomial& m) {
    std::string out;
    auto add = [&](const std::string& f) {
        if (!out.empty()) out += " ";
        out += f;
    };
    if (sgn(m.lambda) != 0) add(m.lambda == 1 ? "T" : "T^" + m.lambda.get_str());
    if (m.e != 0) add(m.e == 1 ? "e" : "e^" + std::to_string(m.e));
    if (m.s != 0) add(m.s == 1 ? "s" : "s^" + std::to_string(m.s));
    for (std::size_t i = 0; i < m.t.size(); ++i)
        if (m.t[i] != 0)
            add("t" + std::to_string(i) + (m.t[i] == 1 ? "" : "^" + std::to_string(m.t[i])));
    return out;
}

template <class K>
class Series {
public:
    using scalar_type = K;
    using Term = std::pair<Monomial, K>;

    Series() = default;  // zero without a cutoff; adopts the cutoff of whatever it meets
    explicit Series(const Rational& cutoff) : cutoff_(cutoff) {}
    Series(std::vector<Term> terms, std::optional<Rational> cutoff) : terms_(std::move(terms)), cutoff_(std::move(cutoff)) {
        normalize();
    }

    static Series constant(const K& c, const Rational& cutoff) { return monomial(Monomial{}, c, cutoff); }
    static Series monomial(Monomial m, const K& c, const Rational& cutoff) {
        m.normalize();
        return Series({{std::move(m), c}}, cutoff);
    }

    const std::vector<Term>& terms() const { return terms_; }
    const std::optional<Rational>& cutoff() const { return cutoff_; }
    bool is_zero() const { return terms_.empty(); }

    std::optional<Rational> valuation() const {
        std::optional<Rational> v;
        for (const auto& [m, c] : terms_) {
            Rational x = m.valuation();
            if (!v || x < *v) v = x;
        }
        return v;
    }

    Series truncate(const Rational& E) const {
        if (sgn(E) < 0) throw ConfigError("negative truncation level " + E.get_str());
        Rational c = cutoff_ && *cutoff_ < E ? *cutoff_ : E;
        return Series(terms_, c);
    }

    // the coefficient of the monomial 1 (the part of valuation 0 with e = s = t = 0)
    K constant_term() const {
        if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
        return K(0);
    }

    Series& operator+=(const Series& o) { return accumulate(o, 1); }
    Series& operator-=(const Series& o) { return accumulate(o, -1); }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series r;
        r.cutoff_ = join(a.cutoff_, b.cutoff_);
        if (a.terms_.empty() || b.terms_.empty()) return r;
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma * mb;
                if (r.cutoff_ && m.valuation() > *r.cutoff_) continue;
                r.terms_.emplace_back(std::move(m), ca * cb);
            }
        r.normalize();
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const K& k) const {
        Series r = *this;
        for (auto& [m, c] : r.terms_) c = c * k;
        r.normalize();
        return r;
    }
    Series scaled(int sign) const { return sign >= 0 ? *this : -*this; }

    friend bool operator==(const Series& a, const Series& b) {
        join(a.cutoff_, b.cutoff_);
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second))
                return false;
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // one degree for all terms, or nullopt when inhomogeneous (zero counts as any degree)
    std::optional<int> homogeneous_degree(const VarConfig& vc) const {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            int x = m.degree(vc);
            if (d && *d != x) return std::nullopt;
            d = x;
        }
        return d;
    }

    void set_cutoff(const Rational& c) {
        cutoff_ = c;
        normalize();
    }

    static std::optional<Rational> join(const std::optional<Rational>& a, const std::optional<Rational>& b) {
        if (a && b && *a != *b)
            throw ConfigError("mismatched energy cutoffs " + a->get_str() + " and " + b->get_str());
        return a ? a : b;
    }

private:
    Series& accumulate(const Series& o, int sign) {
        cutoff_ = join(cutoff_, o.cutoff_);
        if (o.terms_.empty()) return *this;
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c = i == terms_.size() ? 1 : j == o.terms_.size() ? -1 : compare(terms_[i].first, o.terms_[j].first);
            if (c < 0) {
                merged.push_back(std::move(terms_[i++]));
            } else if (c > 0) {
                merged.emplace_back(o.terms_[j].first, sign > 0 ? K(o.terms_[j].second) : K(-o.terms_[j].second));
                ++j;
            } else {
                K v = sign > 0 ? K(terms_[i].second + o.terms_[j].second) : K(terms_[i].second - o.terms_[j].second);
                if (!ainf::is_zero(v)) merged.emplace_back(std::move(terms_[i].first), std::move(v));
                ++i;
                ++j;
            }
        }
        terms_ = std::move(merged);
        if (cutoff_) drop_above(*cutoff_);
        return *this;
    }

    void drop_above(const Rational& E) {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.valuation() > E; }),
                     terms_.end());
    }

    void normalize() {
        for (auto& [m, c] : terms_) m.normalize();
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second = out.back().second + t.second;
            else
                out.push_back(std::move(t));
            if (ainf::is_zero(out.back().second)) out.pop_back();
        }
        terms_ = std::move(out);
        if (cutoff_) drop_above(*cutoff_);
    }

    std::vector<Term> terms_;
    std::optional<Rational> cutoff_;
};

using RingElement = Series<Rational>;
using PathRingElement = Series<Poly>;

template <class K>
bool is_zero(const Series<K>& s) {
    return s.is_zero();
}

inline PathRingElement extend_path(const RingElement& a) {
    std::vector<PathRingElement::Term> terms;
    for (const auto& [m, c] : a.terms()) terms.emplace_back(m, Poly(c));
    return PathRingElement(std::move(terms), a.cutoff());
}

inline RingElement specialize(const PathRingElement& p, const Rational& t0) {
    std::vector<RingElement::Term> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(m, c.eval(t0));
    return RingElement(std::move(terms), p.cutoff());
}

inline PathRingElement d_dt(const PathRingElement& p) {
    std::vector<PathRingElement::Term> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(m, c.derivative());
    return PathRingElement(std::move(terms), p.cutoff());
}

// identity on RingElement, used by generic code that may run over either ring
inline const RingElement& lift(const RingElement& a, const RingElement*) { return a; }
inline PathRingElement lift(const RingElement& a, const PathRingElement*) { return extend_path(a); }

template <class R>
R lift_to(const RingElement& a) {
    return lift(a, static_cast<const R*>(nullptr));
}

template <class K>
std::string to_string(const Series<K>& s) {
    if (s.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : s.terms()) {
        std::string mono = to_string(m);
        std::string coef;
        bool neg = false;
        if constexpr (std::is_same_v<K, Rational>) {
            neg = sgn(c) < 0;
            Rational a = abs(c);
            if (a != 1 || mono.empty()) coef = a.get_str();
        } else {
            if (c.is_constant()) {
                neg = sgn(c.constant()) < 0;
                Rational a = abs(c.constant());
                if (a != 1 || mono.empty()) coef = a.get_str();
            } else {
                coef = "(" + to_string(c) + ")";
            }
        }
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += coef;
        if (!coef.empty() && !mono.empty()) out += " ";
        out += mono;
    }
    return out;
}

namespace detail {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;
    std::size_t base = 0;  // offset of s inside the enclosing document, for diagnostics

    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '*' || s[i] == '\t')) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(base + i) + " in '" + std::string(s) + "'", base + i);
    }
    bool is_digit() {
        skip();
        return i < s.size() && s[i] >= '0' && s[i] <= '9';
    }
    long integer() {
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (!(i < s.size() && s[i] >= '0' && s[i] <= '9')) fail("expected integer");
        long v = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }
    Rational fraction() {
        skip();
        std::size_t b = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i < s.size() && s[i] == '/') {
            ++i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        }
        try {
            return parse_rational(s.substr(b, i - b));
        } catch (const ParseError&) {
            i = b;
            fail("bad fraction");
        }
    }
};

inline Poly parse_poly(Cursor& c) {
    Poly out;
    bool first = true;
    while (c.peek() != ')') {
        if (c.done()) c.fail("unterminated polynomial");
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (!first) {
            c.fail("expected + or -");
        }
        first = false;
        Rational coef(1);
        if (c.is_digit()) coef = c.fraction();
        long power = 0;
        if (c.peek() == 't') {
            ++c.i;
            power = 1;
            if (c.peek() == '^') {
                ++c.i;
                power = c.integer();
                if (power < 0) c.fail("negative power of t");
            }
        }
        std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
        v[static_cast<std::size_t>(power)] = coef * sign;
        out += Poly(std::move(v));
    }
    ++c.i;
    return out;
}

}  // namespace detail

// Grammar: term (("+"|"-") term)*, term = [fraction | "(" poly ")"] factor*,
// factor = T[^fraction] | e[^int] | s[^int] | t<i>[^int]. Whitespace and '*' separate.
template <class K>
Series<K> parse_series(std::string_view text, const Rational& cutoff, std::size_t base = 0) {
    detail::Cursor c{text, 0, base};
    std::vector<typename Series<K>::Term> terms;
    bool first = true;
    if (c.done()) c.fail("empty ring element");
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (!first) {
            c.fail("expected + or -");
        }
        first = false;
        K coef(1);
        bool have_coef = false;
        if (c.is_digit()) {
            coef = K(c.fraction());
            have_coef = true;
        } else if (c.peek() == '(') {
            ++c.i;
            Poly p = detail::parse_poly(c);
            if constexpr (std::is_same_v<K, Rational>) {
                if (!p.is_constant()) c.fail("path polynomial in a plain ring element");
                coef = p.constant();
            } else {
                coef = p;
            }
            have_coef = true;
        }
        Monomial m;
        bool have_factor = false;
        while (!c.done()) {
            ch = c.peek();
            if (ch == '+' || ch == '-') break;
            if (ch == 'T') {
                ++c.i;
                m.lambda += c.peek() == '^' ? (++c.i, c.fraction()) : Rational(1);
            } else if (ch == 'e') {
                ++c.i;
                m.e += c.peek() == '^' ? (++c.i, static_cast<int>(c.integer())) : 1;
            } else if (ch == 's') {
                ++c.i;
                m.s += c.peek() == '^' ? (++c.i, static_cast<int>(c.integer())) : 1;
            } else if (ch == 't') {
                ++c.i;
                if (!(c.i < c.s.size() && c.s[c.i] >= '0' && c.s[c.i] <= '9')) {
                    // bare t is the path variable
                    if constexpr (std::is_same_v<K, Rational>) {
                        c.fail("path variable t in a plain ring element (use t0, t1, ... for ring variables)");
                    } else {
                        long p = c.peek() == '^' ? (++c.i, c.integer()) : 1;
                        if (p < 0) c.fail("negative power of t");
                        std::vector<Rational> v(static_cast<std::size_t>(p) + 1);
                        v.back() = 1;
                        coef = coef * Poly(std::move(v));
                        have_factor = true;
                        continue;
                    }
                }
                long idx = c.integer();
                int p = c.peek() == '^' ? (++c.i, static_cast<int>(c.integer())) : 1;
                if (m.t.size() <= static_cast<std::size_t>(idx)) m.t.resize(static_cast<std::size_t>(idx) + 1, 0);
                m.t[static_cast<std::size_t>(idx)] += p;
            } else {
                c.fail(std::string("unexpected character '") + ch + "'");
            }
            have_factor = true;
        }
        if (!have_coef && !have_factor) c.fail("empty term");
        if (sgn(m.lambda) < 0 || m.s < 0) c.fail("negative exponent of T or s");
        for (int x : m.t)
            if (x < 0) c.fail("negative exponent of t_i");
        m.normalize();
        terms.emplace_back(std::move(m), sign > 0 ? coef : K(-coef));
    }
    return Series<K>(std::move(terms), cutoff);
}

inline RingElement parse_ring(std::string_view text, const Rational& cutoff) { return parse_series<Rational>(text, cutoff); }

}  // namespace ainf
