#pragma once

#include "rational.hpp"

#include <vector>

namespace ainf {

// Polynomial in the path variable t (degree 0), dense, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}
    Poly(const Rational& c) {
        if (!ainf::is_zero(c)) c_.push_back(c);
    }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly t() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational constant() const { return c_.empty() ? Rational(0) : c_[0]; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const {
        std::vector<Rational> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Rational(static_cast<long>(i)));
        return Poly(std::move(r));
    }
    Rational eval(const Rational& t0) const {
        Rational r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * t0 + c_[i];
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && ainf::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Rational& c = p.coeffs()[i];
        if (ainf::is_zero(c)) continue;
        Rational a = abs(c);
        bool neg = sgn(c) < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        bool unit = (a == 1);
        if (i == 0 || !unit) out += a.get_str();
        if (i >= 1) {
            if (!unit) out += " ";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace ainf
