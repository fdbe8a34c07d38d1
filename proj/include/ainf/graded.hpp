#pragma once

// Graded basis, tensor words and the Koszul sign rules. Coefficient variables
// are even, so every sign below depends on basis degrees only.

#include "coeff.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace ainf {

using Word = std::vector<int>;

inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

struct Basis {
    std::vector<std::string> names;
    std::vector<int> deg;
    int unit = -1;  // -1: no unit designated

    int size() const { return static_cast<int>(deg.size()); }
    int sd(int i) const { return deg[static_cast<std::size_t>(i)] - 1; }
    long sd(const Word& w, std::size_t from = 0, std::size_t to = std::size_t(-1)) const {
        long s = 0;
        to = std::min(to, w.size());
        for (std::size_t j = from; j < to; ++j) s += sd(w[j]);
        return s;
    }
    bool has_unit() const { return unit >= 0; }

    int add(const std::string& name, int degree) {
        for (const auto& n : names)
            if (n == name) throw ConfigError("duplicate basis name '" + name + "'");
        names.push_back(name);
        deg.push_back(degree);
        return size() - 1;
    }
    int find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (names[static_cast<std::size_t>(i)] == name) return i;
        return -1;
    }
    int index(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw ConfigError("unknown basis element '" + name + "'");
        return i;
    }
    void set_unit(int i) {
        if (deg[static_cast<std::size_t>(i)] != 0) throw ConfigError("unit '" + names[static_cast<std::size_t>(i)] + "' must have degree 0");
        unit = i;
    }
    std::string word_name(const Word& w) const {
        std::string s = "(";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += ",";
            s += names[static_cast<std::size_t>(w[i])];
        }
        return s + ")";
    }
};

// sum over the first i entries of (d - 1)
inline long maltese(const std::vector<int>& degrees, int i) {
    if (i < 0 || static_cast<std::size_t>(i) > degrees.size())
        throw std::out_of_range("maltese: index " + std::to_string(i) + " out of range");
    long s = 0;
    for (int j = 0; j < i; ++j) s += degrees[static_cast<std::size_t>(j)] - 1;
    return s;
}

// sign of moving the last factor to the front
inline int koszul_sign_cyclic(const std::vector<int>& degrees) {
    if (degrees.empty()) throw std::invalid_argument("koszul_sign_cyclic: empty word");
    long last = degrees.back() - 1;
    return parity_sign(last * maltese(degrees, static_cast<int>(degrees.size()) - 1));
}

inline std::vector<int> degrees_of(const Basis& B, const Word& w) {
    std::vector<int> d;
    d.reserve(w.size());
    for (int i : w) d.push_back(B.deg[static_cast<std::size_t>(i)]);
    return d;
}

// sparse element: basis index -> coefficient
template <class R>
using Element = std::map<int, R>;

// linear combination of words
template <class R>
using LinComb = std::map<Word, R>;

template <class Map, class Key, class R>
void add_term(Map& m, Key&& key, const R& c) {
    if (c.is_zero()) return;
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(std::forward<Key>(key), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

template <class Map, class R>
void add_scaled(Map& into, const Map& from, const R& c) {
    for (const auto& [k, v] : from) add_term(into, k, v * c);
}

template <class Map>
void add_signed(Map& into, const Map& from, int sign) {
    for (const auto& [k, v] : from) add_term(into, k, v.scaled(sign));
}

template <class Map>
Map negated(Map m) {
    for (auto& [k, v] : m) v = -v;
    return m;
}

template <class Map>
bool all_zero(const Map& m) {
    return m.empty();
}

template <class R>
Element<R> basis_element(int i, const R& c) {
    Element<R> e;
    add_term(e, i, c);
    return e;
}

template <class R>
std::optional<Rational> valuation(const Element<R>& x) {
    std::optional<Rational> v;
    for (const auto& [i, c] : x) {
        auto cv = c.valuation();
        if (cv && (!v || *cv < *v)) v = cv;
    }
    return v;
}

// total degree (basis degree + coefficient degree) when homogeneous
template <class R>
std::optional<int> homogeneous_degree(const Basis& B, const VarConfig& vc, const Element<R>& x) {
    std::optional<int> d;
    for (const auto& [i, c] : x) {
        auto cd = c.homogeneous_degree(vc);
        if (!cd) return std::nullopt;
        int t = B.deg[static_cast<std::size_t>(i)] + *cd;
        if (d && *d != t) return std::nullopt;
        d = t;
    }
    return d;
}

// Replace word[position, position+span) by value, with sign (-1)^{maltese(word, position)}.
template <class R>
LinComb<R> substitute(const Basis& B, const Word& word, const R& coeff, int position, int span, const Element<R>& value) {
    if (position < 0 || span < 0 || static_cast<std::size_t>(position + span) > word.size())
        throw std::out_of_range("substitute: span out of range");
    LinComb<R> out;
    int sign = parity_sign(B.sd(word, 0, static_cast<std::size_t>(position)));
    for (const auto& [i, c] : value) {
        Word w(word.begin(), word.begin() + position);
        w.push_back(i);
        w.insert(w.end(), word.begin() + position + span, word.end());
        add_term(out, std::move(w), (coeff * c).scaled(sign));
    }
    return out;
}

template <class R>
std::string to_string(const Basis& B, const Element<R>& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : x) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ") " + B.names[static_cast<std::size_t>(i)];
    }
    return s;
}

template <class R>
std::string to_string(const Basis& B, const LinComb<R>& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : x) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ") " + B.word_name(w);
    }
    return s;
}

}  // namespace ainf
