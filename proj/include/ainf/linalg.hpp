#pragma once

// Dense exact linear algebra over Q; the matrices here are basis-sized.

#include "rational.hpp"

#include <vector>

namespace ainf {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(std::size_t r, std::size_t c) { return Matrix(r, std::vector<Rational>(c, Rational(0))); }

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.empty()) return {};
    std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    Matrix r = zero_matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

// reduced row echelon form in place; returns pivot columns
inline std::vector<std::size_t> rref(Matrix& a) {
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline std::size_t rank(Matrix a) { return rref(a).size(); }

// basis of {x : a x = 0}, one vector per free column, in column order
inline std::vector<std::vector<Rational>> nullspace(Matrix a, std::size_t cols) {
    if (a.empty()) a = zero_matrix(1, cols);
    auto piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ainf
