#pragma once

#include <vector>

#include "zpbrace/padic.hpp"

namespace zpbrace {

// Dense matrix of residues mod p^N. Row major.
struct Matrix {
    PAdicCtx ctx;
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> a;

    Matrix() = default;
    Matrix(PAdicCtx c, int r, int n) : ctx(std::move(c)), rows(r), cols(n), a(r * n) {}

    BigInt& at(int i, int j) { return a[i * cols + j]; }
    const BigInt& at(int i, int j) const { return a[i * cols + j]; }

    static Matrix identity(const PAdicCtx& c, int n) {
        Matrix m(c, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Matrix transpose() const {
        Matrix m(ctx, cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix m(ctx, rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (at(i, k) == 0) continue;
                for (int j = 0; j < o.cols; ++j)
                    m.at(i, j) += at(i, k) * o.at(k, j);
            }
        for (auto& x : m.a) x = ctx.reduce(std::move(x));
        return m;
    }

    Matrix scaled(const BigInt& c) const {
        Matrix m = *this;
        for (auto& x : m.a) x = ctx.reduce(x * c);
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    // Exact integer determinant (Bareiss) of the residue representatives,
    // reduced mod p^N afterwards.
    BigInt det_mod() const {
        if (rows != cols) throw Error("det: matrix is not square");
        int n = rows;
        if (n == 0) return ctx.reduce(BigInt(1));
        std::vector<BigInt> m = a;
        auto e = [&](int i, int j) -> BigInt& { return m[i * n + j]; };
        BigInt prev = 1;
        int sign = 1;
        for (int k = 0; k + 1 < n; ++k) {
            if (e(k, k) == 0) {
                int r = -1;
                for (int i = k + 1; i < n; ++i)
                    if (e(i, k) != 0) {
                        r = i;
                        break;
                    }
                if (r < 0) return 0;
                for (int j = 0; j < n; ++j) std::swap(e(k, j), e(r, j));
                sign = -sign;
            }
            for (int i = k + 1; i < n; ++i) {
                for (int j = k + 1; j < n; ++j)
                    e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
                e(i, k) = 0;
            }
            prev = e(k, k);
        }
        return ctx.reduce(sign * e(n - 1, n - 1));
    }

    bool is_unimodular() const { return ctx.valuation_of(det_mod()) == 0; }

    // Inverse mod p^N; requires a unit determinant. Gauss-Jordan over the
    // local ring Z/p^N, pivoting on unit entries.
    Matrix inverse_unimodular() const {
        if (rows != cols) throw Error("inverse: matrix is not square");
        int n = rows;
        std::vector<BigInt> m = a;
        Matrix inv = identity(ctx, n);
        auto e = [&](int i, int j) -> BigInt& { return m[i * n + j]; };
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (ctx.valuation_of(e(r, c)) == 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw NotUnimodular("inverse: determinant is not a unit");
            if (piv != c) {
                for (int j = 0; j < n; ++j) {
                    std::swap(e(c, j), e(piv, j));
                    std::swap(inv.at(c, j), inv.at(piv, j));
                }
            }
            BigInt s = nt::mod_inverse(e(c, c), ctx.modulus);
            for (int j = 0; j < n; ++j) {
                e(c, j) = ctx.reduce(e(c, j) * s);
                inv.at(c, j) = ctx.reduce(inv.at(c, j) * s);
            }
            for (int r = 0; r < n; ++r) {
                if (r == c || e(r, c) == 0) continue;
                BigInt f = e(r, c);
                for (int j = 0; j < n; ++j) {
                    e(r, j) = ctx.reduce(e(r, j) - f * e(c, j));
                    inv.at(r, j) = ctx.reduce(inv.at(r, j) - f * inv.at(c, j));
                }
            }
        }
        return inv;
    }
};

// Row vector times matrix, mod p^N.
inline std::vector<BigInt> vec_mat(const PAdicCtx& ctx, const std::vector<BigInt>& v,
                                   const Matrix& m) {
    std::vector<BigInt> out(m.cols);
    for (int j = 0; j < m.cols; ++j) {
        BigInt s = 0;
        for (int i = 0; i < m.rows; ++i) s += v[i] * m.at(i, j);
        out[j] = ctx.reduce(std::move(s));
    }
    return out;
}

} // namespace zpbrace
