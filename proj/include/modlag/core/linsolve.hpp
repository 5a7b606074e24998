// SPDX-License-Identifier: MIT
// Order-by-order solution of linear systems with series coefficients.

#pragma once

#include <vector>

#include "modlag/core/series.hpp"

namespace modlag {

using RatMatrix = std::vector<std::vector<RatFun>>;

// Exact Gauss-Jordan inverse; throws AlgebraError on a singular input.
inline RatMatrix invert_matrix(RatMatrix a) {
    const std::size_t n = a.size();
    RatMatrix inv(n);
    const ParamTable* tab = nullptr;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw AlgebraError("matrix is not square");
        for (const auto& e : a[i])
            if (e.table()) tab = e.table();
    }
    for (std::size_t i = 0; i < n; ++i) {
        inv[i].assign(n, RatFun::zero(tab));
        inv[i][i] = RatFun::one(tab);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw AlgebraError("singular leading matrix in linear solve");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RatFun d = a[col][col].inv();
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            RatFun f = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Solves A x = b through the common truncation order. The h^0 block of A
// must consist of scalar (jet-free) entries; higher blocks may involve jets.
inline std::vector<HSeries> solve_linear_series(const std::vector<std::vector<HSeries>>& A,
                                                const std::vector<HSeries>& b) {
    const std::size_t n = A.size();
    if (n == 0 || b.size() != n) throw AlgebraError("linear system shape mismatch");
    CtxPtr ctx;
    int trunc = trunc_inf;
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw AlgebraError("matrix is not square");
        trunc = std::min(trunc, b[i].trunc_order());
        for (std::size_t j = 0; j < n; ++j) {
            trunc = std::min(trunc, A[i][j].trunc_order());
            if (A[i][j].ctx()) ctx = A[i][j].ctx();
        }
    }
    if (!ctx) throw ContextError("linear system without context");

    RatMatrix a0(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Expr e = A[i][j].coeff(0);
            if (!e.is_scalar())
                throw AlgebraError("leading matrix must be scalar to invert");
            a0[i].push_back(e.is_zero() ? ctx->zero() : e.scalar_value());
        }
    RatMatrix minv = invert_matrix(std::move(a0));

    std::vector<std::vector<Expr>> x; // x[k][i]
    for (int k = 0; k <= trunc; ++k) {
        std::vector<Expr> r;
        for (std::size_t i = 0; i < n; ++i) {
            Expr ri = b[i].coeff(k);
            for (int l = 1; l <= k; ++l)
                for (std::size_t j = 0; j < n; ++j) {
                    Expr al = A[i][j].coeff(l);
                    if (al.is_zero()) continue;
                    Expr xp = x[static_cast<std::size_t>(k - l)][j];
                    if (xp.is_zero()) continue;
                    ri -= al * xp;
                }
            r.push_back(std::move(ri));
        }
        std::vector<Expr> xk;
        for (std::size_t i = 0; i < n; ++i) {
            Expr xi = Expr::zero(ctx);
            for (std::size_t j = 0; j < n; ++j) {
                if (minv[i][j].is_zero() || r[j].is_zero()) continue;
                xi += minv[i][j] * r[j];
            }
            xk.push_back(std::move(xi));
        }
        x.push_back(std::move(xk));
    }

    std::vector<HSeries> out;
    for (std::size_t i = 0; i < n; ++i) {
        HSeries s(ctx, trunc);
        for (int k = 0; k <= trunc; ++k)
            if (!x[static_cast<std::size_t>(k)][i].is_zero())
                s.set_coeff(k, x[static_cast<std::size_t>(k)][i]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace modlag
