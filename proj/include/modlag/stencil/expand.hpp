#pragma once

#include <vector>

#include "modlag/core/series.hpp"
#include "modlag/jets/jets.hpp"

namespace modlag {

// Expansions of the five-point scheme and its action density around a
// rotating travelling wave u(t, x) = R(t) phi(x - c t), R(t) = exp(t alpha J),
// J = [[0, 1], [-1, 0]].  The grid spacings are h*dt and h*dx; every result
// is a power series in the refinement parameter h with exact coefficients.

inline void require_wave_ctx(const CtxPtr& ctx) {
    if (ctx->dim() != 2)
        throw ContextError("wave expansions need a two-component field");
}

namespace detail {

// Entries of J^k for k mod 4.
inline std::array<std::array<int, 2>, 2> rotation_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {{{1, 0}, {0, 1}}};
        case 1: return {{{0, 1}, {-1, 0}}};
        case 2: return {{{-1, 0}, {0, -1}}};
        default: return {{{0, -1}, {1, 0}}};
    }
}

} // namespace detail

// Series of the grid translate u(t + a h dt, x + b h dx) conjugated by R(t):
//   R(a h dt) phi(xi + (b dx - a c dt) h)
// as a two-component jet expression, truncated at the given order.
inline std::vector<HSeries> expand_shift(const CtxPtr& ctx, const mpq_class& a,
                                         const mpq_class& b, int order) {
    require_wave_ctx(ctx);
    if (order < 0) throw TruncError("negative truncation order");

    const RatFun rot_step = ctx->rat(a) * ctx->alpha() * ctx->dt();
    const RatFun offset = ctx->rat(b) * ctx->dx() - ctx->rat(a) * ctx->c() * ctx->dt();

    std::vector<HSeries> out(2, HSeries::zero(ctx, order));
    mpq_class kfact = 1;
    RatFun rot_pow = ctx->one();
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            kfact *= k;
            rot_pow = rot_pow * rot_step;
        }
        const auto jk = detail::rotation_power(k);
        mpq_class mfact = 1;
        RatFun off_pow = ctx->one();
        for (int m = 0; k + m <= order; ++m) {
            if (m > 0) {
                mfact *= m;
                off_pow = off_pow * offset;
            }
            const RatFun coeff = rot_pow * off_pow * ctx->rat(1 / (kfact * mfact));
            if (coeff.is_zero()) continue;
            for (int row = 0; row < 2; ++row) {
                for (int col = 0; col < 2; ++col) {
                    if (jk[row][col] == 0) continue;
                    Expr term = Expr::jet(ctx, col + 1, m) * (coeff * ctx->rat(jk[row][col]));
                    out[row].set_coeff(k + m, out[row].coeff(k + m) + term);
                }
            }
        }
    }
    return out;
}

// Action density of the five-point discretisation restricted to the wave:
//   L_h = (|R(-h dt) phi(xi + c h dt) - phi|^2 / dt^2
//          - |phi(xi - h dx) - phi|^2 / dx^2) / (2 h^2) + V(|phi|^2) / 2.
// The leading coefficient is the continuum wave Lagrangian.
inline HSeries expand_discrete_lagrangian(const CtxPtr& ctx, int order) {
    require_wave_ctx(ctx);
    if (order < 0) throw TruncError("negative truncation order");

    auto quad_difference = [&](const mpq_class& a, const mpq_class& b, const RatFun& step) {
        std::vector<HSeries> diff = expand_shift(ctx, a, b, order + 1);
        HSeries quad = HSeries::zero(ctx, order + 2);
        for (int j = 0; j < 2; ++j) {
            diff[j] -= HSeries::constant(Expr::jet(ctx, j + 1, 0), 0, order + 1);
            quad += diff[j] * diff[j];
        }
        return quad.shifted(-2) / (ctx->rat(2) * step * step);
    };

    HSeries lag = quad_difference(-1, 0, ctx->dt()) - quad_difference(0, -1, ctx->dx());
    lag += HSeries::constant(Expr::pot(ctx, 0) * ctx->rat(1, 2), 0, order);
    return lag.truncated(order);
}

// Series of the scheme residual restricted to the wave, written so that the
// leading coefficient is the travelling wave equation
//   (alpha^2 + V') phi + 2 c alpha J phi' - (c^2 - 1) phi''.
// Component j of the result multiplies phi_j in the symmetric difference
//   sum of [D+D- in t] - [D+D- in x] - grad W(u), conjugated by R(t) and
// negated.
inline std::vector<HSeries> expand_functional_equation(const CtxPtr& ctx, int order) {
    require_wave_ctx(ctx);
    if (order < 0) throw TruncError("negative truncation order");

    auto second_difference = [&](const mpq_class& a, const mpq_class& b, const RatFun& step) {
        std::vector<HSeries> plus = expand_shift(ctx, a, b, order + 2);
        std::vector<HSeries> minus = expand_shift(ctx, -a, -b, order + 2);
        std::vector<HSeries> out;
        out.reserve(2);
        for (int j = 0; j < 2; ++j) {
            HSeries s = plus[j] + minus[j];
            s -= HSeries::constant(Expr::jet(ctx, j + 1, 0) * ctx->rat(2), 0, order + 2);
            out.push_back(s.shifted(-2) / (step * step));
        }
        return out;
    };

    std::vector<HSeries> time2 = second_difference(1, 0, ctx->dt());
    std::vector<HSeries> space2 = second_difference(0, 1, ctx->dx());

    std::vector<HSeries> res;
    res.reserve(2);
    for (int j = 0; j < 2; ++j) {
        HSeries grad = HSeries::constant(Expr::pot(ctx, 1) * Expr::jet(ctx, j + 1, 0), 0, order);
        res.push_back((space2[j] - time2[j] + grad).truncated(order));
    }
    return res;
}

// Removes every h coefficient whose Euler-Lagrange expression vanishes
// identically.  Such terms are total derivatives and do not affect the
// variational content of the series.
inline HSeries drop_null_terms(const HSeries& lag) {
    HSeries out = HSeries::zero(lag.ctx(), lag.trunc_order());
    for (const auto& [k, coeff] : lag.coeffs()) {
        bool null = true;
        for (const Expr& comp : euler_system(coeff)) {
            if (!comp.is_zero()) {
                null = false;
                break;
            }
        }
        if (!null) out.set_coeff(k, coeff);
    }
    return out;
}

} // namespace modlag
