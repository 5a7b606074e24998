// SPDX-License-Identifier: MIT
// The discrete problem family: a linear stencil acting on the rotating
// travelling wave, balancing the potential gradient.  A stencil is a list of
// terms (offset, rotation, weight); the term samples the wave profile at
// xi + offset*h, conjugated by the rotation power R(rotation * h * dt).  The
// five-point scheme of the wave equation is the built-in member; custom
// stencils generalize it.

#pragma once

#include <utility>
#include <vector>

#include "modlag/stencil/cases.hpp"
#include "modlag/stencil/expand.hpp"

namespace modlag {

struct StencilTerm {
    RatFun offset;   // sample position in xi, in units of h
    int rotation;    // power k of the conjugation R(k * h * dt)
    RatFun weight;   // scalar multiplier of the sample
};

class StencilProblem {
  public:
    // The five-point scheme of the nonlinear wave equation restricted to the
    // wave: second difference in time minus second difference in space,
    // balancing grad W.
    static StencilProblem five_point(CtxPtr ctx, int order, bool alpha_zero = false) {
        StencilProblem p(std::move(ctx), order, alpha_zero);
        p.five_point_ = true;
        const CtxPtr& c = p.ctx_;
        RatFun cdt = c->c() * c->dt();
        RatFun wt = (c->dt() * c->dt()).inv();
        RatFun wx = (c->dx() * c->dx()).inv();
        p.terms_ = {
            {cdt, -1, wt},           {-cdt, 1, wt},         {c->zero(), 0, -(wt + wt)},
            {-c->dx(), 0, -wx},      {c->dx(), 0, -wx},     {c->zero(), 0, wx + wx},
        };
        return p;
    }

    static StencilProblem custom(CtxPtr ctx, int order, std::vector<StencilTerm> terms,
                                 bool alpha_zero = false) {
        StencilProblem p(std::move(ctx), order, alpha_zero);
        p.terms_ = std::move(terms);
        p.validate_moments();
        return p;
    }

    const CtxPtr& ctx() const { return ctx_; }
    int order() const { return order_; }
    bool alpha_is_zero() const { return alpha_zero_; }
    bool is_five_point() const { return five_point_; }
    const std::vector<StencilTerm>& terms() const { return terms_; }

  private:
    StencilProblem(CtxPtr ctx, int order, bool alpha_zero)
        : ctx_(std::move(ctx)), order_(order), alpha_zero_(alpha_zero) {
        require_wave_ctx(ctx_);
        if (order_ < 0) throw TruncError("negative truncation order");
    }

    // A stencil stands in for a second-order operator, so its zeroth and
    // first moments must vanish: sum w = 0 (consistency), sum w*offset = 0
    // and sum w*rotation = 0 (no first-derivative or rotation-rate leakage
    // into the leading balance).
    void validate_moments() const {
        RatFun m0 = ctx_->zero(), m1 = ctx_->zero(), mr = ctx_->zero();
        for (const StencilTerm& t : terms_) {
            m0 = m0 + t.weight;
            m1 = m1 + t.weight * t.offset;
            mr = mr + t.weight * ctx_->rat(t.rotation);
        }
        if (!m0.is_zero() || !m1.is_zero() || !mr.is_zero())
            throw AlgebraError(
                "stencil moments do not vanish: the terms must cancel through first order");
    }

    CtxPtr ctx_;
    int order_ = 0;
    bool alpha_zero_ = false;
    bool five_point_ = false;
    std::vector<StencilTerm> terms_;
};

namespace detail {

// Series of w * R(rotation h dt) phi(xi + offset h), truncated at the order.
inline std::vector<HSeries> expand_stencil_term(const CtxPtr& ctx, const StencilTerm& term,
                                                int order) {
    const RatFun rot_step = ctx->rat(term.rotation) * ctx->alpha() * ctx->dt();

    std::vector<HSeries> out(2, HSeries::zero(ctx, order));
    mpq_class kfact = 1;
    RatFun rot_pow = ctx->one();
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            kfact *= k;
            rot_pow = rot_pow * rot_step;
        }
        const auto jk = rotation_power(k);
        mpq_class mfact = 1;
        RatFun off_pow = ctx->one();
        for (int m = 0; k + m <= order; ++m) {
            if (m > 0) {
                mfact *= m;
                off_pow = off_pow * term.offset;
            }
            const RatFun coeff = term.weight * rot_pow * off_pow * ctx->rat(1 / (kfact * mfact));
            if (coeff.is_zero()) continue;
            for (int row = 0; row < 2; ++row) {
                for (int col = 0; col < 2; ++col) {
                    if (jk[row][col] == 0) continue;
                    Expr e = Expr::jet(ctx, col + 1, m) * (coeff * ctx->rat(jk[row][col]));
                    out[static_cast<std::size_t>(row)].set_coeff(
                        k + m, out[static_cast<std::size_t>(row)].coeff(k + m) + e);
                }
            }
        }
    }
    return out;
}

} // namespace detail

// Residual series of the problem's functional equation, in the orientation
// whose leading coefficient is (alpha^2 + V')phi + 2 c alpha J phi' -
// (c^2-1) phi'': minus the stencil sum over h^2, plus the potential
// gradient.
inline std::vector<HSeries> expand_functional_equation(const StencilProblem& p) {
    const CtxPtr& ctx = p.ctx();
    const int order = p.order();
    if (p.is_five_point()) {
        std::vector<HSeries> res = expand_functional_equation(ctx, order);
        if (p.alpha_is_zero())
            for (HSeries& comp : res) comp = detail::impose_case(comp, SpecialCase::alpha0);
        return res;
    }

    std::vector<HSeries> sum(2, HSeries::zero(ctx, order + 2));
    for (const StencilTerm& t : p.terms()) {
        std::vector<HSeries> e = detail::expand_stencil_term(ctx, t, order + 2);
        for (int j = 0; j < 2; ++j) sum[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j)];
    }
    std::vector<HSeries> res;
    res.reserve(2);
    for (int j = 0; j < 2; ++j) {
        HSeries grad = HSeries::constant(Expr::pot(ctx, 1) * Expr::jet(ctx, j + 1, 0), 0, order);
        HSeries comp = (grad - sum[static_cast<std::size_t>(j)].shifted(-2)).truncated(order);
        if (p.alpha_is_zero()) comp = detail::impose_case(comp, SpecialCase::alpha0);
        res.push_back(std::move(comp));
    }
    return res;
}

// Action density of the problem; defined for the built-in five-point member
// only (a custom stencil declares no discrete action).
inline HSeries expand_discrete_lagrangian(const StencilProblem& p) {
    if (!p.is_five_point())
        throw AlgebraError("only the five-point problem carries a discrete action density");
    HSeries lag = expand_discrete_lagrangian(p.ctx(), p.order());
    if (p.alpha_is_zero()) lag = detail::impose_case(lag, SpecialCase::alpha0);
    return lag;
}

} // namespace modlag
