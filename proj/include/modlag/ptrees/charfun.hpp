// SPDX-License-Identifier: MIT
// Characteristic functions of the five-point scheme without rotation: the
// scheme applied to a travelling wave is equivalent to a single functional
// equation   sum_k rho_k phi(xi + theta_k * step * h) = step^2 h^2 *
// [sigma-translate of grad W], so the linear part of the stencil is encoded
// by a pair of generalized polynomials (rho, sigma) in a shift variable tau,
// where tau^theta acts on functions as translation by theta * step * h.

#pragma once

#include <utility>
#include <vector>

#include "modlag/jets/jets.hpp"
#include "modlag/stencil/problem.hpp"

namespace modlag {

// One term weight * tau^exponent of a generalized polynomial; exponents are
// rational functions of the parameters, not just integers.
struct CharacteristicTerm {
    RatFun exponent;
    RatFun weight;
};

struct CharacteristicPair {
    std::vector<CharacteristicTerm> rho;
    std::vector<CharacteristicTerm> sigma;
    RatFun step;          // translation unit: tau^theta shifts xi by theta*step*h
    RatFun normalization; // the grad-W side carries normalization * h^2

    // Value of a generalized polynomial at tau = 1 (sum of weights).
    static RatFun value_at_one(const std::vector<CharacteristicTerm>& terms) {
        if (terms.empty()) throw AlgebraError("empty characteristic polynomial");
        RatFun sum = terms.front().weight;
        for (std::size_t i = 1; i < terms.size(); ++i) sum = sum + terms[i].weight;
        return sum;
    }
};

namespace detail {

inline void require_characteristic_scope(const StencilProblem& p) {
    if (!p.is_five_point())
        throw AlgebraError("characteristic functions are defined for the five-point problem");
    if (!p.alpha_is_zero())
        throw AlgebraError("characteristic functions need the rotation-free problem (alpha = 0)");
}

// Merge terms with equal exponents and drop zero weights.
inline std::vector<CharacteristicTerm> collect_terms(std::vector<CharacteristicTerm> terms) {
    std::vector<CharacteristicTerm> out;
    for (CharacteristicTerm& t : terms) {
        if (t.weight.is_zero()) continue;
        bool merged = false;
        for (CharacteristicTerm& o : out) {
            if ((o.exponent - t.exponent).is_zero()) {
                o.weight = o.weight + t.weight;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(t));
    }
    std::erase_if(out, [](const CharacteristicTerm& t) { return t.weight.is_zero(); });
    return out;
}

} // namespace detail

// The pair (rho, sigma) of the five-point scheme on a travelling wave.  The
// step is 2*c*dt (twice the characteristic offset), the five rho exponents
// sit at 0, 1/2 -+ dx/(2*c*dt), 1/2, 1, and sigma is the half-step
// monomial.  rho(1) = 0 expresses consistency.
inline CharacteristicPair characteristic_functions(const StencilProblem& p) {
    detail::require_characteristic_scope(p);
    const CtxPtr& ctx = p.ctx();

    const RatFun c2 = ctx->c() * ctx->c();
    const RatFun cdt = ctx->c() * ctx->dt();
    const RatFun step = ctx->rat(2) * cdt;
    const RatFun half = ctx->rat(1, 2);
    const RatFun ratio = c2 * ctx->dt() * ctx->dt() * (ctx->dx() * ctx->dx()).inv();
    const RatFun spread = ctx->dx() * (step).inv(); // dx / (2 c dt)

    CharacteristicPair out;
    out.step = step;
    out.normalization = ctx->rat(4) * c2 * ctx->dt() * ctx->dt();
    out.rho = detail::collect_terms({
        {ctx->zero(), ctx->rat(4) * c2},
        {half - spread, -ctx->rat(4) * ratio},
        {half, ctx->rat(8) * (ratio - c2)},
        {half + spread, -ctx->rat(4) * ratio},
        {ctx->one(), ctx->rat(4) * c2},
    });
    out.sigma = {{half, ctx->one()}};
    return out;
}

// Special-case variants.  The collapse dx = c*dt merges the inner exponents
// onto 0 and 1, leaving the three-point pair; c = 0 has no travelling
// characteristic and is rejected; alpha = 0 is the standing assumption.
inline CharacteristicPair characteristic_functions(const StencilProblem& p, SpecialCase sc) {
    if (sc == SpecialCase::c0)
        throw AlgebraError("characteristic functions need a nonzero wave speed");
    CharacteristicPair out = characteristic_functions(p);
    if (sc == SpecialCase::alpha0) return out;

    auto impose = [&](std::vector<CharacteristicTerm>& terms) {
        for (CharacteristicTerm& t : terms) {
            t.exponent = detail::impose_case(t.exponent, sc);
            t.weight = detail::impose_case(t.weight, sc);
        }
        terms = detail::collect_terms(std::move(terms));
    };
    impose(out.rho);
    impose(out.sigma);
    out.step = detail::impose_case(out.step, sc);
    out.normalization = detail::impose_case(out.normalization, sc);
    return out;
}

// Translation operator on series: T_{s h} f = sum_n (s h)^n / n! * d^n f,
// with d the total xi-derivative.  Truncation is inherited from f.
inline HSeries translate_series(const HSeries& f, const RatFun& shift) {
    const CtxPtr& ctx = f.ctx();
    const int trunc = f.trunc_order();
    HSeries out = HSeries::zero(ctx, trunc);
    HSeries deriv = f;
    RatFun pow = ctx->one();
    mpq_class fact = 1;
    for (int n = 0; n <= trunc; ++n) {
        if (n > 0) {
            fact *= n;
            deriv = deriv.map_coeffs([](const Expr& e) { return total_derivative(e); });
            pow = pow * shift;
        }
        out += (deriv * (pow * ctx->rat(1 / fact))).shifted(n).truncated(trunc);
    }
    return out;
}

// Residual of the defining identity of (rho, sigma), as a series:
//   sum_k rho_k T_{theta_k step h} phi
//     - normalization h^2 T_{step h / 2} (grad W - functional residual).
// Identically zero through the problem's truncation order whether or not
// phi solves anything; on solutions the last translate reduces to grad W.
inline std::vector<HSeries> characteristic_defect(const StencilProblem& p) {
    detail::require_characteristic_scope(p);
    if (p.order() < 2)
        throw TruncError("the characteristic identity needs truncation order at least 2");
    const CtxPtr& ctx = p.ctx();
    const int order = p.order();
    const CharacteristicPair cf = characteristic_functions(p);
    const std::vector<HSeries> residual = expand_functional_equation(p);

    std::vector<HSeries> out;
    out.reserve(static_cast<std::size_t>(ctx->dim()));
    for (int j = 1; j <= ctx->dim(); ++j) {
        HSeries phi = HSeries::constant(Expr::jet(ctx, j, 0), 0, order);
        HSeries acc = HSeries::zero(ctx, order);
        for (const CharacteristicTerm& t : cf.rho)
            acc += translate_series(phi, t.exponent * cf.step) * t.weight;

        HSeries grad = HSeries::constant(Expr::pot(ctx, 1) * Expr::jet(ctx, j, 0), 0, order - 2);
        HSeries inner = grad - residual[static_cast<std::size_t>(j - 1)].truncated(order - 2);
        acc -= translate_series(inner, cf.step * ctx->rat(1, 2)).shifted(2) * cf.normalization;
        out.push_back(acc.truncated(order));
    }
    return out;
}

} // namespace modlag
