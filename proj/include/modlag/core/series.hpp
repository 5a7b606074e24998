// SPDX-License-Identifier: MIT
// Truncated power series in the grid-refinement parameter h with jet
// expression coefficients.
//
// trunc_order() is the highest power whose coefficient is reliable;
// coefficients beyond it are unknown rather than zero. Sums keep the smaller
// truncation; products refine it with the factor valuations, so multiplying
// by h^k buys k extra reliable orders.

#pragma once

#include <map>
#include <vector>

#include "modlag/core/expr.hpp"

namespace modlag {

// Sentinel for objects that are exact (polynomials in h, typically constants).
inline constexpr int trunc_inf = 1 << 20;

class HSeries {
public:
    HSeries() = default;

    HSeries(CtxPtr ctx, int trunc) : ctx_(std::move(ctx)), trunc_(trunc) {
        if (trunc < 0) throw TruncError("negative truncation order");
    }

    // Embeds an exact expression as the h^shift coefficient.
    static HSeries constant(Expr e, int shift = 0, int trunc = trunc_inf) {
        HSeries s(e.ctx(), trunc);
        if (!e.is_zero()) s.c_[shift] = std::move(e);
        return s;
    }

    static HSeries zero(CtxPtr ctx, int trunc = trunc_inf) { return HSeries(std::move(ctx), trunc); }

    const CtxPtr& ctx() const { return ctx_; }
    int trunc_order() const { return trunc_; }

    bool is_zero() const { return c_.empty(); }

    // Smallest power with a nonzero coefficient (trunc_inf when none).
    int valuation() const { return c_.empty() ? trunc_inf : c_.begin()->first; }

    const std::map<int, Expr>& coeffs() const { return c_; }

    Expr coeff(int k) const {
        if (k > trunc_)
            throw TruncError("coefficient of h^" + std::to_string(k) +
                             " requested beyond truncation order " + std::to_string(trunc_));
        auto it = c_.find(k);
        return it == c_.end() ? Expr::zero(ctx_) : it->second;
    }

    HSeries& set_coeff(int k, Expr e) {
        if (k > trunc_) throw TruncError("coefficient set beyond truncation order");
        require_same(ctx_, e.ctx());
        if (e.is_zero()) c_.erase(k);
        else c_[k] = std::move(e);
        return *this;
    }

    HSeries truncated(int n) const {
        HSeries r(ctx_, std::min(n, trunc_));
        for (const auto& [k, e] : c_)
            if (k <= r.trunc_) r.c_[k] = e;
        return r;
    }

    // Multiplication by h^k.
    HSeries shifted(int k) const {
        HSeries r(ctx_, std::min(trunc_ + k, trunc_inf));
        for (const auto& [p, e] : c_) {
            if (p + k < 0) throw TruncError("negative power of h");
            r.c_[p + k] = e;
        }
        return r;
    }

    friend bool operator==(const HSeries& a, const HSeries& b) {
        if (a.trunc_ != b.trunc_) return false;
        return a.c_ == b.c_;
    }

    friend HSeries operator-(const HSeries& a) {
        HSeries r = a;
        for (auto& [k, e] : r.c_) e = -e;
        return r;
    }

    friend HSeries operator+(const HSeries& a, const HSeries& b) { return merge(a, b, false); }
    friend HSeries operator-(const HSeries& a, const HSeries& b) { return merge(a, b, true); }

    HSeries& operator+=(const HSeries& b) { return *this = *this + b; }
    HSeries& operator-=(const HSeries& b) { return *this = *this - b; }

    friend HSeries operator*(const HSeries& a, const HSeries& b) {
        CtxPtr ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        if (a.ctx_ && b.ctx_) require_same(a.ctx_, b.ctx_);
        long tr = std::min<long>(
            std::min<long>(static_cast<long>(a.trunc_) + b.valuation(),
                           static_cast<long>(b.trunc_) + a.valuation()),
            trunc_inf);
        HSeries r(ctx, static_cast<int>(tr));
        for (const auto& [ka, ea] : a.c_)
            for (const auto& [kb, eb] : b.c_) {
                if (ka + kb > r.trunc_) continue;
                Expr p = ea * eb;
                if (p.is_zero()) continue;
                auto it = r.c_.find(ka + kb);
                if (it == r.c_.end()) r.c_[ka + kb] = std::move(p);
                else {
                    it->second += p;
                    if (it->second.is_zero()) r.c_.erase(it);
                }
            }
        return r;
    }

    friend HSeries operator*(const Expr& e, const HSeries& a) {
        HSeries r(a.ctx_, a.trunc_);
        for (const auto& [k, ce] : a.c_) {
            Expr p = e * ce;
            if (!p.is_zero()) r.c_[k] = std::move(p);
        }
        return r;
    }
    friend HSeries operator*(const HSeries& a, const Expr& e) { return e * a; }

    friend HSeries operator*(const RatFun& c, const HSeries& a) {
        HSeries r(a.ctx_, a.trunc_);
        if (c.is_zero()) return r;
        for (const auto& [k, ce] : a.c_) r.c_[k] = ce * c;
        return r;
    }
    friend HSeries operator*(const HSeries& a, const RatFun& c) { return c * a; }
    friend HSeries operator/(const HSeries& a, const RatFun& c) { return c.inv() * a; }

    static HSeries pow(const HSeries& a, int n) {
        if (n < 0) throw AlgebraError("negative power of a series");
        CtxPtr ctx = a.ctx_;
        HSeries r = constant(Expr::one(ctx));
        HSeries base = a;
        while (n > 0) {
            if (n & 1) r = r * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return r;
    }

    // Substitutes series for jet variables, coefficient by coefficient.
    HSeries substitute_jets(const std::map<std::uint32_t, HSeries>& map) const {
        HSeries acc = zero(ctx_, trunc_);
        for (const auto& [k, e] : c_) {
            for (const auto& term : e.terms()) {
                HSeries t = constant(Expr::scalar(ctx_, term.second));
                for (const auto& f : term.first.factors()) {
                    auto it = f.key.is_jet() ? map.find(f.key.raw) : map.end();
                    if (it == map.end()) t = t * factor_expr(ctx_, f);
                    else t = t * pow(it->second, f.exp);
                }
                acc += t.shifted(k).truncated(trunc_);
            }
        }
        // The result can not be more reliable than this series itself or the
        // substituted values allow; the arithmetic above already accounts for
        // the values' truncations through the product rule.
        return acc;
    }

    // Applies an expression-level map to every coefficient.
    template <class F>
    HSeries map_coeffs(F&& f) const {
        HSeries r(ctx_, trunc_);
        for (const auto& [k, e] : c_) {
            Expr v = f(e);
            if (!v.is_zero()) r.c_[k] = std::move(v);
        }
        return r;
    }

private:
    static Expr factor_expr(const CtxPtr& ctx, const Factor& f) {
        Expr base = f.key.is_jet() ? Expr::jet(ctx, f.key.comp(), f.key.order())
                                   : Expr::pot(ctx, f.key.pot_order());
        return Expr::pow(base, f.exp);
    }

    static HSeries merge(const HSeries& a, const HSeries& b, bool subtract) {
        CtxPtr ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        if (a.ctx_ && b.ctx_) require_same(a.ctx_, b.ctx_);
        HSeries r(ctx, std::min(a.trunc_, b.trunc_));
        for (const auto& [k, e] : a.c_)
            if (k <= r.trunc_) r.c_[k] = e;
        for (const auto& [k, e] : b.c_) {
            if (k > r.trunc_) continue;
            auto it = r.c_.find(k);
            Expr v = subtract ? -e : e;
            if (it == r.c_.end()) {
                if (!v.is_zero()) r.c_[k] = std::move(v);
            } else {
                it->second += v;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
        return r;
    }

    CtxPtr ctx_;
    std::map<int, Expr> c_;
    int trunc_ = trunc_inf;
};

// Potential composition: expands V^(k) along a perturbed argument series.
// The argument must equal |phi|^2 at leading order; the deviation D (positive
// valuation in h) feeds the Taylor series
//   V^(k)(arg) = sum_m V^(k+m)(|phi|^2) D^m / m!.
HSeries expand_potential(const CtxPtr& ctx, int k, const HSeries& arg);

inline Expr potential_argument(const CtxPtr& ctx) {
    Expr s = Expr::zero(ctx);
    for (int j = 1; j <= ctx->dim(); ++j) s += Expr::jet(ctx, j, 0) * Expr::jet(ctx, j, 0);
    return s;
}

// Parameter substitution applied to every coefficient.
inline Expr subst_param(const Expr& e, int var, const Poly& value) {
    return e.map_coeffs([&](const RatFun& c) { return c.subst(var, value); });
}

inline HSeries subst_param(const HSeries& s, int var, const Poly& value) {
    return s.map_coeffs([&](const Expr& e) { return subst_param(e, var, value); });
}

inline HSeries expand_potential(const CtxPtr& ctx, int k, const HSeries& arg) {
    HSeries dev = arg - HSeries::constant(potential_argument(ctx));
    if (!dev.is_zero() && dev.valuation() <= 0)
        throw SubstError("potential argument must match |phi|^2 at leading order");
    HSeries acc = HSeries::constant(Expr::pot(ctx, k));
    acc = acc.truncated(arg.trunc_order());
    const int tr = acc.trunc_order();
    HSeries devpow = HSeries::constant(Expr::one(ctx));
    mpz_class fact(1);
    for (int m = 1;; ++m) {
        devpow = devpow * dev;
        if (devpow.is_zero() || devpow.valuation() > tr) break;
        if (k + m > ctx->pot_cap())
            throw OrderError("potential expansion needs derivative order " +
                             std::to_string(k + m) + " beyond cap " +
                             std::to_string(ctx->pot_cap()));
        fact *= m;
        mpq_class inv(mpz_class(1), fact);
        inv.canonicalize();
        acc += (Expr::pot(ctx, k + m) * ctx->rat(inv)) * devpow;
    }
    return acc;
}

} // namespace modlag
