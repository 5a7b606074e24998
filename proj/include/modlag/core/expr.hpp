// SPDX-License-Identifier: MIT
// Polynomial expressions in the jet variables of the field and in the
// derivatives of the radial potential, with rational-function coefficients.
//
// A jet factor phi_j^(m) is a component index j (1-based) together with a
// derivative order m; a potential factor V^(k) stands for the k-th derivative
// of the potential evaluated at |phi|^2, so differentiating it in phi_j uses
// the chain rule with inner derivative 2 phi_j. Terms are kept merged and
// sorted (graded by total jet degree, ties broken factor-wise), so equal
// expressions have equal term lists and the zero test is a structural check.

#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "modlag/core/context.hpp"

namespace modlag {

// Factor identity packed into one integer. Jet factors sort before potential
// factors; among jets, component index dominates derivative order.
struct FactorKey {
    std::uint32_t raw;

    static FactorKey jet(int comp, int order) {
        return {static_cast<std::uint32_t>((comp << 12) | order)};
    }
    static FactorKey pot(int order) {
        return {0x80000000u | static_cast<std::uint32_t>(order)};
    }

    bool is_jet() const { return (raw & 0x80000000u) == 0; }
    int comp() const { return static_cast<int>((raw >> 12) & 0xFFFu); }
    int order() const { return static_cast<int>(raw & 0xFFFu); }
    int pot_order() const { return static_cast<int>(raw & 0x7FFFFFFFu); }

    friend bool operator==(FactorKey a, FactorKey b) { return a.raw == b.raw; }
    friend bool operator<(FactorKey a, FactorKey b) { return a.raw < b.raw; }
};

struct Factor {
    FactorKey key;
    std::uint16_t exp;
};

// A power product of factors, sorted by key, exponents positive.
class Mono {
public:
    Mono() = default;

    static Mono unit() { return Mono(); }

    static Mono single(FactorKey k, int exp = 1) {
        Mono m;
        if (exp > 0) m.f_.push_back({k, static_cast<std::uint16_t>(exp)});
        return m;
    }

    const std::vector<Factor>& factors() const { return f_; }
    bool is_unit() const { return f_.empty(); }

    int jet_degree() const {
        int d = 0;
        for (const auto& f : f_)
            if (f.key.is_jet()) d += f.exp;
        return d;
    }

    int max_jet_order() const {
        int m = -1;
        for (const auto& f : f_)
            if (f.key.is_jet()) m = std::max(m, f.key.order());
        return m;
    }

    int exponent_of(FactorKey k) const {
        for (const auto& f : f_)
            if (f.key == k) return f.exp;
        return 0;
    }

    static Mono mul(const Mono& a, const Mono& b) {
        Mono r;
        r.f_.reserve(a.f_.size() + b.f_.size());
        std::size_t i = 0, j = 0;
        while (i < a.f_.size() || j < b.f_.size()) {
            if (j >= b.f_.size() || (i < a.f_.size() && a.f_[i].key < b.f_[j].key)) {
                r.f_.push_back(a.f_[i++]);
            } else if (i >= a.f_.size() || b.f_[j].key < a.f_[i].key) {
                r.f_.push_back(b.f_[j++]);
            } else {
                int e = a.f_[i].exp + b.f_[j].exp;
                if (e > 0xFFFF) throw AlgebraError("factor exponent overflow");
                r.f_.push_back({a.f_[i].key, static_cast<std::uint16_t>(e)});
                ++i, ++j;
            }
        }
        return r;
    }

    // Removes one power of k (exponent must be positive).
    Mono without_one(FactorKey k) const {
        Mono r;
        for (const auto& f : f_) {
            if (f.key == k) {
                if (f.exp > 1) r.f_.push_back({f.key, static_cast<std::uint16_t>(f.exp - 1)});
            } else {
                r.f_.push_back(f);
            }
        }
        return r;
    }

    // Removes the factor k entirely.
    Mono without_all(FactorKey k) const {
        Mono r;
        for (const auto& f : f_)
            if (!(f.key == k)) r.f_.push_back(f);
        return r;
    }

    friend bool operator==(const Mono& a, const Mono& b) {
        if (a.f_.size() != b.f_.size()) return false;
        for (std::size_t i = 0; i < a.f_.size(); ++i)
            if (!(a.f_[i].key == b.f_[i].key) || a.f_[i].exp != b.f_[i].exp) return false;
        return true;
    }

    // Total order: graded by jet degree, then factor-wise lexicographic.
    static int compare(const Mono& a, const Mono& b) {
        int da = a.jet_degree(), db = b.jet_degree();
        if (da != db) return da < db ? -1 : 1;
        std::size_t n = std::min(a.f_.size(), b.f_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.f_[i].key.raw != b.f_[i].key.raw)
                return a.f_[i].key.raw < b.f_[i].key.raw ? -1 : 1;
            if (a.f_[i].exp != b.f_[i].exp) return a.f_[i].exp < b.f_[i].exp ? -1 : 1;
        }
        if (a.f_.size() != b.f_.size()) return a.f_.size() < b.f_.size() ? -1 : 1;
        return 0;
    }

private:
    std::vector<Factor> f_;
};

class Expr {
public:
    using Term = std::pair<Mono, RatFun>;

    Expr() = default;

    static Expr zero(CtxPtr ctx) {
        Expr e;
        e.ctx_ = std::move(ctx);
        return e;
    }

    static Expr scalar(CtxPtr ctx, RatFun c) {
        Expr e = zero(std::move(ctx));
        if (!c.is_zero()) e.t_.push_back({Mono::unit(), std::move(c)});
        return e;
    }

    static Expr one(CtxPtr ctx) { return scalar(ctx, ctx->one()); }

    static Expr jet(CtxPtr ctx, int comp, int order, int exp = 1) {
        if (comp < 1 || comp > ctx->dim()) throw ContextError("component index out of range");
        if (order < 0 || order > ctx->jet_cap())
            throw OrderError("jet order " + std::to_string(order) + " exceeds cap " +
                             std::to_string(ctx->jet_cap()));
        Expr e = zero(ctx);
        e.t_.push_back({Mono::single(FactorKey::jet(comp, order), exp), ctx->one()});
        return e;
    }

    static Expr pot(CtxPtr ctx, int order) {
        if (order < 0 || order > ctx->pot_cap())
            throw OrderError("potential derivative order " + std::to_string(order) +
                             " exceeds cap " + std::to_string(ctx->pot_cap()));
        Expr e = zero(ctx);
        e.t_.push_back({Mono::single(FactorKey::pot(order)), ctx->one()});
        return e;
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    bool is_scalar() const {
        return t_.empty() || (t_.size() == 1 && t_[0].first.is_unit());
    }

    RatFun scalar_value() const {
        if (t_.empty()) return ctx_ ? ctx_->zero() : RatFun();
        if (!is_scalar()) throw AlgebraError("expression is not a scalar");
        return t_[0].second;
    }

    int max_jet_order() const {
        int m = -1;
        for (const auto& t : t_) m = std::max(m, t.first.max_jet_order());
        return m;
    }

    int jet_degree() const {
        int d = 0;
        for (const auto& t : t_) d = std::max(d, t.first.jet_degree());
        return d;
    }

    bool depends_on(FactorKey k) const {
        for (const auto& t : t_)
            if (t.first.exponent_of(k) > 0) return true;
        return false;
    }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.ctx_ && b.ctx_) require_same(a.ctx_, b.ctx_);
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (!(a.t_[i].first == b.t_[i].first) || a.t_[i].second != b.t_[i].second)
                return false;
        return true;
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    friend Expr operator-(const Expr& a) {
        Expr r = a;
        for (auto& t : r.t_) t.second = -t.second;
        return r;
    }

    friend Expr operator+(const Expr& a, const Expr& b) { return merge(a, b, false); }
    friend Expr operator-(const Expr& a, const Expr& b) { return merge(a, b, true); }

    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }

    friend Expr operator*(const Expr& a, const Expr& b) {
        CtxPtr ctx = joined(a, b);
        if (!ctx) throw ContextError("expression without context");
        if (a.is_zero() || b.is_zero()) return zero(ctx);
        std::map<Mono, RatFun, MonoLess> acc;
        for (const auto& ta : a.t_)
            for (const auto& tb : b.t_) {
                Mono m = Mono::mul(ta.first, tb.first);
                RatFun c = ta.second * tb.second;
                auto it = acc.find(m);
                if (it == acc.end()) acc.emplace(std::move(m), std::move(c));
                else it->second += c;
            }
        return from_map(ctx, std::move(acc));
    }

    friend Expr operator*(const RatFun& c, const Expr& a) {
        Expr r = a;
        if (c.is_zero()) return zero(a.ctx_);
        for (auto& t : r.t_) t.second *= c;
        return r;
    }
    friend Expr operator*(const Expr& a, const RatFun& c) { return c * a; }

    // Division by a scalar expression only.
    friend Expr operator/(const Expr& a, const Expr& b) {
        if (!b.is_scalar() || b.is_zero())
            throw AlgebraError("division is only defined by nonzero scalar expressions");
        return a * b.scalar_value().inv();
    }
    friend Expr operator/(const Expr& a, const RatFun& c) { return a * c.inv(); }

    static Expr pow(const Expr& a, int n) {
        if (n < 0) {
            if (!a.is_scalar()) throw AlgebraError("negative power of a non-scalar expression");
            return scalar(a.ctx_, RatFun::pow(a.scalar_value(), n));
        }
        Expr r = one(a.ctx_), base = a;
        while (n > 0) {
            if (n & 1) r = r * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return r;
    }

    // Partial derivative in the jet variable phi_comp^(order). For order zero
    // the chain rule through the potential argument |phi|^2 applies.
    Expr pdiff(int comp, int order) const {
        FactorKey k = FactorKey::jet(comp, order);
        Expr r = zero(ctx_);
        for (const auto& t : t_) {
            int e = t.first.exponent_of(k);
            if (e > 0) {
                Expr piece = zero(ctx_);
                piece.t_.push_back(
                    {Mono::mul(t.first.without_one(k), Mono::unit()),
                     t.second * ctx_->rat(e)});
                r += piece;
            }
            if (order == 0) {
                // d/dphi_j V^(k) = 2 phi_j V^(k+1)
                for (const auto& f : t.first.factors()) {
                    if (f.key.is_jet()) continue;
                    int kv = f.key.pot_order();
                    Expr piece = zero(ctx_);
                    Mono rest = t.first.without_one(f.key);
                    rest = Mono::mul(rest, Mono::single(FactorKey::pot(check_pot(kv + 1))));
                    rest = Mono::mul(rest, Mono::single(FactorKey::jet(comp, 0)));
                    piece.t_.push_back({std::move(rest), t.second * ctx_->rat(2 * f.exp)});
                    r += piece;
                }
            }
        }
        return r;
    }

    // Substitutes expressions for jet variables; keys absent from the map are
    // kept. Substitution respects powers.
    Expr substitute_jets(const std::map<std::uint32_t, Expr>& map) const {
        Expr r = zero(ctx_);
        for (const auto& t : t_) {
            Expr term = scalar(ctx_, t.second);
            for (const auto& f : t.first.factors()) {
                auto it = f.key.is_jet() ? map.find(f.key.raw) : map.end();
                if (it == map.end()) {
                    Expr keep = zero(ctx_);
                    keep.t_.push_back({Mono::single(f.key, f.exp), ctx_->one()});
                    term = term * keep;
                } else {
                    require_same(ctx_, it->second.ctx_);
                    term = term * pow(it->second, f.exp);
                }
            }
            r += term;
        }
        return r;
    }

    // Applies a coefficient map to every term (parameter substitution and the
    // like); drops terms whose coefficient maps to zero.
    template <class F>
    Expr map_coeffs(F&& f) const {
        Expr r = zero(ctx_);
        for (const auto& t : t_) {
            RatFun c = f(t.second);
            if (!c.is_zero()) r.t_.push_back({t.first, std::move(c)});
        }
        return r;
    }

private:
    struct MonoLess {
        bool operator()(const Mono& a, const Mono& b) const { return Mono::compare(a, b) < 0; }
    };

    int check_pot(int k) const {
        if (k > ctx_->pot_cap())
            throw OrderError("potential derivative order " + std::to_string(k) +
                             " exceeds cap " + std::to_string(ctx_->pot_cap()));
        return k;
    }

    static CtxPtr joined(const Expr& a, const Expr& b) {
        if (a.ctx_ && b.ctx_) {
            require_same(a.ctx_, b.ctx_);
            return a.ctx_;
        }
        return a.ctx_ ? a.ctx_ : b.ctx_;
    }

    static Expr from_map(CtxPtr ctx, std::map<Mono, RatFun, MonoLess> m) {
        Expr e = zero(std::move(ctx));
        e.t_.reserve(m.size());
        for (auto it = m.rbegin(); it != m.rend(); ++it)
            if (!it->second.is_zero()) e.t_.push_back({it->first, std::move(it->second)});
        return e;
    }

    static Expr merge(const Expr& a, const Expr& b, bool subtract) {
        CtxPtr ctx = joined(a, b);
        Expr r = zero(ctx);
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            int cp;
            if (i >= a.t_.size()) cp = -1;
            else if (j >= b.t_.size()) cp = 1;
            else cp = Mono::compare(a.t_[i].first, b.t_[j].first);
            if (cp > 0) {
                r.t_.push_back(a.t_[i++]);
            } else if (cp < 0) {
                Term t = b.t_[j++];
                if (subtract) t.second = -t.second;
                r.t_.push_back(std::move(t));
            } else {
                RatFun c = subtract ? a.t_[i].second - b.t_[j].second
                                    : a.t_[i].second + b.t_[j].second;
                if (!c.is_zero()) r.t_.push_back({a.t_[i].first, std::move(c)});
                ++i, ++j;
            }
        }
        return r;
    }

    CtxPtr ctx_;
    std::vector<Term> t_;
};

// Convenience builders.
inline Expr jet(const CtxPtr& ctx, int comp, int order = 0) { return Expr::jet(ctx, comp, order); }
inline Expr pot(const CtxPtr& ctx, int order) { return Expr::pot(ctx, order); }
inline Expr scalar(const CtxPtr& ctx, const RatFun& c) { return Expr::scalar(ctx, c); }

} // namespace modlag
