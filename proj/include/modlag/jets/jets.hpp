// SPDX-License-Identifier: MIT
// Calculus on jet expressions: total derivative in the wave variable, the
// variational derivative, and substitution helpers shared by the reduction
// and Hamiltonian modules.

#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "modlag/core/expr.hpp"

namespace modlag {

// d/dxi of an expression: every jet variable ticks up one derivative order,
// the potential factors follow the chain rule through |phi|^2.
inline Expr total_derivative(const Expr& e) {
    const CtxPtr& ctx = e.ctx();
    Expr r = Expr::zero(ctx);
    // A jet-free expression can still depend on phi through the potential
    // factors, so the order-zero pass always runs.
    int maxo = std::max(0, e.max_jet_order());
    for (int m = 0; m <= maxo; ++m)
        for (int j = 1; j <= ctx->dim(); ++j) {
            Expr d = e.pdiff(j, m);
            if (!d.is_zero()) r += d * Expr::jet(ctx, j, m + 1);
        }
    return r;
}

inline Expr total_derivative(const Expr& e, int times) {
    Expr r = e;
    for (int i = 0; i < times; ++i) r = total_derivative(r);
    return r;
}

// Variational derivative with respect to component j:
//   sum_i (-1)^i (d/dxi)^i d/dphi_j^(i).
inline Expr euler_operator(const Expr& e, int comp) {
    Expr r = Expr::zero(e.ctx());
    int maxo = std::max(0, e.max_jet_order());
    for (int i = 0; i <= maxo; ++i) {
        Expr term = total_derivative(e.pdiff(comp, i), i);
        if (i % 2) r -= term;
        else r += term;
    }
    return r;
}

inline std::vector<Expr> euler_system(const Expr& e) {
    std::vector<Expr> sys;
    for (int j = 1; j <= e.ctx()->dim(); ++j) sys.push_back(euler_operator(e, j));
    return sys;
}

// Jet substitution map phi_j^(m) -> expression.
class JetMap {
public:
    explicit JetMap(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    JetMap& set(int comp, int order, Expr value) {
        require_same(ctx_, value.ctx());
        m_[FactorKey::jet(comp, order).raw] = std::move(value);
        return *this;
    }

    bool has(int comp, int order) const {
        return m_.count(FactorKey::jet(comp, order).raw) > 0;
    }

    const Expr& get(int comp, int order) const {
        auto it = m_.find(FactorKey::jet(comp, order).raw);
        if (it == m_.end()) throw SubstError("jet substitution misses a required entry");
        return it->second;
    }

    Expr apply(const Expr& e) const {
        require_same(ctx_, e.ctx());
        return e.substitute_jets(m_);
    }

    const std::map<std::uint32_t, Expr>& raw() const { return m_; }
    const CtxPtr& ctx() const { return ctx_; }

private:
    CtxPtr ctx_;
    std::map<std::uint32_t, Expr> m_;
};

// Gradient with respect to the order-m jet of each component.
inline std::vector<Expr> jet_gradient(const Expr& e, int order) {
    std::vector<Expr> g;
    for (int j = 1; j <= e.ctx()->dim(); ++j) g.push_back(e.pdiff(j, order));
    return g;
}

} // namespace modlag
