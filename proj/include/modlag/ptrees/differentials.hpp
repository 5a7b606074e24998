// SPDX-License-Identifier: MIT
// Elementary differentials attached to bicoloured trees.  Every edge of the
// tree carries a summation index running over the field components; a black
// node of degree k contributes the k-th partial derivative of the potential
// density W(phi) = V(|phi|^2)/2 in its incident indices, and a white leaf
// contributes the first jet phi' in the index of its single edge.  The value
// of the full contraction does not depend on the choice of root.

#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "modlag/ptrees/trees.hpp"

namespace modlag {

// W(phi) = V(|phi|^2)/2, the density whose gradient V'(|phi|^2)*phi drives
// the wave equation.
inline Expr potential_density(const CtxPtr& ctx) {
    return Expr::pot(ctx, 0) / ctx->rat(2);
}

namespace detail {

// Memoised mixed partials of W with respect to the field components.  The
// partials commute, so the sorted index multiset is a sound cache key.
class WPartials {
  public:
    explicit WPartials(CtxPtr ctx) : ctx_(std::move(ctx)) {
        memo_.emplace(std::vector<int>{}, potential_density(ctx_));
    }

    const Expr& get(std::vector<int> comps) {
        std::sort(comps.begin(), comps.end());
        auto it = memo_.find(comps);
        if (it != memo_.end()) return it->second;
        std::vector<int> base(comps.begin(), comps.end() - 1);
        Expr d = get(base).pdiff(comps.back(), 0);
        return memo_.emplace(std::move(comps), std::move(d)).first->second;
    }

  private:
    CtxPtr ctx_;
    std::map<std::vector<int>, Expr> memo_;
};

} // namespace detail

// The differential of a bicoloured tree: the sum over all assignments of a
// component index to every edge of the product of node factors.
inline Expr elementary_differential(const CtxPtr& ctx, const BiTree& t) {
    detail::validate_tree(t);
    if (!t.black)
        throw AlgebraError("the differential of a bare white leaf is undefined");

    detail::TreeGraph g;
    g.add(t);
    const int n = static_cast<int>(g.black.size());

    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) {
                int e = static_cast<int>(edges.size());
                edges.emplace_back(u, v);
                incident[static_cast<std::size_t>(u)].push_back(e);
                incident[static_cast<std::size_t>(v)].push_back(e);
            }

    const int d = ctx->dim();
    detail::WPartials W(ctx);
    Expr sum = Expr::zero(ctx);
    std::vector<int> idx(edges.size(), 1);
    while (true) {
        Expr prod = Expr::one(ctx);
        for (int v = 0; v < n; ++v) {
            const auto& inc = incident[static_cast<std::size_t>(v)];
            if (g.black[static_cast<std::size_t>(v)]) {
                std::vector<int> comps;
                comps.reserve(inc.size());
                for (int e : inc) comps.push_back(idx[static_cast<std::size_t>(e)]);
                prod = prod * W.get(std::move(comps));
            } else {
                prod = prod * Expr::jet(ctx, idx[static_cast<std::size_t>(inc[0])], 1);
            }
        }
        sum += prod;

        std::size_t p = 0;
        for (; p < idx.size(); ++p) {
            if (idx[p] < d) {
                ++idx[p];
                break;
            }
            idx[p] = 1;
        }
        if (p == idx.size()) break;
    }
    return sum;
}

// The differentials of all trees of the given order, in the published
// numbering: entry k-1 belongs to the tree returned k-th by enumerate_trees.
inline std::vector<Expr> differential_table(const CtxPtr& ctx, int order) {
    std::vector<Expr> out;
    for (const BiTree& t : enumerate_trees(order))
        out.push_back(elementary_differential(ctx, t));
    return out;
}

} // namespace modlag
