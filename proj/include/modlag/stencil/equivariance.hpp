#pragma once

#include <map>
#include <vector>

#include "modlag/core/series.hpp"

namespace modlag {

// Prolonged rotation action on the jet variables,
//   phi^(m) -> exp(theta J^T) phi^(m),
// written with the angle parameters (cos theta, sin theta) of the context.
// Potential factors are untouched because |phi|^2 is invariant.
inline std::map<std::uint32_t, Expr> rotation_jet_map(const CtxPtr& ctx, bool inverse,
                                                      int max_order) {
    const RatFun ct = ctx->param(ctx->params().cos_index());
    RatFun st = ctx->param(ctx->params().sin_index());
    if (inverse) st = -st;
    std::map<std::uint32_t, Expr> map;
    for (int m = 0; m <= max_order; ++m) {
        Expr p1 = Expr::jet(ctx, 1, m);
        Expr p2 = Expr::jet(ctx, 2, m);
        map[FactorKey::jet(1, m).raw] = p1 * ct - p2 * st;
        map[FactorKey::jet(2, m).raw] = p1 * st + p2 * ct;
    }
    return map;
}

inline Expr rotate_jets(const Expr& e, bool inverse = false) {
    return e.substitute_jets(rotation_jet_map(e.ctx(), inverse, e.max_jet_order()));
}

inline HSeries rotate_jets(const HSeries& s, bool inverse = false) {
    int max_order = 0;
    for (const auto& [k, e] : s.coeffs()) max_order = std::max(max_order, e.max_jet_order());
    auto map = rotation_jet_map(s.ctx(), inverse, max_order);
    return s.map_coeffs([&](const Expr& e) { return e.substitute_jets(map); });
}

// Scalar series invariance, L(R phi) = L(phi).
inline bool rotation_invariant(const HSeries& s) { return rotate_jets(s) == s; }

// Vector series equivariance, F(R phi) = R F(phi).
inline bool rotation_equivariant(const std::vector<HSeries>& comps) {
    if (comps.size() != 2) return false;
    const CtxPtr& ctx = comps[0].ctx();
    const RatFun ct = ctx->param(ctx->params().cos_index());
    const RatFun st = ctx->param(ctx->params().sin_index());
    HSeries lhs1 = rotate_jets(comps[0]);
    HSeries lhs2 = rotate_jets(comps[1]);
    return lhs1 == comps[0] * ct - comps[1] * st && lhs2 == comps[0] * st + comps[1] * ct;
}

} // namespace modlag
