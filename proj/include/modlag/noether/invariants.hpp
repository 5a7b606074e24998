// SPDX-License-Identifier: MIT
// Conserved quantities of the symmetric reduction: symmetry currents of the
// expanded Lagrangian, their on-shell reduction to first-order variables, and
// Poisson brackets taken with respect to the on-shell two-form.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "modlag/core/linsolve.hpp"
#include "modlag/hamilton/structure.hpp"
#include "modlag/jets/jets.hpp"

namespace modlag {

// Vector field on configuration space: one expression per field component,
// depending on the fields only (no derivatives, no potential values).
struct SymmetryGenerator {
    std::vector<Expr> components;
};

// Infinitesimal rotation phi -> exp(theta J^T) phi, i.e. g = (-phi_2, phi_1).
inline SymmetryGenerator rotation_generator(const CtxPtr& ctx) {
    if (ctx->dim() != 2) throw ContextError("rotation generator needs two field components");
    return {{-Expr::jet(ctx, 2, 0), Expr::jet(ctx, 1, 0)}};
}

namespace detail {

inline int max_jet_order(const Expr& e) {
    int m = 0;
    for (const auto& term : e.terms())
        for (const auto& f : term.first.factors())
            if (f.key.is_jet()) m = std::max(m, static_cast<int>(f.key.order()));
    return m;
}

inline int max_jet_order(const HSeries& s) {
    int m = 0;
    for (const auto& [k, e] : s.coeffs()) m = std::max(m, max_jet_order(e));
    return m;
}

// Action of the prolonged vector field on one coefficient: the generator acts
// on phi^(i) through its i-th total derivative.
inline Expr prolonged_action(const Expr& e, const std::vector<std::vector<Expr>>& prolong) {
    Expr out = Expr::zero(e.ctx());
    const int n = e.ctx()->dim();
    for (std::size_t i = 0; i < prolong.size(); ++i)
        for (int j = 1; j <= n; ++j)
            out = out + prolong[i][static_cast<std::size_t>(j - 1)] * e.pdiff(j, static_cast<int>(i));
    return out;
}

} // namespace detail

// Symmetry current of a Lagrangian series along a point symmetry generator:
//   I = sum_{m=1}^{M} sum_{k=0}^{m-1} (-1)^k < (d/dxi)^k dL/dphi^(m), (d/dxi)^{m-1-k} g >.
// The generator must be a variational symmetry; this is verified by checking
// that the prolonged action on every coefficient is a null Lagrangian (its
// Euler expressions vanish identically).
inline HSeries noether_current(const HSeries& lag, const SymmetryGenerator& gen, int max_order = -1) {
    const CtxPtr& ctx = lag.ctx();
    const int n = ctx->dim();
    if (static_cast<int>(gen.components.size()) != n)
        throw AlgebraError("generator dimension does not match the field dimension");
    for (const Expr& g : gen.components)
        for (const auto& term : g.terms())
            for (const auto& f : term.first.factors())
                if (!f.key.is_jet() || f.key.order() != 0)
                    throw AlgebraError("generator must depend on the fields only");

    const int M = max_order >= 0 ? max_order : detail::max_jet_order(lag);

    // Prolongation table: prolong[i][j] = i-th total derivative of g_j.
    std::vector<std::vector<Expr>> prolong;
    prolong.push_back(gen.components);
    for (int i = 1; i <= M; ++i) {
        std::vector<Expr> next;
        next.reserve(static_cast<std::size_t>(n));
        for (const Expr& g : prolong.back()) next.push_back(total_derivative(g));
        prolong.push_back(std::move(next));
    }

    for (const auto& [k, e] : lag.coeffs()) {
        Expr lie = detail::prolonged_action(e, prolong);
        for (int j = 1; j <= n; ++j)
            if (!euler_operator(lie, j).is_zero())
                throw AlgebraError("generator is not a variational symmetry of the Lagrangian");
    }

    HSeries current = HSeries::zero(ctx, lag.trunc_order());
    for (int m = 1; m <= M; ++m) {
        for (int j = 1; j <= n; ++j) {
            HSeries ladder = lag.map_coeffs([&](const Expr& e) { return e.pdiff(j, m); });
            for (int k = 0; k <= m - 1; ++k) {
                if (k > 0)
                    ladder = ladder.map_coeffs([](const Expr& e) { return total_derivative(e); });
                HSeries contrib = ladder * prolong[static_cast<std::size_t>(m - 1 - k)]
                                                 [static_cast<std::size_t>(j - 1)];
                if (k % 2 == 0)
                    current += contrib;
                else
                    current -= contrib;
            }
        }
    }
    return current;
}

// Eliminates all derivatives of order >= 2 from an invariant using a solved
// substitution chain.  The result lives over (phi, phi') and approximates the
// original quantity along prolonged solutions to the truncation order.
inline HSeries reduce_invariant(const HSeries& inv, const JetSubstitution& subs) {
    HSeries out = inv.substitute_jets(subs);
    for (const auto& [k, e] : out.coeffs()) {
        (void)k;
        if (detail::max_jet_order(e) >= 2)
            throw AlgebraError("substitution chain does not cover every higher derivative");
    }
    return out;
}

// Poisson bracket of two functions of (phi, phi') with respect to the
// on-shell two-form: {f, g} = <grad f, X_g> where omega X_g = grad g.  With
// this orientation {f, H} is the derivative of f along the flow.
inline HSeries poisson_bracket(const HamStructure& hs, const HSeries& f, const HSeries& g) {
    const int n = hs.dim();
    std::vector<HSeries> grad;
    grad.reserve(static_cast<std::size_t>(2 * n));
    for (int a = 0; a < 2 * n; ++a) grad.push_back(detail::frame_diff(g, a, n));
    std::vector<HSeries> field = solve_linear_series(hs.omega, grad);

    HSeries out = detail::frame_diff(f, 0, n) * field[0];
    for (int a = 1; a < 2 * n; ++a) out += detail::frame_diff(f, a, n) * field[static_cast<std::size_t>(a)];
    return out;
}

} // namespace modlag
