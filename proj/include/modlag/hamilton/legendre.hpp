#pragma once

#include <utility>
#include <vector>

#include "modlag/core/params.hpp"
#include "modlag/hamilton/structure.hpp"
#include "modlag/modeq/reduce.hpp"
#include "modlag/stencil/cases.hpp"
#include "modlag/stencil/expand.hpp"

namespace modlag {

// In the regimes of SpecialCase the velocity fibres stay Lagrangian at every
// computed order, so a first-order Lagrangian in the original variables
// exists.
struct FirstOrderLagrangian {
    HSeries lagrangian;  // over (phi, dphi); leading term is the continuum Lagrangian
    SpecialCase tag;
};

// Builds the first-order modified Lagrangian of the five-point scheme in
// one of the special parameter regimes.  The primitive one-form of the
// on-shell structure is gauge fixed on the velocity fibre; contracting its
// base components with the velocity and subtracting the energy then gives
// a Lagrangian whose Euler-Lagrange equations reproduce the reduced flow.
inline FirstOrderLagrangian legendre_first_order(const CtxPtr& ctx, SpecialCase sc, int order) {
    HSeries lag = detail::impose_case(drop_null_terms(expand_discrete_lagrangian(ctx, order)), sc);

    std::vector<HSeries> residual = expand_functional_equation(ctx, order);
    for (auto& comp : residual) comp = detail::impose_case(comp, sc);
    ReducedODE red = reduce_order(solve_for_second_derivative(residual));

    OstrogradskyData data = ostrogradsky(lag);
    HamStructure hs = onshell_reduce(data, red);
    if (!check_vertical_lagrangian(hs).lagrangian_fibres)
        throw AlgebraError("velocity fibres are not Lagrangian in this parameter regime");

    std::vector<HSeries> lambda = local_primitive(hs);
    int n = hs.dim();
    for (int b = 0; b < n; ++b)
        if (!lambda[n + b].is_zero())
            throw AlgebraError("gauge fixing left a velocity component in the primitive");

    HSeries result = -hs.energy;
    for (int j = 0; j < n; ++j) result -= lambda[j] * Expr::jet(ctx, j + 1, 1);
    return {result.truncated(order), sc};
}

} // namespace modlag
