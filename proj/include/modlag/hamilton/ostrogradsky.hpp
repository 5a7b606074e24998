#pragma once

#include <utility>
#include <vector>

#include "modlag/core/series.hpp"
#include "modlag/jets/jets.hpp"

namespace modlag {

namespace detail {

// Laplace expansion determinant over the coefficient field.  The matrices
// here are dim x dim, so the cost is irrelevant.
inline RatFun ratfun_det(const std::vector<std::vector<RatFun>>& m, const ParamTable* tab) {
    std::size_t n = m.size();
    if (n == 0) return RatFun::one(tab);
    if (n == 1) return m[0][0];
    RatFun det = RatFun::zero(tab);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<RatFun>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<RatFun> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        RatFun cof = m[0][c] * ratfun_det(minor, tab);
        det = sign > 0 ? det + cof : det - cof;
        sign = -sign;
    }
    return det;
}

} // namespace detail

// Canonical data of the high-order Hamiltonian picture of a Lagrangian
// series: coordinates q^i = phi^(i-1) for i = 1..M, conjugate momenta p_i,
// and the energy written in the dynamical variables.
struct OstrogradskyData {
    int order = 0;                        // M, the highest derivative in the Lagrangian
    std::vector<std::vector<HSeries>> p;  // p[i-1][j-1] for i = 1..M, j = 1..dim
    HSeries lagrangian;
    HSeries energy;                       // H = sum_i <p_i, phi^(i)> - L

    const CtxPtr& ctx() const { return lagrangian.ctx(); }
    int trunc_order() const { return lagrangian.trunc_order(); }
};

// Momenta are generated by the descending recursion
//   p_M = dL/dphi^(M),   p_i = dL/dphi^(i) - d/dxi p_(i+1),
// which telescopes to the usual alternating sum of total derivatives.
// Regularity of the construction is checked on the velocity Hessian of the
// leading series coefficient; higher orders are handled perturbatively and
// need no rank condition of their own.
inline OstrogradskyData ostrogradsky(const HSeries& lag) {
    const CtxPtr& ctx = lag.ctx();
    int n = ctx->dim();

    int M = 0;
    for (const auto& [k, e] : lag.coeffs()) M = std::max(M, e.max_jet_order());
    if (M < 1) throw AlgebraError("Lagrangian has no velocity dependence");

    const Expr lead = lag.coeff(0);
    std::vector<std::vector<RatFun>> hess(n, std::vector<RatFun>(n));
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            Expr entry = lead.pdiff(j, 1).pdiff(k, 1);
            if (!entry.is_scalar())
                throw AlgebraError("leading velocity Hessian must be parameter-valued");
            hess[j - 1][k - 1] = entry.scalar_value();
        }
    if (detail::ratfun_det(hess, &ctx->params()).is_zero())
        throw AlgebraError("leading velocity Hessian is singular");

    OstrogradskyData data;
    data.order = M;
    data.lagrangian = lag;
    data.p.assign(M, {});

    std::vector<HSeries> next;
    for (int i = M; i >= 1; --i) {
        std::vector<HSeries> cur;
        cur.reserve(n);
        for (int j = 1; j <= n; ++j) {
            HSeries grad = lag.map_coeffs([&](const Expr& e) { return e.pdiff(j, i); });
            if (i < M)
                grad -= next[j - 1].map_coeffs(
                        [](const Expr& e) { return total_derivative(e); });
            cur.push_back(std::move(grad));
        }
        data.p[i - 1] = cur;
        next = std::move(cur);
    }

    HSeries energy = -lag;
    for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= n; ++j)
            energy += data.p[i - 1][j - 1] * Expr::jet(ctx, j, i);
    data.energy = std::move(energy);
    return data;
}

} // namespace modlag
