#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "modlag/core/linsolve.hpp"
#include "modlag/core/series.hpp"
#include "modlag/hamilton/ostrogradsky.hpp"
#include "modlag/jets/jets.hpp"
#include "modlag/modeq/reduce.hpp"

namespace modlag {

using JetSubstitution = std::map<std::uint32_t, HSeries>;

// Symplectic data of the reduced picture over the first jet coordinates
// z = (phi_1..phi_n, dphi_1..dphi_n).  The matrix omega represents the
// two-form in that frame with the sign convention fixed by the flow
// identity omega * zdot = grad(energy); its leading block is the constant
// matrix of the continuum problem.  The on-shell coordinates and momenta
// are kept because the primitive one-form is built from them.
struct HamStructure {
    std::vector<std::vector<HSeries>> omega;  // 2n x 2n, skew
    HSeries energy;                           // over (phi, dphi)
    std::vector<std::vector<HSeries>> p;      // on-shell momenta, M x n
    std::vector<std::vector<HSeries>> q;      // on-shell coordinates, M x n
    int trunc = 0;

    const CtxPtr& ctx() const { return energy.ctx(); }
    int dim() const { return energy.ctx()->dim(); }
};

namespace detail {

// Partial derivative along the frame coordinate a = 0..2n-1, i.e. with
// respect to phi_(a+1) for a < n and dphi_(a-n+1) otherwise.
inline HSeries frame_diff(const HSeries& s, int a, int n) {
    int comp = a % n + 1;
    int order = a / n;
    return s.map_coeffs([&](const Expr& e) { return e.pdiff(comp, order); });
}

// Truncation schedule for the substitution chain: the entry of derivative
// order m only matters up to trunc minus the first h power at which
// phi^(m) occurs in any of the given series.  The suffix maximum keeps the
// schedule non-increasing without ever under-truncating an entry.
inline std::vector<int> tight_schedule(const std::vector<const HSeries*>& series,
                                       int max_order, int trunc) {
    if (max_order < 2) return {};
    std::vector<int> first(static_cast<std::size_t>(max_order) + 1, trunc + 1);
    for (const HSeries* s : series)
        for (const auto& [k, e] : s->coeffs())
            for (const auto& [mono, coeff] : e.terms())
                for (const auto& f : mono.factors())
                    if (f.key.is_jet() && f.key.order() >= 2) {
                        auto& slot = first[static_cast<std::size_t>(f.key.order())];
                        slot = std::min(slot, k);
                    }
    std::vector<int> sched(static_cast<std::size_t>(max_order) - 1, 0);
    for (int m = 2; m <= max_order; ++m)
        sched[m - 2] = std::max(0, trunc - first[static_cast<std::size_t>(m)]);
    for (int m = max_order - 1; m >= 2; --m)
        sched[m - 2] = std::max(sched[m - 2], sched[m - 1]);
    return sched;
}

} // namespace detail

// Expresses the Ostrogradsky data on-shell.  The substitution must provide
// series in (phi, dphi) for every derivative of order >= 2 that appears in
// the momenta and the energy.
inline HamStructure onshell_reduce(const OstrogradskyData& o, const JetSubstitution& subs) {
    const CtxPtr& ctx = o.ctx();
    int n = ctx->dim();
    int M = o.order;
    int N = o.trunc_order();

    HamStructure hs;
    hs.trunc = N;
    hs.p.assign(M, {});
    hs.q.assign(M, {});
    for (int i = 1; i <= M; ++i) {
        for (int j = 1; j <= n; ++j) {
            hs.p[i - 1].push_back(o.p[i - 1][j - 1].substitute_jets(subs).truncated(N));
            HSeries coord = HSeries::constant(Expr::jet(ctx, j, i - 1), 0, N);
            if (i - 1 >= 2) coord = coord.substitute_jets(subs).truncated(N);
            hs.q[i - 1].push_back(std::move(coord));
        }
    }
    hs.energy = o.energy.substitute_jets(subs).truncated(N);

    std::vector<std::vector<HSeries>> dp(2 * n, std::vector<HSeries>{});
    std::vector<std::vector<HSeries>> dq(2 * n, std::vector<HSeries>{});
    for (int a = 0; a < 2 * n; ++a)
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < n; ++j) {
                dp[a].push_back(detail::frame_diff(hs.p[i][j], a, n));
                dq[a].push_back(detail::frame_diff(hs.q[i][j], a, n));
            }

    hs.omega.assign(2 * n, std::vector<HSeries>(2 * n, HSeries::zero(ctx, N)));
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b) {
            HSeries entry = HSeries::zero(ctx, N);
            for (std::size_t k = 0; k < dp[a].size(); ++k)
                entry += dp[a][k] * dq[b][k] - dp[b][k] * dq[a][k];
            hs.omega[a][b] = entry.truncated(N);
            hs.omega[b][a] = -hs.omega[a][b];
        }
    return hs;
}

// Convenience overload: derives the substitution from the reduced equation,
// with entry truncations matched to where each derivative order first
// occurs in the data.
inline HamStructure onshell_reduce(const OstrogradskyData& o, const ReducedODE& red) {
    int M = o.order;
    int top = M;
    std::vector<const HSeries*> scan;
    for (const auto& row : o.p)
        for (const auto& s : row) {
            scan.push_back(&s);
            for (const auto& [k, e] : s.coeffs()) top = std::max(top, e.max_jet_order());
        }
    scan.push_back(&o.energy);
    for (const auto& [k, e] : o.energy.coeffs()) top = std::max(top, e.max_jet_order());
    auto sched = detail::tight_schedule(scan, top, o.trunc_order());
    return onshell_reduce(o, red.chain(top, sched));
}

// Result of comparing the Hamiltonian vector field of (omega, energy)
// against a reduced equation: residual components of zdot, one per frame
// coordinate, all zero on success.
struct FlowReport {
    bool consistent = false;
    std::vector<HSeries> residual;
};

inline FlowReport hamiltonian_flow_check(const HamStructure& hs, const ReducedODE& red) {
    const CtxPtr& ctx = hs.ctx();
    int n = hs.dim();

    std::vector<HSeries> grad;
    grad.reserve(2 * n);
    for (int a = 0; a < 2 * n; ++a) grad.push_back(detail::frame_diff(hs.energy, a, n));

    std::vector<HSeries> zdot = solve_linear_series(hs.omega, grad);

    FlowReport rep;
    rep.consistent = true;
    for (int a = 0; a < 2 * n; ++a) {
        HSeries expected = a < n ? HSeries::constant(Expr::jet(ctx, a + 1, 1), 0, hs.trunc)
                                 : red.rhs[a - n].truncated(hs.trunc);
        HSeries diff = zdot[a] - expected;
        if (!diff.is_zero()) rep.consistent = false;
        rep.residual.push_back(std::move(diff));
    }
    return rep;
}

// The fibres spanned by d/ddphi_j are Lagrangian exactly when the lower
// right block of omega vanishes; that block is the obstruction to a
// first-order Lagrangian in the original variables.
struct VerticalReport {
    bool lagrangian_fibres = false;
    std::vector<std::vector<HSeries>> block;  // n x n lower right block
};

inline VerticalReport check_vertical_lagrangian(const HamStructure& hs) {
    int n = hs.dim();
    VerticalReport rep;
    rep.lagrangian_fibres = true;
    rep.block.assign(n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            rep.block[a].push_back(hs.omega[n + a][n + b]);
            if (!rep.block[a].back().is_zero()) rep.lagrangian_fibres = false;
        }
    return rep;
}

// Closedness of omega: every cyclic coordinate derivative triple cancels.
inline bool omega_closed(const HamStructure& hs) {
    int n = hs.dim();
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b)
            for (int c = b + 1; c < 2 * n; ++c) {
                HSeries cyc = detail::frame_diff(hs.omega[b][c], a, n) +
                              detail::frame_diff(hs.omega[c][a], b, n) +
                              detail::frame_diff(hs.omega[a][b], c, n);
                if (!cyc.is_zero()) return false;
            }
    return true;
}

namespace detail {

// Integrates a coefficient over the scaling of the velocity fibre: each
// monomial of total degree d in the order-one jets picks up 1/(d+1).
inline Expr fibre_integral(const Expr& e) {
    Expr out = Expr::zero(e.ctx());
    for (const auto& [mono, coeff] : e.terms()) {
        int d = 0;
        for (const auto& f : mono.factors())
            if (f.key.is_jet() && f.key.order() == 1) d += f.exp;
        const CtxPtr& ctx = e.ctx();
        Expr term = Expr::scalar(ctx, coeff / RatFun::integer(&ctx->params(), d + 1));
        for (const auto& f : mono.factors()) {
            if (f.key.is_jet()) {
                term = term * Expr::jet(ctx, f.key.comp(), f.key.order(), f.exp);
            } else {
                for (int r = 0; r < f.exp; ++r) term = term * Expr::pot(ctx, f.key.pot_order());
            }
        }
        out += term;
    }
    return out;
}

// Tautological one-form of the on-shell section, lambda_b = sum p dq
// contracted with the frame vector b.
inline std::vector<HSeries> pullback_one_form(const HamStructure& hs) {
    int n = hs.dim();
    std::vector<HSeries> theta;
    theta.reserve(2 * n);
    for (int a = 0; a < 2 * n; ++a) {
        HSeries comp = HSeries::zero(hs.ctx(), hs.trunc);
        for (std::size_t i = 0; i < hs.p.size(); ++i)
            for (int j = 0; j < n; ++j)
                comp += hs.p[i][j] * frame_diff(hs.q[i][j], a, n);
        theta.push_back(comp.truncated(hs.trunc));
    }
    return theta;
}

} // namespace detail

// A primitive one-form of the structure, gauge fixed so that the leading
// term is minus the canonical momentum contraction and the velocity
// components vanish whenever the fibres are Lagrangian.  With the matrix
// convention of HamStructure::omega the exterior derivative of the result
// is minus omega; the underlying two-form is the same, the two matrices
// differ by the index ordering of the wedge.
inline std::vector<HSeries> local_primitive(const HamStructure& hs) {
    if (!omega_closed(hs)) throw AlgebraError("symplectic matrix is not closed");
    const CtxPtr& ctx = hs.ctx();
    int n = hs.dim();

    std::vector<HSeries> lambda = detail::pullback_one_form(hs);
    for (auto& comp : lambda) comp = -comp;

    // Fibre homotopy gauge: g = -sum_b dphi_b int_0^1 lambda_b(phi, s dphi) ds
    // removes the velocity components exactly when the obstruction block of
    // omega vanishes, and never touches the leading order.
    HSeries gauge = HSeries::zero(ctx, hs.trunc);
    for (int b = 0; b < n; ++b) {
        HSeries integrated =
                lambda[n + b].map_coeffs([](const Expr& e) { return detail::fibre_integral(e); });
        gauge -= integrated * Expr::jet(ctx, b + 1, 1);
    }
    for (int a = 0; a < 2 * n; ++a) lambda[a] += detail::frame_diff(gauge, a, n);
    return lambda;
}

} // namespace modlag
