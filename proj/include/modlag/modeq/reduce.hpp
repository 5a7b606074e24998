#pragma once

#include <map>
#include <vector>

#include "modlag/core/linsolve.hpp"
#include "modlag/core/series.hpp"
#include "modlag/jets/jets.hpp"

namespace modlag {

// The scheme residual solved for the second derivative.  The right hand
// side of phi'' = rhs still contains third and higher derivatives in the
// h^2 and higher coefficients.
struct HighOrderODE {
    std::vector<HSeries> rhs;

    const CtxPtr& ctx() const { return rhs.at(0).ctx(); }
    int trunc_order() const {
        int t = trunc_inf;
        for (const auto& s : rhs) t = std::min(t, s.trunc_order());
        return t;
    }
};

// A first-order-reducible equation phi'' = rhs(phi, phi') where every
// coefficient depends on the field and its first derivative only.
struct ReducedODE {
    std::vector<HSeries> rhs;

    const CtxPtr& ctx() const { return rhs.at(0).ctx(); }
    int trunc_order() const {
        int t = trunc_inf;
        for (const auto& s : rhs) t = std::min(t, s.trunc_order());
        return t;
    }

    // On-shell substitution series for phi^(m), m = 2..max_order, obtained
    // by differentiating the equation along its own flow.
    std::map<std::uint32_t, HSeries> chain(int max_order,
                                           const std::vector<int>& schedule = {}) const;
};

namespace detail {

inline bool has_second_derivative(const Expr& e, int dim) {
    for (int j = 1; j <= dim; ++j)
        if (e.depends_on(FactorKey::jet(j, 2))) return true;
    return false;
}

inline int max_jet_order(const std::vector<HSeries>& comps) {
    int m = 0;
    for (const auto& s : comps)
        for (const auto& [k, e] : s.coeffs()) m = std::max(m, e.max_jet_order());
    return m;
}

// Differentiates a series right hand side along xi and eliminates the
// second derivatives it produces with the equation itself.
inline std::vector<HSeries> advance_chain(const std::vector<HSeries>& cur,
                                          const std::vector<HSeries>& second,
                                          const CtxPtr& ctx) {
    std::map<std::uint32_t, HSeries> second_map;
    for (int j = 1; j <= ctx->dim(); ++j)
        second_map[FactorKey::jet(j, 2).raw] = second[j - 1];
    std::vector<HSeries> next;
    next.reserve(cur.size());
    for (const auto& s : cur) {
        HSeries d = s.map_coeffs([](const Expr& e) { return total_derivative(e); });
        next.push_back(d.substitute_jets(second_map));
    }
    return next;
}

} // namespace detail

// Solves the residual series for the second derivative.  The residual must
// be linear in phi'' with coefficients free of phi'', and the leading
// coefficient matrix must be constant and invertible.
inline HighOrderODE solve_for_second_derivative(const std::vector<HSeries>& residual) {
    if (residual.empty()) throw AlgebraError("empty residual system");
    const CtxPtr& ctx = residual[0].ctx();
    const int n = ctx->dim();
    if (static_cast<int>(residual.size()) != n)
        throw AlgebraError("residual size does not match the field dimension");

    std::vector<std::vector<HSeries>> A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= n; ++j) {
            HSeries entry = residual[i].map_coeffs([&](const Expr& e) { return e.pdiff(j, 2); });
            for (const auto& [k, e] : entry.coeffs())
                if (detail::has_second_derivative(e, n))
                    throw AlgebraError("residual is not linear in the second derivative");
            A[i].push_back(std::move(entry));
        }

    std::vector<HSeries> rest;
    rest.reserve(n);
    for (int i = 0; i < n; ++i) {
        HSeries r = residual[i];
        for (int j = 1; j <= n; ++j)
            r -= A[i][j - 1] * HSeries::constant(Expr::jet(ctx, j, 2));
        for (const auto& [k, e] : r.coeffs())
            if (detail::has_second_derivative(e, n))
                throw AlgebraError("residual is not linear in the second derivative");
        rest.push_back(-r);
    }

    return HighOrderODE{solve_linear_series(A, rest)};
}

// Eliminates derivatives of order three and higher from the right hand
// side.  Substituting the equation into its own xi-derivatives pushes every
// surviving high derivative at least two h-orders up, so finitely many
// passes clean the series through its truncation order.
inline ReducedODE reduce_order(const HighOrderODE& ode) {
    const CtxPtr& ctx = ode.ctx();
    const int n = ctx->dim();
    const int N = ode.trunc_order();
    std::vector<HSeries> cur = ode.rhs;
    for (auto& s : cur) s = s.truncated(N);

    for (const auto& s : cur)
        for (const auto& [k, e] : s.coeffs())
            if (k <= 1 && e.max_jet_order() > 1)
                throw SubstError("leading coefficients must depend on (phi, phi') only");

    const int guard = N / 2 + 2;
    for (int pass = 0; pass <= guard; ++pass) {
        const int mmax = detail::max_jet_order(cur);
        if (mmax <= 1) {
            ReducedODE red{cur};
            return red;
        }
        if (pass == guard) break;

        // Chain of substitution series for phi^(m) up to the highest order
        // present.  High derivatives only occur with h^2 or more, so the
        // chain members are needed two orders less deeply than the series.
        std::vector<std::vector<HSeries>> chain;
        chain.push_back(cur);
        std::vector<HSeries> trimmed;
        for (const auto& s : cur) trimmed.push_back(s.truncated(std::max(0, N - 2)));
        std::vector<HSeries> walk = trimmed;
        for (int m = 3; m <= mmax; ++m) {
            walk = detail::advance_chain(walk, trimmed, ctx);
            chain.push_back(walk);
        }

        std::map<std::uint32_t, HSeries> map;
        for (int m = 2; m <= mmax; ++m)
            for (int j = 1; j <= n; ++j)
                map[FactorKey::jet(j, m).raw] = chain[m - 2][j - 1];
        for (auto& s : cur) s = s.substitute_jets(map).truncated(N);
    }
    throw SubstError("order reduction did not terminate within the expected passes");
}

// Builds the substitution map phi^(m) -> g_m for m = 2..max_order.  The
// optional schedule caps the truncation order of each entry, schedule[m-2]
// applying to the order-m entry; it must be non-increasing since every entry
// is derived from the previous one.  Callers that multiply g_m by an h^k
// prefactor can pass a tight schedule to skip series coefficients the
// product would discard, which keeps deep chains affordable.
inline std::map<std::uint32_t, HSeries> ReducedODE::chain(
        int max_order, const std::vector<int>& schedule) const {
    const CtxPtr& c = ctx();
    std::map<std::uint32_t, HSeries> map;
    if (max_order < 2) return map;
    if (!schedule.empty()) {
        if (static_cast<int>(schedule.size()) < max_order - 1)
            throw AlgebraError("truncation schedule is shorter than the requested chain");
        for (std::size_t i = 1; i + 1 < static_cast<std::size_t>(max_order); ++i)
            if (schedule[i] > schedule[i - 1])
                throw AlgebraError("truncation schedule must be non-increasing");
    }
    std::vector<HSeries> walk = rhs;
    for (int m = 2; m <= max_order; ++m) {
        if (!schedule.empty()) {
            int t = std::max(0, schedule[m - 2]);
            for (auto& s : walk)
                if (t < s.trunc_order()) s = s.truncated(t);
        }
        if (m > 2) walk = detail::advance_chain(walk, rhs, c);
        for (int j = 1; j <= c->dim(); ++j) map[FactorKey::jet(j, m).raw] = walk[j - 1];
    }
    return map;
}

} // namespace modlag
