// SPDX-License-Identifier: MIT
// Coefficient fit for the modified Lagrangian of the non-rotating travelling
// wave.  The ansatz is the continuum Lagrangian plus, at every even series
// order, an unknown multiple of each elementary differential of that order:
//
//   L_h = (c^2-1)/2 |phi'|^2 + W + sum_j h^(2j) sum_k a_(2j,k) F_(2j,k).
//
// The fit requires the Euler-Lagrange equations of L_h to vanish along the
// reduced flow phi'' = r(h, phi, phi') through the requested order.  Because
// phi'' enters the Euler-Lagrange expressions linearly, that requirement is
// one linear system over the rational-function field in all unknowns
// jointly; it is solved exactly, and every generated equation is checked, so
// a returned fit is a proved identity at the working order.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modlag/core/print.hpp"
#include "modlag/core/series.hpp"
#include "modlag/jets/jets.hpp"
#include "modlag/modeq/reduce.hpp"
#include "modlag/ptrees/differentials.hpp"

namespace modlag {

struct PSeriesFit {
    struct Entry {
        int order;         // series order 2j of the h power
        int index;         // position in the published numbering, 1-based
        BiTree tree;
        Expr differential; // F_(order,index)
        RatFun value;      // fitted coefficient a_(order,index)
    };

    CtxPtr context;
    int max_order = 0;
    Expr leading;              // the h^0 Lagrangian
    std::vector<Entry> entries;

    const RatFun& coefficient(int order, int index) const {
        for (const Entry& e : entries)
            if (e.order == order && e.index == index) return e.value;
        throw AlgebraError("no fitted coefficient with that order and index");
    }

    // The fitted Lagrangian assembled as a series in h.
    HSeries lagrangian() const {
        HSeries L = HSeries::constant(leading, 0, max_order);
        for (const Entry& e : entries)
            L += HSeries::constant(Expr::scalar(context, e.value) * e.differential,
                                   e.order, max_order);
        return L;
    }
};

namespace detail {

// Streaming exact Gaussian elimination over the rational-function field.
// Rows arrive one at a time; each is reduced against the pivots found so
// far.  A row that reduces to 0 = nonzero proves the system inconsistent
// immediately, and a row that reduces to 0 = 0 confirms the equation it
// came from, so feeding every equation doubles as a proof of the identity.
class StreamSolver {
  public:
    StreamSolver(CtxPtr ctx, int unknowns)
        : ctx_(std::move(ctx)), n_(unknowns) {}

    void add(std::vector<RatFun> row) {
        for (const auto& [p, er] : rows_) {
            if (row[static_cast<std::size_t>(p)].is_zero()) continue;
            RatFun f = row[static_cast<std::size_t>(p)];
            for (int c = 0; c <= n_; ++c) {
                const RatFun& ec = er[static_cast<std::size_t>(c)];
                if (!ec.is_zero())
                    row[static_cast<std::size_t>(c)] =
                        row[static_cast<std::size_t>(c)] - f * ec;
            }
        }
        int piv = -1;
        for (int c = 0; c < n_; ++c)
            if (!row[static_cast<std::size_t>(c)].is_zero()) {
                piv = c;
                break;
            }
        if (piv < 0) {
            if (!row[static_cast<std::size_t>(n_)].is_zero())
                throw AlgebraError(
                    "the modified-Lagrangian equations are inconsistent at this order");
            return;
        }
        RatFun inv = row[static_cast<std::size_t>(piv)].inv();
        for (int c = 0; c <= n_; ++c)
            row[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c)] * inv;
        rows_.emplace(piv, std::move(row));
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    bool determined(int col) const { return rows_.count(col) > 0; }

    // Unique solution; requires full rank.
    std::vector<RatFun> solve() const {
        if (rank() != n_)
            throw AlgebraError("the coefficient system is underdetermined");
        // Back substitution from the last pivot upwards.
        std::map<int, RatFun> value;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            RatFun v = it->second[static_cast<std::size_t>(n_)];
            for (int c = it->first + 1; c < n_; ++c) {
                const RatFun& rc = it->second[static_cast<std::size_t>(c)];
                if (!rc.is_zero()) v = v - rc * value.at(c);
            }
            value.emplace(it->first, std::move(v));
        }
        std::vector<RatFun> out;
        out.reserve(static_cast<std::size_t>(n_));
        for (int c = 0; c < n_; ++c) out.push_back(value.at(c));
        return out;
    }

  private:
    CtxPtr ctx_;
    int n_;
    std::map<int, std::vector<RatFun>> rows_; // pivot column -> normalized row
};

inline bool ratfun_mentions(const RatFun& r, int var) {
    return r.num().contains(var) || r.den().contains(var);
}

inline bool expr_mentions(const Expr& e, int var) {
    for (const auto& t : e.terms())
        if (ratfun_mentions(t.second, var)) return true;
    return false;
}

} // namespace detail

// The h^0 Lagrangian of the travelling wave: (c^2-1)/2 |phi'|^2 + W.
inline Expr leading_lagrangian(const CtxPtr& ctx) {
    RatFun half_cm1 = (ctx->c() * ctx->c() - ctx->one()) / ctx->rat(2);
    Expr kin = Expr::zero(ctx);
    for (int j = 1; j <= ctx->dim(); ++j)
        kin += Expr::jet(ctx, j, 1) * Expr::jet(ctx, j, 1);
    return half_cm1 * kin + potential_density(ctx);
}

// Fits the tree coefficients of the modified Lagrangian to the reduced flow.
// The flow must be free of the rotation parameter; the fit covers every even
// order up to max_order, and each entry of the result carries its tree, its
// differential and the fitted rational-function coefficient.
inline PSeriesFit fit_coefficients(const ReducedODE& red, int max_order = 6) {
    const CtxPtr& ctx = red.ctx();
    if (max_order != 2 && max_order != 4 && max_order != 6)
        throw TruncError("the coefficient fit supports orders 2, 4, 6");
    if (red.trunc_order() < max_order)
        throw TruncError("the reduced flow is truncated below the requested order");

    const int d = ctx->dim();
    for (const HSeries& comp : red.rhs)
        for (int m = 0; m <= max_order; ++m)
            if (detail::expr_mentions(comp.coeff(m), ParamTable::alpha))
                throw AlgebraError(
                    "the coefficient fit needs the non-rotating reduced flow "
                    "(substitute alpha = 0 first)");

    // phi_j'' -> reduced right-hand side, as series.
    std::map<std::uint32_t, HSeries> sub;
    for (int j = 1; j <= d; ++j)
        sub.emplace(FactorKey::jet(j, 2).raw,
                    red.rhs[static_cast<std::size_t>(j - 1)].truncated(max_order));

    PSeriesFit fit;
    fit.context = ctx;
    fit.max_order = max_order;
    fit.leading = leading_lagrangian(ctx);

    for (int order = 2; order <= max_order; order += 2) {
        std::vector<BiTree> trees = enumerate_trees(order);
        for (std::size_t k = 0; k < trees.size(); ++k) {
            PSeriesFit::Entry e;
            e.order = order;
            e.index = static_cast<int>(k) + 1;
            e.differential = elementary_differential(ctx, trees[k]);
            e.tree = std::move(trees[k]);
            e.value = ctx->zero();
            fit.entries.push_back(std::move(e));
        }
    }
    const int n = static_cast<int>(fit.entries.size());

    // On-flow Euler-Lagrange series: per component, the inhomogeneity from
    // the h^0 Lagrangian and one series per unknown.
    std::vector<std::vector<HSeries>> cols(static_cast<std::size_t>(n));
    std::vector<HSeries> rhs0;
    {
        std::vector<Expr> sys = euler_system(fit.leading);
        for (int i = 0; i < d; ++i)
            rhs0.push_back(HSeries::constant(sys[static_cast<std::size_t>(i)], 0, max_order)
                               .substitute_jets(sub));
    }
    for (int u = 0; u < n; ++u) {
        const PSeriesFit::Entry& e = fit.entries[static_cast<std::size_t>(u)];
        std::vector<Expr> sys = euler_system(e.differential);
        for (int i = 0; i < d; ++i)
            cols[static_cast<std::size_t>(u)].push_back(
                HSeries::constant(sys[static_cast<std::size_t>(i)], 0, max_order - e.order)
                    .substitute_jets(sub)
                    .shifted(e.order));
    }

    // One linear equation per series order, component and monomial.  Low
    // orders go first so the solver pivots fill in as the orders that
    // determine them arrive.
    detail::StreamSolver solver(ctx, n);
    struct MonoOrder {
        bool operator()(const Mono& a, const Mono& b) const { return Mono::compare(a, b) < 0; }
    };
    for (int m = 0; m <= max_order; ++m)
        for (int i = 0; i < d; ++i) {
            std::map<Mono, std::vector<RatFun>, MonoOrder> rows;
            auto row_of = [&](const Mono& mono) -> std::vector<RatFun>& {
                auto it = rows.find(mono);
                if (it == rows.end())
                    it = rows.emplace(mono,
                                      std::vector<RatFun>(static_cast<std::size_t>(n) + 1,
                                                          ctx->zero()))
                             .first;
                return it->second;
            };
            for (int u = 0; u < n; ++u) {
                Expr e = cols[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)].coeff(m);
                for (const auto& t : e.terms())
                    row_of(t.first)[static_cast<std::size_t>(u)] += t.second;
            }
            {
                Expr e = rhs0[static_cast<std::size_t>(i)].coeff(m);
                for (const auto& t : e.terms())
                    row_of(t.first)[static_cast<std::size_t>(n)] -= t.second;
            }
            for (auto& [mono, row] : rows) solver.add(std::move(row));
        }

    if (solver.rank() != n) {
        std::string free;
        for (int u = 0; u < n; ++u)
            if (!solver.determined(u)) {
                const PSeriesFit::Entry& e = fit.entries[static_cast<std::size_t>(u)];
                if (!free.empty()) free += ", ";
                free += "a[" + std::to_string(e.order) + "," + std::to_string(e.index) + "]";
            }
        throw AlgebraError("the coefficient fit is underdetermined; free: " + free);
    }
    std::vector<RatFun> a = solver.solve();
    for (int u = 0; u < n; ++u)
        fit.entries[static_cast<std::size_t>(u)].value = std::move(a[static_cast<std::size_t>(u)]);
    return fit;
}

// Plain-text table of the fitted coefficients.
inline std::string fit_table_text(const PSeriesFit& fit) {
    const auto& tab = fit.context->params();
    std::string out;
    for (const auto& e : fit.entries) {
        out += "a[" + std::to_string(e.order) + "," + std::to_string(e.index) + "] = ";
        out += to_text(e.value, tab);
        out += "    tree ";
        out += tree_text(e.tree);
        out += '\n';
    }
    return out;
}

// LaTeX align* rows of the fitted coefficients.
inline std::string fit_table_latex(const PSeriesFit& fit) {
    const auto& tab = fit.context->params();
    std::string out = "\\begin{align*}\n";
    for (const auto& e : fit.entries) {
        out += "a_{" + std::to_string(e.order) + "," + std::to_string(e.index) + "} &= ";
        out += to_latex(e.value, tab);
        out += " \\\\\n";
    }
    out += "\\end{align*}\n";
    return out;
}

} // namespace modlag
