// SPDX-License-Identifier: MIT
// Formal modified equation of the five-point scheme on the full (t, x) grid,
// before any wave reduction: the central second differences are replaced by
// their Taylor series, giving the PDE that smooth grid solutions satisfy to
// the requested order in each step.  Terms live in a private two-variable jet
// notation (pure t- and x-derivatives of the field u); the public wave
// pipeline stays one-dimensional in xi.

#pragma once

#include <string>
#include <vector>

#include "modlag/core/context.hpp"
#include "modlag/core/print.hpp"

namespace modlag {

// One summand of the residual: coefficient * d_t^{t_order} d_x^{x_order} u,
// or, when gradient is set, coefficient * grad W(u).
struct PdeTerm {
    int t_order = 0;
    int x_order = 0;
    RatFun coefficient;
    bool gradient = false;
};

class ModifiedPde {
  public:
    ModifiedPde(CtxPtr ctx, std::vector<PdeTerm> terms)
        : ctx_(std::move(ctx)), terms_(std::move(terms)) {}

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<PdeTerm>& terms() const { return terms_; }

    std::string text() const { return render(false); }
    std::string latex() const { return render(true); }

  private:
    std::string render(bool tex) const {
        const ParamTable& tab = ctx_->params();
        std::string out;
        for (const PdeTerm& t : terms_) {
            const std::string plain = to_text(t.coefficient, tab);
            const bool neg = !plain.empty() && plain[0] == '-';
            const RatFun coeff = neg ? -t.coefficient : t.coefficient;
            const std::string cs = tex ? to_latex(coeff, tab) : to_text(coeff, tab);
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            if (cs != "1") {
                bool wrap = cs.find(" + ") != std::string::npos ||
                            cs.find(" - ") != std::string::npos;
                if (wrap) out += tex ? "\\left(" : "(";
                out += cs;
                if (wrap) out += tex ? "\\right)" : ")";
                out += tex ? "\\," : "*";
            }
            if (t.gradient) {
                out += tex ? "\\nabla W(u)" : "grad W(u)";
            } else if (t.t_order + t.x_order == 0) {
                out += "u";
            } else {
                out += "u_{";
                out.append(static_cast<std::size_t>(t.t_order), 't');
                out.append(static_cast<std::size_t>(t.x_order), 'x');
                out += "}";
            }
        }
        out += " = 0";
        return out;
    }

    CtxPtr ctx_;
    std::vector<PdeTerm> terms_;
};

// Modified equation of the scheme: second differences in t and x expanded to
// the given order in each step.  The orientation puts the wave operator
// first, so the zeroth-order output is u_tt - u_xx - grad W(u) = 0.
inline ModifiedPde modified_pde(const CtxPtr& ctx, int dt_order, int dx_order) {
    if (dt_order < 0 || dx_order < 0) throw TruncError("negative correction order");
    if (dt_order > 4 || dx_order > 4)
        throw TruncError("modified-equation corrections are tabulated through fourth order only");

    std::vector<PdeTerm> terms;
    terms.push_back({2, 0, ctx->one(), false});
    terms.push_back({0, 2, -ctx->one(), false});
    terms.push_back({0, 0, -ctx->one(), true});

    // D+D- u = sum_{k>=1} 2 step^{2k-2} / (2k)! * d^{2k} u.
    auto corrections = [&](const RatFun& step, int order, bool in_time) {
        RatFun step2 = step * step;
        RatFun pow = ctx->one();
        mpq_class fact = 2; // (2k)! at k = 1
        for (int k = 2; 2 * (k - 1) <= order; ++k) {
            pow = pow * step2;
            fact *= (2 * k - 1) * (2 * k);
            RatFun coeff = pow * ctx->rat(mpq_class(2) / fact);
            if (!in_time) coeff = -coeff;
            terms.push_back({in_time ? 2 * k : 0, in_time ? 0 : 2 * k, coeff, false});
        }
    };
    corrections(ctx->dt(), dt_order, true);
    corrections(ctx->dx(), dx_order, false);
    return ModifiedPde(ctx, std::move(terms));
}

} // namespace modlag
