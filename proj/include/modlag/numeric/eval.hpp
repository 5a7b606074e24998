// SPDX-License-Identifier: MIT
// Numeric evaluation of expressions and h-series: exact rational evaluation
// at a point, and a flattened form with frozen parameters for fast repeated
// evaluation along trajectories.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "modlag/core/expr.hpp"
#include "modlag/core/series.hpp"

namespace modlag {

// Point assignment for exact evaluation.  Parameter values are indexed by the
// context's parameter table; jet values are keyed by the packed factor key;
// pot[k] holds the k-th derivative of the potential at the point implied by
// the field values (the caller is responsible for that consistency).
struct EvalPoint {
    std::vector<mpq_class> params;
    std::map<std::uint32_t, mpq_class> jets;
    std::vector<mpq_class> pot;
};

inline mpq_class eval_exact(const Expr& e, const EvalPoint& pt) {
    mpq_class total = 0;
    for (const auto& term : e.terms()) {
        mpq_class v = term.second.eval(pt.params);
        for (const auto& f : term.first.factors()) {
            mpq_class base;
            if (f.key.is_jet()) {
                auto it = pt.jets.find(f.key.raw);
                if (it == pt.jets.end()) throw ContextError("missing jet value in evaluation");
                base = it->second;
            } else {
                int k = f.key.pot_order();
                if (k >= static_cast<int>(pt.pot.size()))
                    throw ContextError("missing potential derivative value in evaluation");
                base = pt.pot[static_cast<std::size_t>(k)];
            }
            for (int i = 0; i < f.exp; ++i) v *= base;
        }
        total += v;
    }
    return total;
}

// Evaluates the truncated series at a concrete step size h.
inline mpq_class eval_exact(const HSeries& s, const EvalPoint& pt, const mpq_class& h) {
    mpq_class total = 0;
    mpq_class hk = 1;
    int last = 0;
    for (const auto& [k, e] : s.coeffs()) {
        for (; last < k; ++last) hk *= h;
        total += hk * eval_exact(e, pt);
    }
    return total;
}

// Expression flattened for repeated double evaluation with the parameters
// frozen.  Jet slots are laid out as slot = order*dim + (component-1); pot
// slots by derivative order.
class CompiledExpr {
public:
    CompiledExpr() = default;

    CompiledExpr(const Expr& e, const std::vector<mpq_class>& params) {
        if (e.terms().empty()) return;
        const int dim = e.ctx()->dim();
        for (const auto& term : e.terms()) {
            CTerm ct;
            ct.coeff = term.second.eval(params).get_d();
            for (const auto& f : term.first.factors()) {
                if (f.key.is_jet()) {
                    int slot = f.key.order() * dim + (f.key.comp() - 1);
                    ct.jets.emplace_back(slot, f.exp);
                    jet_slots_ = std::max(jet_slots_, slot + 1);
                } else {
                    ct.pots.emplace_back(f.key.pot_order(), f.exp);
                    pot_slots_ = std::max(pot_slots_, f.key.pot_order() + 1);
                }
            }
            terms_.push_back(std::move(ct));
        }
    }

    // jets must provide jet_slots() values, pot must provide pot_slots().
    double eval(const double* jets, const double* pot) const {
        double total = 0.0;
        for (const auto& ct : terms_) {
            double v = ct.coeff;
            for (const auto& [slot, exp] : ct.jets)
                for (int i = 0; i < exp; ++i) v *= jets[slot];
            for (const auto& [k, exp] : ct.pots)
                for (int i = 0; i < exp; ++i) v *= pot[k];
            total += v;
        }
        return total;
    }

    int jet_slots() const { return jet_slots_; }
    int pot_slots() const { return pot_slots_; }

private:
    struct CTerm {
        double coeff = 0.0;
        std::vector<std::pair<int, int>> jets; // (slot, exponent)
        std::vector<std::pair<int, int>> pots; // (order, exponent)
    };
    std::vector<CTerm> terms_;
    int jet_slots_ = 0;
    int pot_slots_ = 0;
};

// Truncated series with frozen parameters and a concrete step size: the
// h-powers are folded into the per-order weights once.
class CompiledSeries {
public:
    CompiledSeries() = default;

    CompiledSeries(const HSeries& s, const std::vector<mpq_class>& params, double h) {
        for (const auto& [k, e] : s.coeffs()) {
            double w = 1.0;
            for (int i = 0; i < k; ++i) w *= h;
            weights_.push_back(w);
            orders_.emplace_back(e, params);
            jet_slots_ = std::max(jet_slots_, orders_.back().jet_slots());
            pot_slots_ = std::max(pot_slots_, orders_.back().pot_slots());
        }
    }

    double eval(const double* jets, const double* pot) const {
        double total = 0.0;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            total += weights_[i] * orders_[i].eval(jets, pot);
        return total;
    }

    int jet_slots() const { return jet_slots_; }
    int pot_slots() const { return pot_slots_; }

private:
    std::vector<double> weights_;
    std::vector<CompiledExpr> orders_;
    int jet_slots_ = 0;
    int pot_slots_ = 0;
};

} // namespace modlag
