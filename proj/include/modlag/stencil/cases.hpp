// SPDX-License-Identifier: MIT
// Distinguished parameter regimes of the five-point wave scheme.  They are
// imposed exactly, by polynomial substitution on the coefficient field.

#pragma once

#include "modlag/core/params.hpp"
#include "modlag/core/series.hpp"

namespace modlag {

// A standing wave, step sizes locked to the wave speed, or no rotation.
enum class SpecialCase { c0, dx_eq_c_dt, alpha0 };

namespace detail {

inline Poly case_value(SpecialCase sc) {
    switch (sc) {
    case SpecialCase::c0:
    case SpecialCase::alpha0:
        return Poly::zero();
    case SpecialCase::dx_eq_c_dt:
        return Poly::mul(Poly::monomial(ParamTable::c), Poly::monomial(ParamTable::dt), nullptr);
    }
    throw AlgebraError("unknown parameter case");
}

inline int case_param(SpecialCase sc) {
    switch (sc) {
    case SpecialCase::c0:
        return ParamTable::c;
    case SpecialCase::alpha0:
        return ParamTable::alpha;
    case SpecialCase::dx_eq_c_dt:
        return ParamTable::dx;
    }
    throw AlgebraError("unknown parameter case");
}

inline RatFun impose_case(const RatFun& r, SpecialCase sc) {
    return r.subst(case_param(sc), case_value(sc));
}

inline Expr impose_case(const Expr& e, SpecialCase sc) {
    return subst_param(e, case_param(sc), case_value(sc));
}

inline HSeries impose_case(const HSeries& s, SpecialCase sc) {
    return subst_param(s, case_param(sc), case_value(sc));
}

} // namespace detail

} // namespace modlag
