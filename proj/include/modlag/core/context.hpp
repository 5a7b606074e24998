// SPDX-License-Identifier: MIT
// Shared per-problem configuration: field dimension, derivative caps, and the
// scalar parameter table. Every expression holds a pointer to its context and
// refuses to combine with objects from another one.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modlag/core/ratfun.hpp"

namespace modlag {

class Context;
using CtxPtr = std::shared_ptr<const Context>;

class Context {
public:
    struct Options {
        int dim = 2;       // number of field components
        int jet_cap = 8;   // highest derivative order a jet variable may carry
        int pot_cap = 6;   // highest potential derivative order
        std::vector<std::string> user_params;
        bool angle_pair = false; // adds cth, sth for equivariance checks
    };

    static CtxPtr create(Options o) {
        auto ctx = std::shared_ptr<Context>(new Context(std::move(o)));
        return ctx;
    }

    static CtxPtr create() { return create(Options{}); }

    const ParamTable& params() const { return tab_; }
    int dim() const { return opt_.dim; }
    int jet_cap() const { return opt_.jet_cap; }
    int pot_cap() const { return opt_.pot_cap; }

    // Coefficient factories.
    RatFun rat(long num, long den = 1) const { return RatFun::rational(&tab_, num, den); }
    RatFun rat(const mpq_class& q) const { return RatFun::rational(&tab_, q); }
    RatFun zero() const { return RatFun::zero(&tab_); }
    RatFun one() const { return RatFun::one(&tab_); }
    RatFun param(int idx) const { return RatFun::param(&tab_, idx); }
    RatFun param(std::string_view name) const { return param(tab_.require(name)); }
    RatFun alpha() const { return param(ParamTable::alpha); }
    RatFun c() const { return param(ParamTable::c); }
    RatFun dt() const { return param(ParamTable::dt); }
    RatFun dx() const { return param(ParamTable::dx); }

private:
    explicit Context(Options o) : opt_(std::move(o)) {
        if (opt_.dim < 1 || opt_.dim > 15) throw ContextError("dimension out of range");
        if (opt_.jet_cap < 2 || opt_.jet_cap > 4000) throw ContextError("jet cap out of range");
        if (opt_.pot_cap < 1 || opt_.pot_cap > 64) throw ContextError("potential cap out of range");
        for (const auto& p : opt_.user_params) tab_.add_user(p);
        if (opt_.angle_pair) tab_.add_angle_pair("cth", "sth");
    }

    Options opt_;
    ParamTable tab_;
};

inline void require_same(const CtxPtr& a, const CtxPtr& b) {
    if (a != b) throw ContextError("objects belong to different contexts");
}

} // namespace modlag
