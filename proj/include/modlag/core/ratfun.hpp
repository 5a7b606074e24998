// SPDX-License-Identifier: MIT
// Rational functions in the scalar parameters, kept in canonical form.
//
// Invariants: the denominator is nonzero, shares no polynomial factor and no
// integer content with the numerator, has a positive leading coefficient, and
// never involves the angle pair (so the sin^2 rewrite upstream cannot change
// the value of a fraction). Under these rules equal values have identical
// representations, which makes zero tests and golden comparisons exact.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modlag/core/poly.hpp"

namespace modlag {

class RatFun {
public:
    RatFun() : tab_(nullptr), num_(), den_(Poly::one()) {}

    static RatFun zero(const ParamTable* tab) { return RatFun(tab, Poly::zero(), Poly::one()); }
    static RatFun one(const ParamTable* tab) { return RatFun(tab, Poly::one(), Poly::one()); }

    static RatFun integer(const ParamTable* tab, long v) {
        return RatFun(tab, Poly::integer(v), Poly::one());
    }

    static RatFun rational(const ParamTable* tab, const mpq_class& q) {
        return RatFun(tab, Poly::integer(mpz_class(q.get_num())),
                      Poly::integer(mpz_class(q.get_den())));
    }

    static RatFun rational(const ParamTable* tab, long num, long den) {
        return make(tab, Poly::integer(num), Poly::integer(den));
    }

    static RatFun param(const ParamTable* tab, int var) {
        return RatFun(tab, Poly::monomial(var), Poly::one());
    }

    static RatFun from_poly(const ParamTable* tab, Poly p) {
        return RatFun(tab, std::move(p), Poly::one());
    }

    // General constructor with canonicalization.
    static RatFun make(const ParamTable* tab, Poly num, Poly den) {
        if (den.is_zero()) throw AlgebraError("zero denominator");
        if (num.is_zero()) return zero(tab);
        Poly g = Poly::gcd(num, den);
        if (!(g.is_constant() && g.constant_value() == 1)) {
            num = Poly::divexact(num, g);
            den = Poly::divexact(den, g);
        }
        if (den.lead_sign() < 0) {
            num = -num;
            den = -den;
        }
        RatFun r(tab, std::move(num), std::move(den));
        r.check_den();
        return r;
    }

    const ParamTable* table() const { return tab_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly::one() && den_ == Poly::one(); }

    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }

    mpq_class rational_value() const {
        if (!is_rational()) throw AlgebraError("coefficient is not a plain rational");
        mpq_class q(num_.constant_value(), den_.constant_value());
        q.canonicalize();
        return q;
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    friend RatFun operator-(const RatFun& a) { return RatFun(a.tab_, -a.num_, a.den_); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) { return add(a, b, 1); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return add(a, b, -1); }

    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        const ParamTable* tab = join(a, b);
        if (a.is_zero() || b.is_zero()) return zero(tab);
        // Cross-cancel before multiplying to keep intermediates small.
        Poly g1 = Poly::gcd(a.num_, b.den_);
        Poly g2 = Poly::gcd(b.num_, a.den_);
        Poly n1 = Poly::divexact(a.num_, g1), d2 = Poly::divexact(b.den_, g1);
        Poly n2 = Poly::divexact(b.num_, g2), d1 = Poly::divexact(a.den_, g2);
        Poly n = Poly::mul(n1, n2, tab);
        Poly d = Poly::mul(d1, d2, nullptr);
        // The sin^2 rewrite on the numerator can surface fresh common
        // factors, so finish with full canonicalization.
        return make(tab, std::move(n), std::move(d));
    }

    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw AlgebraError("division by zero coefficient");
        return a * b.inv();
    }

    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
    RatFun& operator/=(const RatFun& b) { return *this = *this / b; }

    RatFun inv() const {
        if (is_zero()) throw AlgebraError("division by zero coefficient");
        RatFun r(tab_, den_, num_);
        if (r.den_.lead_sign() < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        r.check_den();
        return r;
    }

    static RatFun pow(const RatFun& a, int n) {
        if (n < 0) return pow(a.inv(), -n);
        RatFun r = one(a.tab_), base = a;
        while (n > 0) {
            if (n & 1) r *= base;
            n >>= 1;
            if (n) base *= base;
        }
        return r;
    }

    // Substitutes a polynomial value for one parameter.
    RatFun subst(int var, const Poly& value) const {
        Poly n = num_.subst(var, value, tab_);
        Poly d = den_.subst(var, value, nullptr);
        if (d.is_zero()) throw AlgebraError("substitution produced a zero denominator");
        return make(tab_, std::move(n), std::move(d));
    }

    mpq_class eval(const std::vector<mpq_class>& vals) const {
        mpq_class d = den_.eval(vals);
        if (d == 0) throw AlgebraError("denominator vanishes at evaluation point");
        mpq_class r = num_.eval(vals) / d;
        r.canonicalize();
        return r;
    }

    std::string to_string(const ParamTable& tab) const {
        if (den_ == Poly::one()) return num_.to_string(tab);
        std::string n = num_.to_string(tab);
        std::string d = den_.to_string(tab);
        bool nsimple = num_.terms().size() <= 1;
        bool dsimple = den_.terms().size() == 1 && den_.is_constant();
        std::string s = nsimple ? n : "(" + n + ")";
        s += "/";
        s += dsimple ? d : "(" + d + ")";
        return s;
    }

private:
    RatFun(const ParamTable* tab, Poly num, Poly den)
        : tab_(tab), num_(std::move(num)), den_(std::move(den)) {}

    static const ParamTable* join(const RatFun& a, const RatFun& b) {
        if (a.tab_ && b.tab_ && a.tab_ != b.tab_)
            throw ContextError("coefficients from different contexts");
        return a.tab_ ? a.tab_ : b.tab_;
    }

    static RatFun add(const RatFun& a, const RatFun& b, int sb) {
        const ParamTable* tab = join(a, b);
        if (a.is_zero()) return sb < 0 ? -b : b;
        if (b.is_zero()) return RatFun(tab, a.num_, a.den_);
        if (a.den_ == b.den_) {
            Poly n = sb < 0 ? a.num_ - b.num_ : a.num_ + b.num_;
            return make(tab, std::move(n), a.den_);
        }
        Poly g = Poly::gcd(a.den_, b.den_);
        Poly da = Poly::divexact(a.den_, g);
        Poly db = Poly::divexact(b.den_, g);
        Poly n1 = Poly::mul(a.num_, db, tab);
        Poly n2 = Poly::mul(b.num_, da, tab);
        Poly n = sb < 0 ? n1 - n2 : n1 + n2;
        Poly d = Poly::mul(a.den_, db, nullptr);
        return make(tab, std::move(n), std::move(d));
    }

    void check_den() const {
        if (!tab_) return;
        int si = tab_->sin_index(), ci = tab_->cos_index();
        if (si < 0) return;
        if (den_.contains(si) || den_.contains(ci))
            throw AlgebraError("angle parameter in a denominator");
    }

    const ParamTable* tab_;
    Poly num_;
    Poly den_;
};

} // namespace modlag
