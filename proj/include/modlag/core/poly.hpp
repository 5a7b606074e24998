// SPDX-License-Identifier: MIT
// Exact sparse multivariate polynomials over GMP integers.
//
// Terms are kept sorted in descending graded-lexicographic order and never
// carry zero coefficients, so equal polynomials have identical term lists.
// Products and substitutions accept an optional ParamTable; when the table
// declares a cosine/sine pair, sin^2 is rewritten to 1 - cos^2 on the result.
// The gcd and exact-division routines work in the free ring on the stored
// representatives, which is sufficient because denominators are kept free of
// the angle pair (enforced one level up, in RatFun).

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "modlag/core/params.hpp"
#include "modlag/error.hpp"

namespace modlag {

inline int exp_total_degree(const ExpVec& e) {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

// Descending graded-lex: higher total degree first, ties broken by the
// earliest parameter with the larger exponent.
inline int exp_compare(const ExpVec& a, const ExpVec& b) {
    int da = exp_total_degree(a), db = exp_total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (int i = 0; i < max_params; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

class Poly {
public:
    struct Term {
        ExpVec e;
        mpz_class z;
    };

    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly integer(mpz_class v) {
        Poly p;
        if (v != 0) p.t_.push_back({zero_exp(), std::move(v)});
        return p;
    }

    static Poly integer(long v) { return integer(mpz_class(v)); }

    static Poly one() { return integer(1L); }

    static Poly monomial(int var, int exp = 1, mpz_class coeff = mpz_class(1)) {
        if (var < 0 || var >= max_params) throw ContextError("parameter index out of range");
        if (exp < 0 || exp > 255) throw AlgebraError("monomial exponent out of range");
        Poly p;
        if (coeff != 0) {
            ExpVec e = zero_exp();
            e[var] = static_cast<std::uint8_t>(exp);
            p.t_.push_back({e, std::move(coeff)});
        }
        return p;
    }

    bool is_zero() const { return t_.empty(); }

    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && exp_total_degree(t_[0].e) == 0);
    }

    mpz_class constant_value() const {
        if (t_.empty()) return mpz_class(0);
        if (!is_constant()) throw AlgebraError("polynomial is not constant");
        return t_[0].z;
    }

    const std::vector<Term>& terms() const { return t_; }

    int degree(int var) const {
        int d = 0;
        for (const auto& t : t_) d = std::max(d, static_cast<int>(t.e[var]));
        return d;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& t : t_) d = std::max(d, exp_total_degree(t.e));
        return d;
    }

    bool contains(int var) const { return degree(var) > 0; }

    // Sign of the leading (first stored) coefficient; 0 for the zero poly.
    int lead_sign() const { return t_.empty() ? 0 : sgn(t_[0].z); }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].e != b.t_[i].e || a.t_[i].z != b.t_[i].z) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& t : r.t_) t.z = -t.z;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, 1); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, -1); }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }

    // Product; when tab declares an angle pair the result is reduced so the
    // sine exponent of every term is at most one.
    static Poly mul(const Poly& a, const Poly& b, const ParamTable* tab) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::map<ExpVec, mpz_class, ExpLess> acc;
        for (const auto& ta : a.t_)
            for (const auto& tb : b.t_) {
                ExpVec e;
                for (int i = 0; i < max_params; ++i) {
                    int s = ta.e[i] + tb.e[i];
                    if (s > 255) throw AlgebraError("monomial exponent overflow");
                    e[i] = static_cast<std::uint8_t>(s);
                }
                acc[e] += ta.z * tb.z;
            }
        Poly r = from_map(std::move(acc));
        r.trig_reduce(tab);
        return r;
    }

    static Poly mul_int(const Poly& a, const mpz_class& k) {
        if (k == 0) return Poly();
        Poly r = a;
        for (auto& t : r.t_) t.z *= k;
        return r;
    }

    static Poly pow(const Poly& a, int n, const ParamTable* tab) {
        if (n < 0) throw AlgebraError("negative power of a polynomial");
        Poly r = one(), base = a;
        while (n > 0) {
            if (n & 1) r = mul(r, base, tab);
            n >>= 1;
            if (n) base = mul(base, base, tab);
        }
        return r;
    }

    // Positive gcd of all integer coefficients (0 for the zero polynomial).
    mpz_class content() const {
        mpz_class g(0);
        for (const auto& t : t_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.z.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // this / (sign of lead * content): primitive with positive leading term.
    Poly primitive() const {
        if (is_zero()) return Poly();
        mpz_class c = content();
        if (lead_sign() < 0) c = -c;
        Poly r = *this;
        for (auto& t : r.t_) t.z /= c;
        return r;
    }

    // Exact division; throws AlgebraError when b does not divide a.
    static Poly divexact(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw AlgebraError("polynomial division by zero");
        if (a.is_zero()) return Poly();
        if (b.is_constant()) {
            const mpz_class d = b.t_[0].z;
            Poly r = a;
            for (auto& t : r.t_) {
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.z.get_mpz_t(), d.get_mpz_t());
                if (rem != 0) throw AlgebraError("inexact polynomial division");
                t.z = std::move(q);
            }
            return r;
        }
        Poly rem = a;
        std::map<ExpVec, mpz_class, ExpLess> q;
        const Term& lb = b.t_[0];
        while (!rem.is_zero()) {
            const Term& lr = rem.t_[0];
            ExpVec e;
            for (int i = 0; i < max_params; ++i) {
                if (lr.e[i] < lb.e[i]) throw AlgebraError("inexact polynomial division");
                e[i] = static_cast<std::uint8_t>(lr.e[i] - lb.e[i]);
            }
            mpz_class qc, qrem;
            mpz_tdiv_qr(qc.get_mpz_t(), qrem.get_mpz_t(), lr.z.get_mpz_t(), lb.z.get_mpz_t());
            if (qrem != 0) throw AlgebraError("inexact polynomial division");
            Poly t;
            t.t_.push_back({e, qc});
            q[e] += qc;
            rem = rem - mul(t, b, nullptr);
        }
        return from_map(std::move(q));
    }

    // Free-ring gcd with positive leading coefficient, including the integer
    // content part; gcd(a, 0) = +/-a.
    static Poly gcd(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b.lead_sign() < 0 ? -b : b;
        if (b.is_zero()) return a.lead_sign() < 0 ? -a : a;
        mpz_class ic;
        mpz_gcd(ic.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
        Poly g = gcd_primitive(a.primitive(), b.primitive());
        return mul_int(g, ic);
    }

    // Substitutes a polynomial for one parameter.
    Poly subst(int var, const Poly& value, const ParamTable* tab) const {
        Poly r;
        // Group by the exponent of var and use Horner on the groups.
        int d = degree(var);
        std::vector<Poly> bucket(static_cast<std::size_t>(d) + 1);
        for (const auto& t : t_) {
            Term s = t;
            int k = s.e[var];
            s.e[var] = 0;
            Poly m;
            m.t_.push_back(std::move(s));
            bucket[static_cast<std::size_t>(k)] += m;
        }
        for (int k = d; k >= 0; --k) {
            r = mul(r, value, tab);
            r += bucket[static_cast<std::size_t>(k)];
        }
        return r;
    }

    mpq_class eval(const std::vector<mpq_class>& vals) const {
        mpq_class acc(0);
        for (const auto& t : t_) {
            mpq_class m(t.z);
            for (int i = 0; i < max_params; ++i) {
                if (t.e[i] == 0) continue;
                if (i >= static_cast<int>(vals.size()))
                    throw ContextError("missing parameter value in evaluation");
                mpz_class pn, pd;
                mpz_pow_ui(pn.get_mpz_t(), vals[i].get_num_mpz_t(), t.e[i]);
                mpz_pow_ui(pd.get_mpz_t(), vals[i].get_den_mpz_t(), t.e[i]);
                m *= mpq_class(pn, pd);
            }
            acc += m;
        }
        acc.canonicalize();
        return acc;
    }

    std::string to_string(const ParamTable& tab) const {
        if (t_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& t : t_) {
            mpz_class az = abs(t.z);
            if (first) {
                if (sgn(t.z) < 0) s += "-";
                first = false;
            } else {
                s += sgn(t.z) < 0 ? " - " : " + ";
            }
            bool printed = false;
            if (az != 1 || exp_total_degree(t.e) == 0) {
                s += az.get_str();
                printed = true;
            }
            for (int i = 0; i < tab.size(); ++i) {
                if (t.e[i] == 0) continue;
                if (printed) s += "*";
                s += tab.name(i);
                if (t.e[i] > 1) s += "^" + std::to_string(t.e[i]);
                printed = true;
            }
        }
        return s;
    }

    // Rewrites sin^k for k >= 2 using sin^2 = 1 - cos^2. No-op without an
    // angle pair on the table.
    void trig_reduce(const ParamTable* tab) {
        if (!tab || tab->sin_index() < 0) return;
        const int si = tab->sin_index();
        const int ci = tab->cos_index();
        bool needs = false;
        for (const auto& t : t_)
            if (t.e[si] >= 2) { needs = true; break; }
        if (!needs) return;
        std::map<ExpVec, mpz_class, ExpLess> acc;
        for (const auto& t : t_) {
            if (t.e[si] < 2) {
                acc[t.e] += t.z;
                continue;
            }
            const unsigned long k = t.e[si] / 2u;
            const std::uint8_t r = t.e[si] % 2u;
            for (unsigned long j = 0; j <= k; ++j) {
                ExpVec e = t.e;
                e[si] = r;
                int ce = e[ci] + static_cast<int>(2 * j);
                if (ce > 255) throw AlgebraError("monomial exponent overflow");
                e[ci] = static_cast<std::uint8_t>(ce);
                mpz_class c = binomial(k, j) * t.z;
                if (j & 1) c = -c;
                acc[e] += c;
            }
        }
        *this = from_map(std::move(acc));
    }

private:
    struct ExpLess {
        bool operator()(const ExpVec& a, const ExpVec& b) const { return exp_compare(a, b) < 0; }
    };

    static Poly from_map(std::map<ExpVec, mpz_class, ExpLess> m) {
        Poly p;
        p.t_.reserve(m.size());
        for (auto it = m.rbegin(); it != m.rend(); ++it)
            if (it->second != 0) p.t_.push_back({it->first, std::move(it->second)});
        return p;
    }

    static Poly merge(const Poly& a, const Poly& b, int sb) {
        Poly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            int c;
            if (i >= a.t_.size()) c = -1;
            else if (j >= b.t_.size()) c = 1;
            else c = exp_compare(a.t_[i].e, b.t_[j].e);
            if (c > 0) {
                r.t_.push_back(a.t_[i++]);
            } else if (c < 0) {
                Term t = b.t_[j++];
                if (sb < 0) t.z = -t.z;
                r.t_.push_back(std::move(t));
            } else {
                mpz_class z = sb < 0 ? mpz_class(a.t_[i].z - b.t_[j].z)
                                     : mpz_class(a.t_[i].z + b.t_[j].z);
                if (z != 0) r.t_.push_back({a.t_[i].e, std::move(z)});
                ++i, ++j;
            }
        }
        return r;
    }

    // --- gcd machinery -----------------------------------------------------

    // Per-parameter minimum exponent over all terms.
    ExpVec monomial_content() const {
        ExpVec m{};
        for (int i = 0; i < max_params; ++i) m[i] = 255;
        for (const auto& t : t_)
            for (int i = 0; i < max_params; ++i) m[i] = std::min(m[i], t.e[i]);
        return m;
    }

    void shift_down(const ExpVec& m) {
        for (auto& t : t_)
            for (int i = 0; i < max_params; ++i)
                t.e[i] = static_cast<std::uint8_t>(t.e[i] - m[i]);
    }

    static bool divides(const Poly& d, const Poly& a) {
        try {
            (void)divexact(a, d);
            return true;
        } catch (const AlgebraError&) {
            return false;
        }
    }

    // Gcd of primitive nonzero inputs; result primitive with positive lead.
    static Poly gcd_primitive(Poly a, Poly b) {
        if (a.lead_sign() < 0) a = -a;
        if (b.lead_sign() < 0) b = -b;
        if (a == b) return a;
        if (a.is_constant() || b.is_constant()) return one();

        // Split off the common monomial factor.
        ExpVec ma = a.monomial_content(), mb = b.monomial_content(), mg;
        for (int i = 0; i < max_params; ++i) mg[i] = std::min(ma[i], mb[i]);
        a.shift_down(ma);
        b.shift_down(mb);
        Poly mono;
        mono.t_.push_back({mg, mpz_class(1)});

        Poly g = gcd_stripped(std::move(a), std::move(b));
        return mul(mono, g, nullptr);
    }

    static Poly gcd_stripped(Poly a, Poly b) {
        if (a.is_constant() || b.is_constant()) return one();
        if (a == b) return a;
        // Divisibility trials catch the structured denominators that dominate
        // the real workload.
        if (divides(b, a)) return b;
        if (divides(a, b)) return a;

        // A parameter present on one side only is pushed into that side's
        // content with respect to it.
        for (int v = 0; v < max_params; ++v) {
            bool ina = a.contains(v), inb = b.contains(v);
            if (ina == inb) continue;
            Poly& host = ina ? a : b;
            auto rc = to_recursive(host, v);
            Poly cont = content_rec(rc);
            host = cont.primitive();
            return gcd_primitive(std::move(a), std::move(b));
        }

        int var = -1, best = 1 << 20;
        for (int v = 0; v < max_params; ++v) {
            if (!a.contains(v)) continue;
            int w = std::min(a.degree(v), b.degree(v));
            if (w < best) { best = w; var = v; }
        }
        if (var < 0) return one();

        auto ra = to_recursive(a, var);
        auto rb = to_recursive(b, var);
        Poly ca = content_rec(ra), cb = content_rec(rb);
        divide_rec(ra, ca);
        divide_rec(rb, cb);
        Poly cg = gcd(ca, cb);
        if (deg_rec(ra) < deg_rec(rb)) ra.swap(rb);

        // Subresultant polynomial remainder sequence.
        Poly sg = one(), sh = one();
        while (deg_rec(rb) > 0) {
            int delta = deg_rec(ra) - deg_rec(rb);
            auto r = prem(ra, rb);
            if (r.empty()) {
                Poly cont = content_rec(rb);
                divide_rec(rb, cont);
                Poly res = from_recursive(rb, var);
                if (res.lead_sign() < 0) res = -res;
                return mul(cg, res, nullptr);
            }
            Poly div = mul(sg, pow(sh, delta, nullptr), nullptr);
            divide_rec(r, div);
            ra = std::move(rb);
            rb = std::move(r);
            sg = ra[static_cast<std::size_t>(deg_rec(ra))];
            if (delta == 1) {
                sh = sg;
            } else if (delta > 1) {
                sh = divexact(pow(sg, delta, nullptr), pow(sh, delta - 1, nullptr));
            }
        }
        return cg;
    }

    static std::vector<Poly> to_recursive(const Poly& p, int var) {
        std::vector<Poly> c(static_cast<std::size_t>(p.degree(var)) + 1);
        for (const auto& t : p.t_) {
            Term s = t;
            int k = s.e[var];
            s.e[var] = 0;
            Poly m;
            m.t_.push_back(std::move(s));
            c[static_cast<std::size_t>(k)] += m;
        }
        while (c.size() > 1 && c.back().is_zero()) c.pop_back();
        return c;
    }

    static Poly from_recursive(const std::vector<Poly>& c, int var) {
        Poly r;
        for (std::size_t k = 0; k < c.size(); ++k)
            r += mul(c[k], monomial(var, static_cast<int>(k)), nullptr);
        return r;
    }

    static Poly content_rec(const std::vector<Poly>& c) {
        Poly g;
        for (const auto& p : c) g = gcd(g, p);
        return g;
    }

    static void divide_rec(std::vector<Poly>& c, const Poly& g) {
        for (auto& p : c) p = divexact(p, g);
    }

    static int deg_rec(const std::vector<Poly>& c) {
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
            if (!c[k].is_zero()) return k;
        return -1;
    }

    // Exact pseudo-remainder lead(b)^(deg a - deg b + 1) * a mod b in the main
    // variable; coefficients are polynomials in the remaining parameters.
    static std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
        const int db = deg_rec(b);
        const Poly& lb = b[static_cast<std::size_t>(db)];
        int da = deg_rec(a);
        int e = da - db + 1;
        while (da >= db && da >= 0) {
            Poly la = a[static_cast<std::size_t>(da)];
            // a <- lb * a - la * x^(da-db) * b
            for (auto& p : a) p = mul(p, lb, nullptr);
            for (int k = 0; k <= db; ++k)
                a[static_cast<std::size_t>(k + da - db)] -=
                    mul(la, b[static_cast<std::size_t>(k)], nullptr);
            a[static_cast<std::size_t>(da)] = Poly();
            --e;
            int nd = deg_rec(a);
            if (nd >= da) throw AlgebraError("pseudo-division failed to reduce degree");
            da = nd;
        }
        a.resize(static_cast<std::size_t>(std::max(da, -1) + 1));
        if (e > 0 && !a.empty()) {
            Poly s = pow(lb, e, nullptr);
            for (auto& p : a) p = mul(p, s, nullptr);
        }
        return a;
    }

    std::vector<Term> t_;
};

} // namespace modlag
