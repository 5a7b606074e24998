// SPDX-License-Identifier: MIT
// Plain-text and LaTeX rendering of expressions and series. Both renderings
// parse back through modlag::parse_expr, which the round-trip tests pin down.

#pragma once

#include <functional>
#include <string>

#include "modlag/core/series.hpp"

namespace modlag {

namespace detail {

inline std::string plain_jet_name(int comp, int order) {
    std::string s;
    if (order > 0) s += "d" + std::to_string(order);
    s += "phi" + std::to_string(comp);
    return s;
}

inline std::string latex_jet_name(int comp, int order) {
    std::string idx = "_{" + std::to_string(comp) + "}";
    switch (order) {
    case 0: return "\\phi" + idx;
    case 1: return "\\dot{\\phi}" + idx;
    case 2: return "\\ddot{\\phi}" + idx;
    default: return "\\phi" + idx + "^{(" + std::to_string(order) + ")}";
    }
}

inline std::string plain_pot_name(int order) { return "V" + std::to_string(order); }

inline std::string latex_pot_name(int order) {
    if (order <= 3) return "V" + std::string(static_cast<std::size_t>(order), '\'');
    return "V^{(" + std::to_string(order) + ")}";
}

inline std::string latex_param_name(const ParamTable& tab, int i) {
    const std::string& n = tab.name(i);
    if (n == "alpha") return "\\alpha";
    if (n == "dt") return "{\\Delta t}";
    if (n == "dx") return "{\\Delta x}";
    return n;
}

// Renders a polynomial with a caller-supplied parameter namer.
inline std::string format_poly(const Poly& p, const ParamTable& tab,
                               const std::function<std::string(int)>& namer,
                               const char* mul, const char* pow_open,
                               const char* pow_close) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
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
            if (printed) s += mul;
            s += namer(i);
            if (t.e[i] > 1) s += std::string("^") + pow_open + std::to_string(t.e[i]) + pow_close;
            printed = true;
        }
    }
    return s;
}

inline bool needs_parens(const Poly& p) { return p.terms().size() > 1; }

} // namespace detail

// ---------------------------------------------------------------------------
// Plain text
// ---------------------------------------------------------------------------

inline std::string to_text(const RatFun& c, const ParamTable& tab) {
    auto namer = [&](int i) { return tab.name(i); };
    std::string n = detail::format_poly(c.num(), tab, namer, "*", "", "");
    if (c.den() == Poly::one()) return n;
    std::string d = detail::format_poly(c.den(), tab, namer, "*", "", "");
    std::string s = detail::needs_parens(c.num()) ? "(" + n + ")" : n;
    s += "/";
    s += c.den().is_constant() ? d : "(" + d + ")";
    return s;
}

inline std::string to_text(const Expr& e) {
    if (e.is_zero()) return "0";
    const ParamTable& tab = e.ctx()->params();
    std::string s;
    bool first = true;
    for (const auto& [mono, coeff] : e.terms()) {
        RatFun c = coeff;
        bool neg = c.num().lead_sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        std::string cs = to_text(c, tab);
        bool unit_coeff = c.is_one();
        bool printed = false;
        if (!unit_coeff || mono.is_unit()) {
            bool wrap = c.den() == Poly::one() && detail::needs_parens(c.num());
            s += wrap ? "(" + cs + ")" : cs;
            printed = true;
        }
        for (const auto& f : mono.factors()) {
            if (printed) s += "*";
            s += f.key.is_jet() ? detail::plain_jet_name(f.key.comp(), f.key.order())
                                : detail::plain_pot_name(f.key.pot_order());
            if (f.exp > 1) s += "^" + std::to_string(f.exp);
            printed = true;
        }
    }
    return s;
}

inline std::string to_text(const HSeries& s) {
    std::string out;
    for (const auto& [k, e] : s.coeffs()) {
        if (!out.empty()) out += "\n";
        out += "h^" + std::to_string(k) + ": " + to_text(e);
    }
    if (out.empty()) out = "0";
    if (s.trunc_order() < trunc_inf)
        out += "\norder: " + std::to_string(s.trunc_order());
    return out;
}

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

inline std::string to_latex(const RatFun& c, const ParamTable& tab) {
    auto namer = [&](int i) { return detail::latex_param_name(tab, i); };
    std::string n = detail::format_poly(c.num(), tab, namer, " ", "{", "}");
    if (c.den() == Poly::one()) return n;
    std::string d = detail::format_poly(c.den(), tab, namer, " ", "{", "}");
    return "\\frac{" + n + "}{" + d + "}";
}

inline std::string to_latex(const Expr& e) {
    if (e.is_zero()) return "0";
    const ParamTable& tab = e.ctx()->params();
    std::string s;
    bool first = true;
    for (const auto& [mono, coeff] : e.terms()) {
        RatFun c = coeff;
        bool neg = c.num().lead_sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        std::string cs = to_latex(c, tab);
        bool unit_coeff = c.is_one();
        bool printed = false;
        if (!unit_coeff || mono.is_unit()) {
            bool frac = c.den() != Poly::one();
            bool wrap = !frac && detail::needs_parens(c.num());
            s += wrap ? "\\left(" + cs + "\\right)" : cs;
            printed = true;
        }
        for (const auto& f : mono.factors()) {
            if (printed) s += " ";
            std::string name = f.key.is_jet()
                                   ? detail::latex_jet_name(f.key.comp(), f.key.order())
                                   : detail::latex_pot_name(f.key.pot_order());
            if (f.exp > 1) {
                // Avoid a double superscript on derivative markers.
                if (name.find("^{(") != std::string::npos) name = "{" + name + "}";
                name += "^{" + std::to_string(f.exp) + "}";
            }
            s += name;
            printed = true;
        }
    }
    return s;
}

inline std::string to_latex(const HSeries& s) {
    std::string out;
    for (const auto& [k, e] : s.coeffs()) {
        if (!out.empty()) out += " + ";
        out += "h^{" + std::to_string(k) + "} \\left(" + to_latex(e) + "\\right)";
    }
    if (out.empty()) out = "0";
    if (s.trunc_order() < trunc_inf)
        out += " + O\\!\\left(h^{" + std::to_string(s.trunc_order() + 1) + "}\\right)";
    return out;
}

} // namespace modlag
