// SPDX-License-Identifier: MIT
// Problem definition files: a small line-oriented text format that fixes the
// field dimension, the wave parameters (symbolic or numeric), the potential,
// the truncation order, and an optional custom stencil.
//
//     # comment
//     dimension = 2
//     alpha = symbolic        # or an exact literal such as 0, 0.3, 3/10
//     c = symbolic
//     dt = symbolic
//     dx = symbolic
//     potential = abstract    # or polynomial | gaussian_well
//     coefficients = 0, -1/2, -1     # polynomial only: V(s) = sum q_k s^k
//     order = 4
//     stencil = c*dt, -1, 1/dt^2     # optional, repeatable triple
//
// Numeric literals are exact rationals: integers, fractions p/q, or decimal
// strings (0.15 means 3/20).  No floating-point rounding is involved.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "modlag/core/parse.hpp"
#include "modlag/stencil/problem.hpp"

namespace modlag {

// A wave parameter as declared in the file: either kept symbolic or pinned
// to an exact rational value.
struct ParamSpec {
    bool symbolic = true;
    mpq_class value;

    bool is_zero() const { return !symbolic && value == 0; }
};

enum class PotentialKind { abstract, polynomial, gaussian_well };

// A custom stencil line, still in textual form; offsets and weights are
// parsed against a context when the problem is built.
struct RawStencilTerm {
    std::string offset;
    int rotation = 0;
    std::string weight;
};

struct ProblemFile {
    int dimension = 2;
    ParamSpec alpha, c, dt, dx;
    PotentialKind potential = PotentialKind::abstract;
    std::vector<mpq_class> coefficients; // polynomial potential only
    int order = 4;
    std::vector<RawStencilTerm> stencil;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Exact rational literal: integer, fraction p/q, or decimal string.
inline mpq_class parse_rational(std::string_view s, int line) {
    s = trim(s);
    const std::string where = " (line " + std::to_string(line) + ")";
    if (s.empty()) throw ParseError("empty numeric literal" + where);

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto digits = [&](std::string_view t) {
        if (t.empty()) return false;
        for (char ch : t)
            if (ch < '0' || ch > '9') return false;
        return true;
    };

    mpq_class out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
        if (!digits(num) || !digits(den))
            throw ParseError("malformed fraction literal" + where);
        out = mpq_class(mpz_class(std::string(num)), mpz_class(std::string(den)));
        if (out.get_den() == 0) throw ParseError("zero denominator" + where);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if ((!whole.empty() && !digits(whole)) || !digits(frac))
            throw ParseError("malformed decimal literal" + where);
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
        out = mpq_class(w * scale + mpz_class(std::string(frac)), scale);
    } else {
        if (!digits(s)) throw ParseError("malformed integer literal" + where);
        out = mpq_class(mpz_class(std::string(s)));
    }
    out.canonicalize();
    return negative ? mpq_class(-out) : out;
}

inline ParamSpec parse_param_spec(std::string_view v, int line) {
    v = trim(v);
    ParamSpec spec;
    if (v == "symbolic") return spec;
    spec.symbolic = false;
    spec.value = parse_rational(v, line);
    return spec;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(trim(s.substr(pos)));
            return out;
        }
        out.push_back(trim(s.substr(pos, next - pos)));
        pos = next + 1;
    }
}

} // namespace detail

inline ProblemFile parse_problem_text(std::string_view text) {
    ProblemFile pf;
    bool saw_coeffs = false;
    std::size_t pos = 0;
    int line = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        raw = detail::trim(raw);
        if (raw.empty()) continue;

        const auto eq = raw.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value' (line " + std::to_string(line) + ")");
        const std::string_view key = detail::trim(raw.substr(0, eq));
        const std::string_view val = detail::trim(raw.substr(eq + 1));
        const std::string where = " (line " + std::to_string(line) + ")";
        if (val.empty()) throw ParseError("missing value for '" + std::string(key) + "'" + where);

        if (key == "dimension") {
            mpq_class d = detail::parse_rational(val, line);
            if (d.get_den() != 1 || d < 1 || d > 15)
                throw ParseError("dimension must be an integer between 1 and 15" + where);
            pf.dimension = static_cast<int>(d.get_num().get_si());
        } else if (key == "alpha") {
            pf.alpha = detail::parse_param_spec(val, line);
        } else if (key == "c") {
            pf.c = detail::parse_param_spec(val, line);
        } else if (key == "dt") {
            pf.dt = detail::parse_param_spec(val, line);
        } else if (key == "dx") {
            pf.dx = detail::parse_param_spec(val, line);
        } else if (key == "potential") {
            if (val == "abstract") pf.potential = PotentialKind::abstract;
            else if (val == "polynomial") pf.potential = PotentialKind::polynomial;
            else if (val == "gaussian_well") pf.potential = PotentialKind::gaussian_well;
            else throw ParseError("unknown potential kind '" + std::string(val) + "'" + where);
        } else if (key == "coefficients") {
            pf.coefficients.clear();
            for (std::string_view piece : detail::split(val, ','))
                pf.coefficients.push_back(detail::parse_rational(piece, line));
            saw_coeffs = true;
        } else if (key == "order") {
            mpq_class n = detail::parse_rational(val, line);
            if (n.get_den() != 1 || n < 0 || n > 64)
                throw ParseError("order must be an integer between 0 and 64" + where);
            pf.order = static_cast<int>(n.get_num().get_si());
        } else if (key == "stencil") {
            auto pieces = detail::split(val, ',');
            if (pieces.size() != 3)
                throw ParseError("stencil lines take three fields: offset, rotation, weight" + where);
            mpq_class r = detail::parse_rational(pieces[1], line);
            if (r.get_den() != 1)
                throw ParseError("stencil rotation must be an integer" + where);
            pf.stencil.push_back({std::string(pieces[0]),
                                  static_cast<int>(r.get_num().get_si()),
                                  std::string(pieces[2])});
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'" + where);
        }
    }

    if (pf.potential == PotentialKind::polynomial && !saw_coeffs)
        throw ParseError("polynomial potential needs a 'coefficients' line");
    if (pf.potential != PotentialKind::polynomial && saw_coeffs)
        throw ParseError("'coefficients' only applies to the polynomial potential");
    return pf;
}

inline ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

// Builds the symbolic problem the file describes.  The expansion pipeline is
// specific to the two-component rotating wave; numeric parameter values do
// not enter here (the numeric layer binds them) except that alpha pinned to
// zero selects the alpha-free pipeline.
inline StencilProblem make_stencil_problem(const ProblemFile& pf, const CtxPtr& ctx) {
    if (pf.dimension != 2)
        throw ContextError("the wave expansion pipeline needs a two-component field");
    const bool alpha0 = pf.alpha.is_zero();
    if (pf.stencil.empty()) return StencilProblem::five_point(ctx, pf.order, alpha0);

    std::vector<StencilTerm> terms;
    terms.reserve(pf.stencil.size());
    for (const RawStencilTerm& raw : pf.stencil) {
        Expr off = parse_expr(ctx, raw.offset);
        Expr wt = parse_expr(ctx, raw.weight);
        terms.push_back({off.scalar_value(), raw.rotation, wt.scalar_value()});
    }
    return StencilProblem::custom(ctx, pf.order, std::move(terms), alpha0);
}

} // namespace modlag
