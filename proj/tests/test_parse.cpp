// SPDX-License-Identifier: MIT
// Text and LaTeX round trips through the expression parser.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "modlag/core/parse.hpp"
#include "modlag/core/print.hpp"

using namespace modlag;

namespace {

CtxPtr wave_ctx(bool angles = false) {
    Context::Options o;
    o.dim = 2;
    o.angle_pair = angles;
    return Context::create(o);
}

Expr random_expr(const CtxPtr& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> nfact(0, 3);
    std::uniform_int_distribution<int> comp(1, 2);
    std::uniform_int_distribution<int> ord(0, 4);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> par(0, 3);
    std::uniform_int_distribution<int> potq(0, 3);
    Expr e = Expr::zero(ctx);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        RatFun c = ctx->rat(num(rng), den(rng));
        c = c * RatFun::pow(ctx->param(par(rng)), par(rng));
        if (par(rng) == 0) c = c / (ctx->c() * ctx->c() - ctx->one());
        Expr m = Expr::scalar(ctx, c);
        const int f = nfact(rng);
        for (int k = 0; k < f; ++k) m = m * Expr::jet(ctx, comp(rng), ord(rng));
        if (potq(rng) == 0) m = m * Expr::pot(ctx, ord(rng));
        e += m;
    }
    return e;
}

} // namespace

TEST_CASE("plain text forms parse back to themselves") {
    auto ctx = wave_ctx();
    const std::vector<std::string> inputs = {
        "phi1",
        "d1phi2",
        "d3phi1^2",
        "V",
        "V1",
        "V2 + V3",
        "alpha*c*phi1",
        "(c^2 - 1)*d1phi1^2",
        "1/2*phi1 - 3/4*phi2",
        "2 phi1 d1phi1",
        "alpha^2/2*phi2^2 + alpha^2/2*phi1^2",
        "-phi2 + 3",
        "dt^2*dx^2*V1*phi1",
    };
    for (const auto& s : inputs) {
        Expr e = parse_expr(ctx, s);
        CHECK(parse_expr(ctx, to_text(e)) == e);
    }
}

TEST_CASE("apostrophes and superscripts denote potential derivatives") {
    auto ctx = wave_ctx();
    CHECK(parse_expr(ctx, "V'") == Expr::pot(ctx, 1));
    CHECK(parse_expr(ctx, "V''") == Expr::pot(ctx, 2));
    CHECK(parse_expr(ctx, "V'''") == Expr::pot(ctx, 3));
    CHECK(parse_expr(ctx, "V^{(4)}") == Expr::pot(ctx, 4));
    CHECK(parse_expr(ctx, "V' phi1") == Expr::pot(ctx, 1) * Expr::jet(ctx, 1, 0));
}

TEST_CASE("latex commands parse to the same expressions") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr p2 = Expr::jet(ctx, 2, 0);
    Expr v2 = Expr::jet(ctx, 2, 1);

    CHECK(parse_expr(ctx, "\\phi_{1}") == p1);
    CHECK(parse_expr(ctx, "\\phi_2") == p2);
    CHECK(parse_expr(ctx, "\\dot{\\phi}_{2}") == v2);
    CHECK(parse_expr(ctx, "\\ddot{\\phi}_{1}") == Expr::jet(ctx, 1, 2));
    CHECK(parse_expr(ctx, "\\phi_{1}^{(3)}") == Expr::jet(ctx, 1, 3));
    CHECK(parse_expr(ctx, "\\frac{\\alpha^{2}}{2} \\dot{\\phi}_{2}^{2}") ==
          v2 * v2 * (ctx->alpha() * ctx->alpha() * ctx->rat(1, 2)));
    CHECK(parse_expr(ctx, "2 c \\alpha \\dot{\\phi}_{2}") ==
          v2 * (ctx->alpha() * ctx->c() * ctx->rat(2)));
    CHECK(parse_expr(ctx, "{\\Delta t}^2 {\\Delta x}^2") ==
          Expr::scalar(ctx, ctx->dt() * ctx->dt() * ctx->dx() * ctx->dx()));
    CHECK(parse_expr(ctx, "V'' (\\phi_{1}^2 + \\phi_{2}^2)") ==
          Expr::pot(ctx, 2) * (p1 * p1 + p2 * p2));
}

TEST_CASE("scalar inverses cancel during parsing") {
    auto ctx = wave_ctx();
    CHECK(parse_expr(ctx, "(c^2-1)^-1*(c^2-1)*phi1") == Expr::jet(ctx, 1, 0));
    CHECK(parse_expr(ctx, "(c^2-1)^{-1}*(c^2-1)*phi1") == Expr::jet(ctx, 1, 0));
}

TEST_CASE("parser reports malformed input") {
    auto ctx = wave_ctx();
    CHECK_THROWS_AS(parse_expr(ctx, "foo"), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, "phi1 +"), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, "(phi1"), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, "phi1^"), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, "\\unknown{phi1}"), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, ""), ParseError);
    CHECK_THROWS_AS(parse_expr(ctx, "phi3"), ContextError);
    CHECK_THROWS_AS(parse_expr(ctx, "d9phi1"), OrderError);
    CHECK_THROWS_AS(parse_expr(ctx, "phi1/d1phi1"), AlgebraError);
}

TEST_CASE("random expressions round trip through both printers") {
    for (bool angles : {false, true}) {
        auto ctx = wave_ctx(angles);
        std::mt19937 rng(20260822);
        for (int iter = 0; iter < 60; ++iter) {
            Expr e = random_expr(ctx, rng);
            CAPTURE(to_text(e));
            CHECK(parse_expr(ctx, to_text(e)) == e);
            CHECK(parse_expr(ctx, to_latex(e)) == e);
        }
    }
}
