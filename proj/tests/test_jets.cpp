// SPDX-License-Identifier: MIT
// Total derivative, Euler operator and their interplay.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modlag/jets/jets.hpp"

using namespace modlag;

namespace {

CtxPtr wave_ctx() {
    Context::Options o;
    o.dim = 2;
    return Context::create(o);
}

Expr random_expr(const CtxPtr& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> nfact(0, 3);
    std::uniform_int_distribution<int> comp(1, 2);
    std::uniform_int_distribution<int> ord(0, 2);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> potq(0, 3);
    Expr e = Expr::zero(ctx);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Expr m = Expr::scalar(ctx, ctx->rat(coeff(rng)));
        const int f = nfact(rng);
        for (int k = 0; k < f; ++k) m = m * Expr::jet(ctx, comp(rng), ord(rng));
        if (potq(rng) == 0) m = m * Expr::pot(ctx, 1);
        e += m;
    }
    return e;
}

} // namespace

TEST_CASE("total derivative shifts jet orders") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr v1 = Expr::jet(ctx, 1, 1);
    Expr a1 = Expr::jet(ctx, 1, 2);

    CHECK(total_derivative(p1) == v1);
    CHECK(total_derivative(p1 * p1) == p1 * v1 * ctx->rat(2));
    CHECK(total_derivative(v1) == a1);
    CHECK(total_derivative(p1, 2) == a1);

    // The radial potential differentiates through its argument.
    Expr p2 = Expr::jet(ctx, 2, 0);
    Expr v2 = Expr::jet(ctx, 2, 1);
    CHECK(total_derivative(Expr::pot(ctx, 0)) ==
          Expr::pot(ctx, 1) * (p1 * v1 + p2 * v2) * ctx->rat(2));
}

TEST_CASE("total derivative obeys the product rule") {
    auto ctx = wave_ctx();
    std::mt19937 rng(20260822);
    for (int iter = 0; iter < 30; ++iter) {
        Expr a = random_expr(ctx, rng);
        Expr b = random_expr(ctx, rng);
        CHECK(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b));
        CHECK(total_derivative(a + b) == total_derivative(a) + total_derivative(b));
    }
}

TEST_CASE("euler operator of a first order density") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr p2 = Expr::jet(ctx, 2, 0);
    Expr v1 = Expr::jet(ctx, 1, 1);
    Expr v2 = Expr::jet(ctx, 2, 1);

    // L = (|phi'|^2 - V(|phi|^2)) / 2 gives phi'' + V' phi = 0 up to sign.
    Expr L = (v1 * v1 + v2 * v2 - Expr::pot(ctx, 0)) * ctx->rat(1, 2);
    CHECK(euler_operator(L, 1) == -Expr::pot(ctx, 1) * p1 - Expr::jet(ctx, 1, 2));
    CHECK(euler_operator(L, 2) == -Expr::pot(ctx, 1) * p2 - Expr::jet(ctx, 2, 2));
}

TEST_CASE("euler operator annihilates total derivatives") {
    auto ctx = wave_ctx();
    std::mt19937 rng(424242);
    for (int iter = 0; iter < 100; ++iter) {
        Expr e = random_expr(ctx, rng);
        for (const Expr& comp : euler_system(total_derivative(e))) CHECK(comp.is_zero());
    }
}

TEST_CASE("euler operator vanishes only on null densities") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr v1 = Expr::jet(ctx, 1, 1);
    Expr v2 = Expr::jet(ctx, 2, 1);

    // p1 * v1 = d/dxi (p1^2 / 2) is null, v1 * v2 is not.
    auto null = euler_system(p1 * v1);
    CHECK(null[0].is_zero());
    CHECK(null[1].is_zero());
    auto live = euler_system(v1 * v2);
    CHECK(!(live[0].is_zero() && live[1].is_zero()));
}

TEST_CASE("jet maps apply stored substitutions") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr a1 = Expr::jet(ctx, 1, 2);

    JetMap map(ctx);
    map.set(1, 2, p1 * Expr::pot(ctx, 1));
    CHECK(map.has(1, 2));
    CHECK(!map.has(2, 2));
    CHECK(map.apply(a1 * a1) == p1 * p1 * Expr::pot(ctx, 1) * Expr::pot(ctx, 1));
}

TEST_CASE("gradient with respect to a jet level") {
    auto ctx = wave_ctx();
    Expr p1 = Expr::jet(ctx, 1, 0);
    Expr v1 = Expr::jet(ctx, 1, 1);
    Expr v2 = Expr::jet(ctx, 2, 1);

    auto g = jet_gradient(v1 * v1 * p1 + v2, 1);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == p1 * v1 * ctx->rat(2));
    CHECK(g[1] == Expr::one(ctx));
}
