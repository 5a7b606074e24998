// SPDX-License-Identifier: MIT
// Series expansion of the five-point scheme around a rotating wave.

#include <catch2/catch_amalgamated.hpp>

#include "modlag/core/parse.hpp"
#include "modlag/core/print.hpp"
#include "modlag/stencil/equivariance.hpp"
#include "modlag/stencil/expand.hpp"

using namespace modlag;

namespace {

CtxPtr wave_ctx(bool angles = false) {
    Context::Options o;
    o.dim = 2;
    o.angle_pair = angles;
    return Context::create(o);
}

// Reference coefficients of the action density, computed independently by
// expanding the quadratic differences by hand.
const char* kLag0 =
    "1/2*(alpha^2*(phi1^2 + phi2^2)"
    " + 2*alpha*c*(phi1*d1phi2 - phi2*d1phi1)"
    " + (c^2 - 1)*(d1phi1^2 + d1phi2^2) + V)";

const char* kLag2 =
    "1/24*(-alpha^4*dt^2*(phi1^2 + phi2^2)"
    " + 2*alpha*c*dt^2*phi2*(2*alpha^2*d1phi1 + 3*alpha*c*d2phi2 - 2*c^2*d3phi1)"
    " + 2*alpha*c*dt^2*phi1*(c*(3*alpha*d2phi1 + 2*c*d3phi2) - 2*alpha^2*d1phi2)"
    " + (c^4*dt^2 - dx^2)*(4*d3phi1*d1phi1 + 4*d3phi2*d1phi2 + 3*d2phi1^2 + 3*d2phi2^2))";

const char* kLag4 =
    "1/720*(alpha^6*dt^4*(phi1^2 + phi2^2)"
    " + alpha*c*dt^4*phi1*(6*alpha^4*d1phi2"
    "   + c*(-15*alpha^3*d2phi1 - 20*alpha^2*c*d3phi2 + 15*alpha*c^2*d4phi1 + 6*c^3*d5phi2))"
    " + alpha*c*dt^4*phi2*(-6*alpha^4*d1phi1 - 15*alpha^3*c*d2phi2 + 20*alpha^2*c^2*d3phi1"
    "   + 15*alpha*c^3*d4phi2 - 6*c^4*d5phi1)"
    " + (c^6*dt^4 - dx^4)*(6*d5phi1*d1phi1 + 6*d5phi2*d1phi2 + 15*d4phi1*d2phi1"
    "   + 15*d4phi2*d2phi2 + 10*d3phi1^2 + 10*d3phi2^2))";

const char* kResidual0_1 = "(alpha^2 + V1)*phi1 + 2*c*alpha*d1phi2 - (c^2 - 1)*d2phi1";
const char* kResidual0_2 = "(alpha^2 + V1)*phi2 - 2*c*alpha*d1phi1 - (c^2 - 1)*d2phi2";

} // namespace

TEST_CASE("shifted state expansion has the expected leading terms") {
    auto ctx = wave_ctx();
    auto s = expand_shift(ctx, 1, 0, 2);
    REQUIRE(s.size() == 2);
    CHECK(s[0].coeff(0) == Expr::jet(ctx, 1, 0));
    CHECK(s[1].coeff(0) == Expr::jet(ctx, 2, 0));
    CHECK(s[0].coeff(1) == parse_expr(ctx, "alpha*dt*phi2 - c*dt*d1phi1"));
    CHECK(s[1].coeff(1) == parse_expr(ctx, "-alpha*dt*phi1 - c*dt*d1phi2"));

    auto x = expand_shift(ctx, 0, 1, 2);
    CHECK(x[0].coeff(1) == parse_expr(ctx, "dx*d1phi1"));
    CHECK(x[0].coeff(2) == parse_expr(ctx, "1/2*dx^2*d2phi1"));

    CHECK(expand_shift(ctx, 0, 0, 3)[0] == HSeries::constant(Expr::jet(ctx, 1, 0), 0, 3));
}

TEST_CASE("action density starts from the continuum wave lagrangian") {
    auto ctx = wave_ctx();
    HSeries lag = expand_discrete_lagrangian(ctx, 0);
    CHECK(lag.trunc_order() == 0);
    CHECK(lag.coeff(0) == parse_expr(ctx, kLag0));
}

TEST_CASE("action density matches the reference series to fourth order") {
    auto ctx = wave_ctx();
    HSeries lag = drop_null_terms(expand_discrete_lagrangian(ctx, 4));

    CHECK(lag.coeff(0) == parse_expr(ctx, kLag0));
    CHECK(lag.coeff(1).is_zero());
    CHECK(lag.coeff(2) == parse_expr(ctx, kLag2));
    CHECK(lag.coeff(3).is_zero());
    CHECK(lag.coeff(4) == parse_expr(ctx, kLag4));
}

TEST_CASE("odd action coefficients are null densities") {
    auto ctx = wave_ctx();
    HSeries lag = expand_discrete_lagrangian(ctx, 3);
    // The raw expansion carries odd-order terms, but they vanish under the
    // variational derivative.
    CHECK(!lag.coeff(1).is_zero());
    for (int k : {1, 3})
        for (const Expr& comp : euler_system(lag.coeff(k))) CHECK(comp.is_zero());
}

TEST_CASE("scheme residual starts from the travelling wave equation") {
    auto ctx = wave_ctx();
    auto res = expand_functional_equation(ctx, 4);
    REQUIRE(res.size() == 2);
    CHECK(res[0].coeff(0) == parse_expr(ctx, kResidual0_1));
    CHECK(res[1].coeff(0) == parse_expr(ctx, kResidual0_2));
    for (int k : {1, 3}) {
        CHECK(res[0].coeff(k).is_zero());
        CHECK(res[1].coeff(k).is_zero());
    }
    CHECK(!res[0].coeff(2).is_zero());
    CHECK(res[0].coeff(2).max_jet_order() == 4);
    CHECK(res[0].coeff(4).max_jet_order() == 6);
}

TEST_CASE("variational derivative of the action recovers the residual") {
    auto ctx = wave_ctx();
    HSeries lag = expand_discrete_lagrangian(ctx, 3);
    auto res = expand_functional_equation(ctx, 3);
    for (int k = 0; k <= 3; ++k) {
        auto el = euler_system(lag.coeff(k));
        CHECK(el[0] == res[0].coeff(k));
        CHECK(el[1] == res[1].coeff(k));
    }
}

TEST_CASE("static limit reduces to the plain second difference") {
    auto ctx = wave_ctx();
    auto res = expand_functional_equation(ctx, 4);
    std::vector<HSeries> lim;
    for (const auto& comp : res)
        lim.push_back(subst_param(subst_param(comp, ParamTable::alpha, Poly::zero()),
                                  ParamTable::c, Poly::zero()));

    CHECK(lim[0].coeff(0) == parse_expr(ctx, "V1*phi1 + d2phi1"));
    CHECK(lim[0].coeff(2) == parse_expr(ctx, "1/12*dx^2*d4phi1"));
    CHECK(lim[0].coeff(4) == parse_expr(ctx, "1/360*dx^4*d6phi1"));
    CHECK(lim[1].coeff(2) == parse_expr(ctx, "1/12*dx^2*d4phi2"));
}

TEST_CASE("the action and the residual respect the rotation symmetry") {
    auto ctx = wave_ctx(true);
    HSeries lag = expand_discrete_lagrangian(ctx, 2);
    CHECK(rotation_invariant(lag));

    auto res = expand_functional_equation(ctx, 2);
    CHECK(rotation_equivariant(res));

    // A deliberately broken pair fails the check.
    auto broken = res;
    broken[0] += HSeries::constant(Expr::jet(ctx, 1, 0), 0, 2);
    CHECK(!rotation_equivariant(broken));
}
