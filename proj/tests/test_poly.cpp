// SPDX-License-Identifier: MIT
// Exact polynomial and rational-function arithmetic.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "modlag/core/poly.hpp"
#include "modlag/core/ratfun.hpp"

using namespace modlag;

namespace {

ParamTable plain_table() {
    return ParamTable{};
}

ParamTable angle_table() {
    ParamTable t;
    t.add_angle_pair("cth", "sth");
    return t;
}

Poly random_poly(std::mt19937& rng, int nvars, int max_terms, int max_deg, int max_coeff) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> dv(0, max_deg);
    std::uniform_int_distribution<int> cv(-max_coeff, max_coeff);
    Poly p;
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        Poly m = Poly::integer(cv(rng));
        for (int v = 0; v < nvars; ++v)
            m = Poly::mul(m, Poly::monomial(v, dv(rng)), nullptr);
        p += m;
    }
    return p;
}

std::vector<mpq_class> random_point(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    std::vector<mpq_class> v;
    for (int i = 0; i < n; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

} // namespace

TEST_CASE("polynomial construction and equality") {
    auto tab = plain_table();
    Poly c = Poly::monomial(ParamTable::c);
    Poly p = Poly::mul(c, c, &tab) - Poly::one();

    CHECK(p.total_degree() == 2);
    CHECK(p.degree(ParamTable::c) == 2);
    CHECK_FALSE(p.contains(ParamTable::alpha));
    CHECK(p.to_string(tab) == "c^2 - 1");

    Poly q = Poly::mul(c - Poly::one(), c + Poly::one(), &tab);
    CHECK(p == q);
    CHECK(p != c);
    CHECK(Poly::zero().is_zero());
    CHECK((p - p).is_zero());
}

TEST_CASE("ring identities on random polynomials") {
    auto tab = plain_table();
    std::mt19937 rng(20260822);
    for (int iter = 0; iter < 60; ++iter) {
        Poly a = random_poly(rng, 4, 5, 4, 12);
        Poly b = random_poly(rng, 4, 5, 4, 12);
        Poly cc = random_poly(rng, 4, 5, 4, 12);

        CHECK(a + b == b + a);
        CHECK(Poly::mul(a, b, &tab) == Poly::mul(b, a, &tab));
        CHECK(Poly::mul(a, b + cc, &tab) ==
              Poly::mul(a, b, &tab) + Poly::mul(a, cc, &tab));
        CHECK(Poly::mul(Poly::mul(a, b, &tab), cc, &tab) ==
              Poly::mul(a, Poly::mul(b, cc, &tab), &tab));

        auto pt = random_point(rng, 4);
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
        CHECK(Poly::mul(a, b, &tab).eval(pt) == a.eval(pt) * b.eval(pt));
    }
}

TEST_CASE("power and binomial expansion") {
    auto tab = plain_table();
    Poly a = Poly::monomial(ParamTable::alpha);
    Poly b = Poly::monomial(ParamTable::c);
    Poly lhs = Poly::pow(a + b, 5, &tab);
    Poly rhs;
    for (int k = 0; k <= 5; ++k) {
        Poly t = Poly::integer(binomial(5, static_cast<unsigned long>(k)));
        t = Poly::mul(t, Poly::pow(a, 5 - k, &tab), &tab);
        t = Poly::mul(t, Poly::pow(b, k, &tab), &tab);
        rhs += t;
    }
    CHECK(lhs == rhs);
}

TEST_CASE("exact division round trip") {
    auto tab = plain_table();
    std::mt19937 rng(7);
    int checked = 0;
    while (checked < 40) {
        Poly a = random_poly(rng, 3, 4, 3, 9);
        Poly b = random_poly(rng, 3, 4, 3, 9);
        if (b.is_zero()) continue;
        Poly ab = Poly::mul(a, b, &tab);
        CHECK(Poly::divexact(ab, b) == a);
        ++checked;
    }
    Poly c = Poly::monomial(ParamTable::c);
    CHECK_THROWS_AS(Poly::divexact(c + Poly::one(), c), AlgebraError);
    CHECK_THROWS_AS(Poly::divexact(c, Poly::zero()), AlgebraError);
}

TEST_CASE("content and primitive part") {
    Poly c = Poly::monomial(ParamTable::c);
    Poly p = Poly::mul_int(c, 6) - Poly::integer(9);
    CHECK(p.content() == 3);
    CHECK(p.primitive() == Poly::mul_int(c, 2) - Poly::integer(3));
    Poly m = -p;
    CHECK(m.primitive() == Poly::mul_int(c, 2) - Poly::integer(3));
    CHECK(Poly::zero().content() == 0);
}

TEST_CASE("gcd on constructed common factors") {
    auto tab = plain_table();
    std::mt19937 rng(99);
    int checked = 0;
    while (checked < 30) {
        Poly g = random_poly(rng, 3, 3, 2, 6);
        Poly a = random_poly(rng, 3, 3, 2, 6);
        Poly b = random_poly(rng, 3, 3, 2, 6);
        if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
        Poly ga = Poly::mul(g, a, &tab);
        Poly gb = Poly::mul(g, b, &tab);
        Poly d = Poly::gcd(ga, gb);
        // d divides both products and is divisible by g.
        CHECK_NOTHROW(Poly::divexact(ga, d));
        CHECK_NOTHROW(Poly::divexact(gb, d));
        CHECK_NOTHROW(Poly::divexact(d, g));
        ++checked;
    }

    Poly c = Poly::monomial(ParamTable::c);
    Poly cm1 = c - Poly::one();
    Poly cp1 = c + Poly::one();
    Poly c2m1 = Poly::mul(cm1, cp1, &tab);
    CHECK(Poly::gcd(c2m1, cm1) == cm1);
    CHECK(Poly::gcd(c2m1, Poly::mul_int(cp1, -4)) == cp1);
    CHECK(Poly::gcd(Poly::integer(12), Poly::integer(18)) == Poly::integer(6));
    CHECK(Poly::gcd(Poly::zero(), Poly::mul_int(cm1, -2)) == Poly::mul_int(cm1, 2));
}

TEST_CASE("gcd of coprime polynomials is the integer content gcd") {
    Poly c = Poly::monomial(ParamTable::c);
    Poly dt = Poly::monomial(ParamTable::dt);
    Poly a = Poly::mul_int(c, 4) + Poly::integer(2);      // 2(2c+1)
    Poly b = Poly::mul_int(dt, 6) - Poly::integer(10);    // 2(3dt-5)
    CHECK(Poly::gcd(a, b) == Poly::integer(2));
}

TEST_CASE("parameter substitution matches evaluation") {
    auto tab = plain_table();
    std::mt19937 rng(3);
    for (int iter = 0; iter < 25; ++iter) {
        Poly a = random_poly(rng, 4, 5, 3, 8);
        // dx -> c*dt
        Poly repl = Poly::mul(Poly::monomial(ParamTable::c),
                              Poly::monomial(ParamTable::dt), &tab);
        Poly s = a.subst(ParamTable::dx, repl, &tab);
        auto pt = random_point(rng, 4);
        auto pt2 = pt;
        pt2[ParamTable::dx] = pt[ParamTable::c] * pt[ParamTable::dt];
        mpq_class lhs = s.eval(pt);
        mpq_class rhs = a.eval(pt2);
        lhs.canonicalize();
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sine squares are rewritten on products") {
    auto tab = angle_table();
    Poly cth = Poly::monomial(tab.cos_index());
    Poly sth = Poly::monomial(tab.sin_index());

    Poly s2 = Poly::mul(sth, sth, &tab);
    CHECK(s2 == Poly::one() - Poly::mul(cth, cth, &tab));

    // cos^2 + sin^2 collapses to 1 once the square exists only through
    // products.
    Poly unit = Poly::mul(cth, cth, &tab) + s2;
    CHECK(unit == Poly::one());

    // Odd powers keep a single sine.
    Poly s3 = Poly::pow(sth, 3, &tab);
    CHECK(s3.degree(tab.sin_index()) == 1);
    Poly expect = Poly::mul(sth, Poly::one() - Poly::mul(cth, cth, &tab), &tab);
    CHECK(s3 == expect);

    // Without a table the exponent is kept.
    CHECK(Poly::mul(sth, sth, nullptr).degree(tab.sin_index()) == 2);
}

TEST_CASE("rational function canonical form") {
    auto tabv = plain_table();
    const ParamTable* tab = &tabv;
    RatFun c = RatFun::param(tab, ParamTable::c);
    RatFun c2m1 = c * c - RatFun::one(tab);

    RatFun r = RatFun::make(tab, c2m1.num(), Poly::mul_int(Poly::monomial(ParamTable::c), 2) - Poly::integer(2));
    // (c^2-1)/(2c-2) reduces to (c+1)/2.
    CHECK(r.num() == Poly::monomial(ParamTable::c) + Poly::one());
    CHECK(r.den() == Poly::integer(2));

    // Denominator sign is normalized.
    RatFun s = RatFun::one(tab) / (RatFun::one(tab) - c * c);
    CHECK(s.den().lead_sign() > 0);
    CHECK(s.to_string(tabv) == "-1/(c^2 - 1)");

    CHECK((s - s).is_zero());
    CHECK((s / s).is_one());
    CHECK(RatFun::rational(tab, 6, -4) == RatFun::rational(tab, -3, 2));
}

TEST_CASE("rational function field laws against evaluation") {
    auto tabv = plain_table();
    const ParamTable* tab = &tabv;
    std::mt19937 rng(17);
    int iter = 0;
    while (iter < 30) {
        Poly an = random_poly(rng, 4, 4, 3, 7);
        Poly ad = random_poly(rng, 4, 3, 2, 5);
        Poly bn = random_poly(rng, 4, 4, 3, 7);
        Poly bd = random_poly(rng, 4, 3, 2, 5);
        if (ad.is_zero() || bd.is_zero()) continue;
        RatFun a = RatFun::make(tab, an, ad);
        RatFun b = RatFun::make(tab, bn, bd);

        auto pt = random_point(rng, 4);
        mpq_class da = ad.eval(pt), db = bd.eval(pt);
        if (da == 0 || db == 0) continue;

        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
        CHECK((a - b).eval(pt) == a.eval(pt) - b.eval(pt));
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
        if (!b.is_zero() && bn.eval(pt) != 0)
            CHECK((a / b).eval(pt) == a.eval(pt) / b.eval(pt));

        // Canonical equality: a/b == (a*k)/(b*k) for a random scalar k.
        RatFun k = RatFun::rational(tab, 3, 7);
        CHECK(a == (a * k) / k);
        ++iter;
    }
}

TEST_CASE("rational powers") {
    auto tabv = plain_table();
    const ParamTable* tab = &tabv;
    RatFun c = RatFun::param(tab, ParamTable::c);
    RatFun g = (c * c - RatFun::one(tab));
    RatFun g3 = RatFun::pow(g, 3);
    CHECK(g3 == g * g * g);
    RatFun gm2 = RatFun::pow(g, -2);
    CHECK(gm2 * g * g == RatFun::one(tab));
    CHECK_THROWS_AS(RatFun::pow(RatFun::zero(tab), -1), AlgebraError);
}

TEST_CASE("angle parameters may not reach denominators") {
    auto tabv = angle_table();
    const ParamTable* tab = &tabv;
    RatFun sth = RatFun::param(tab, tabv.sin_index());
    CHECK_THROWS_AS(sth.inv(), AlgebraError);
    CHECK_THROWS_AS(RatFun::one(tab) / sth, AlgebraError);
}

TEST_CASE("exponent overflow is reported") {
    auto tab = plain_table();
    Poly c = Poly::monomial(ParamTable::c);
    CHECK_THROWS_AS(Poly::pow(c, 300, &tab), AlgebraError);
}
