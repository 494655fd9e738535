#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "todatau/bi_series.hpp"
#include "todatau/cyclic_sum.hpp"
#include "todatau/toda_poly.hpp"
#include "todatau/trunc_series.hpp"

using namespace todatau;

using RS = TruncSeries<Rational>;
using PS = TruncSeries<TodaPoly>;

TEST_CASE("series exp basics") {
    RS s = RS::monomial(-1, Rational(3), -6);  // 3/lambda
    RS e = s.exp();
    CHECK(e.coeff(0) == Rational(1));
    CHECK(e.coeff(-1) == Rational(3));
    CHECK(e.coeff(-2) == Rational(9, 2));
    CHECK(e.coeff(-3) == Rational(27, 6));
    CHECK(RS::zero(-4).exp() == RS::one(-4));

    RS bad = RS::one(-4);
    CHECK_THROWS(bad.exp());
}

TEST_CASE("exp of -v_0/lambda matches the quadratic truncation") {
    PS s = PS::monomial(-1, -TodaPoly::var(vvar(0)), -2);
    PS e = s.exp();
    CHECK(e.coeff(0) == TodaPoly(1L));
    CHECK(e.coeff(-1) == -TodaPoly::var(vvar(0)));
    TodaPoly v0 = TodaPoly::var(vvar(0));
    CHECK(e.coeff(-2) == (v0 * v0).scaled(Rational(1, 2)));
}

TEST_CASE("series invert") {
    RS s = RS::one(-5) + RS::monomial(-1, Rational(2), -5);
    RS inv = s.invert();
    CHECK(inv.coeff(0) == Rational(1));
    CHECK(inv.coeff(-1) == Rational(-2));
    CHECK(inv.coeff(-2) == Rational(4));
    CHECK(s * inv == RS::one(-5));

    // 1/(1 + w_0/lambda^2) to order 4
    PS t = PS::one(-4) + PS::monomial(-2, TodaPoly::var(wvar(0)), -4);
    PS ti = t.invert();
    TodaPoly w0 = TodaPoly::var(wvar(0));
    CHECK(ti.coeff(-2) == -w0);
    CHECK(ti.coeff(-3).is_zero());
    CHECK(ti.coeff(-4) == w0 * w0);
    CHECK(t * ti == PS::one(-4));

    // Laurent leading term lambda^1
    RS u(1, -3);
    u.set(1, Rational(2));
    u.set(0, Rational(1));
    RS ui = u.invert();
    RS prod = u * ui;
    CHECK(prod.coeff(0) == Rational(1));
    CHECK(prod.coeff(-1) == Rational(0));
    CHECK(prod.coeff(-2) == Rational(0));
}

TEST_CASE("exp log round trip") {
    PS s(-1, -5);
    s.set(-1, TodaPoly::var(vvar(0)));
    s.set(-2, TodaPoly::var(wvar(1)) * TodaPoly::var(vvar(-1)));
    s.set(-3, TodaPoly(4L));
    CHECK(s.exp().log() == s);
    PS t = PS::one(-5) + s;
    CHECK(t.log().exp() == t);
}

TEST_CASE("pole window expansion") {
    // pole coefficient 1, dominant first variable
    RS one = RS::one(-6);
    auto terms = expand_pole_window(one, true, 5);
    // slots: lambda^{-m-1} mu^m for m = 0..4
    std::map<std::pair<int, int>, Rational> m;
    for (auto& t : terms) m[{t.ea, t.eb}] += t.c;
    CHECK(m[{-1, 0}] == Rational(1));
    CHECK(m[{-3, 2}] == Rational(1));
    CHECK(m.count({-1, 1}) == 0);

    auto terms2 = expand_pole_window(one, false, 5);
    std::map<std::pair<int, int>, Rational> m2;
    for (auto& t : terms2) m2[{t.ea, t.eb}] += t.c;
    CHECK(m2[{0, -1}] == Rational(-1));
    CHECK(m2[{3, -4}] == Rational(-1));
}

TEST_CASE("pole window with nontrivial coefficient") {
    // pole coefficient 1 + w_0/lambda^2 + ...: slot lambda^-3 mu^0 picks w_0
    PS p = PS::one(-6) + PS::monomial(-2, TodaPoly::var(wvar(0)), -6);
    auto terms = expand_pole_window(p, true, 6);
    std::map<std::pair<int, int>, TodaPoly> m;
    for (auto& t : terms) {
        auto& slot = m[{t.ea, t.eb}];
        slot += t.c;
    }
    CHECK(m[{-3, 0}] == TodaPoly::var(wvar(0)));
}

TEST_CASE("bi-series exact division by lambda - mu") {
    // N = x - y = lambda^{-1} ... careful: work with numerator
    // F(lambda, mu) = 1/lambda - 1/mu = (mu - lambda)/(lambda mu)
    // so F / (lambda - mu) = -1/(lambda mu).
    BiSeries<Rational> F(6, 6, 12);
    F.set(1, 0, Rational(1));
    F.set(0, 1, Rational(-1));
    auto G = F.divided_by_lambda_minus_mu();
    CHECK(G.coeff(1, 1) == Rational(-1));
    CHECK(G.coeff(2, 1) == Rational(0));
    CHECK(G.coeff(2, 2) == Rational(0));

    // nonzero on the diagonal -> remainder
    BiSeries<Rational> bad(4, 4, 8);
    bad.set(1, 1, Rational(1));
    CHECK_THROWS(bad.divided_by_lambda_minus_mu());
}

TEST_CASE("bi-kernel canonical split and univariate multiplication") {
    // numerator u(lambda) v(mu) with u = 1 + 2/l, v = 1 - 3/m
    RS u = RS::one(-8) + RS::monomial(-1, Rational(2), -8);
    RS v = RS::one(-8) + RS::monomial(-1, Rational(-3), -8);
    auto num = BiSeries<Rational>::outer(u, v);
    auto K = BiKernel<Rational>::from_numerator(num);
    // pole coefficient = u(l) v(l)
    CHECK(K.pole == u * v);
    // identity: K * w(l) has pole u v w and consistent regular part
    RS w = RS::one(-8) + RS::monomial(-2, Rational(5), -8);
    auto Kw = K.mul_univar(w, RS::one(-8));
    CHECK(Kw.pole == u * v * w);
    auto direct = BiKernel<Rational>::from_numerator(BiSeries<Rational>::outer(u * w, v));
    CHECK(agree(Kw, direct));
}

TEST_CASE("diagonal of a bi-series") {
    RS u = RS::one(-5) + RS::monomial(-1, Rational(2), -5);
    auto b = BiSeries<Rational>::outer(u, u);
    auto d = b.diagonal();
    CHECK(d.coeff(0) == Rational(1));
    CHECK(d.coeff(-1) == Rational(4));
    CHECK(d.coeff(-2) == Rational(4));
}
