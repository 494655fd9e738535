#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "todatau/resolvent.hpp"

using namespace todatau;

namespace {
TodaPoly v(int k) { return TodaPoly::var(vvar(k)); }
TodaPoly w(int k) { return TodaPoly::var(wvar(k)); }
}  // namespace

TEST_CASE("resolvent first terms") {
    Resolvent r = mr_compute(3);

    CHECK(r.a[0].is_zero());
    CHECK(r.c[0] == TodaPoly(1L));

    CHECK(r.a[1] == w(0));
    CHECK(r.b[0] == -w(0));
    CHECK(r.c[1] == v(-1));
    CHECK(r.b[1] == -(v(0) * w(0)));

    CHECK(r.a[2] == w(0) * (v(0) + v(-1)));
    CHECK(r.c[2] == w(0) + w(-1) + v(-1) * v(-1));
    CHECK(r.b[2] == -(w(0) * (w(0) + w(1) + v(0) * v(0))));
}

TEST_CASE("defining equations hold") {
    CHECK(verify_defining(mr_compute(0)).pass);
    CHECK(verify_defining(mr_compute(2)).pass);
    VerifyReport rep = verify_defining(mr_compute(6));
    INFO(rep.detail);
    CHECK(rep.pass);
}

TEST_CASE("injected fault is caught") {
    Resolvent r = mr_compute(4);
    r.a[1] = w(0) + TodaPoly(1L);
    VerifyReport rep = verify_defining(r);
    CHECK_FALSE(rep.pass);
    CHECK(rep.detail.find("lambda^") != std::string::npos);
}

TEST_CASE("entry relations") {
    Resolvent r = mr_compute(8);
    int N = r.order();
    auto lam = [](const TodaPoly& p) { return p.ring_shift(1); };

    // beta = -w_0 Lambda(gamma)
    for (int i = 0; i <= N; ++i) CHECK(r.b[i] == -(w(0) * lam(r.c[i])));

    // gamma (lambda - v_{-1}) = 1 + alpha + Lambda^{-1} alpha, coefficientwise
    for (int i = 0; i + 1 <= N; ++i)
        CHECK(r.c[i + 1] == v(-1) * r.c[i] + r.a[i] + r.a[i].ring_shift(-1));

    // trace-free quadratic relation alpha + alpha^2 + beta gamma = 0
    auto al = r.alpha(), be = r.beta(), ga = r.gamma();
    auto q = al + al * al + be * ga;
    for (int e = 0; e >= q.lo(); --e) CHECK(q.coeff(e).is_zero());
}

TEST_CASE("first-order difference relation for alpha coefficients") {
    Resolvent r = mr_compute(5);
    for (int j = 0; j + 1 <= r.order(); ++j) {
        TodaPoly lhs = r.a[j + 1] - r.a[j + 1].ring_shift(1) +
                       v(0) * (r.a[j].ring_shift(1) - r.a[j]) + w(1) * r.c[j].ring_shift(2) -
                       w(0) * r.c[j];
        CHECK(lhs.is_zero());
    }
}

TEST_CASE("local kernel: pole coefficient and regular split") {
    Resolvent r = mr_compute(8);
    auto K = kernel_K(r);
    CHECK(K.pole.coeff(0) == TodaPoly(1L));
    CHECK(K.pole.coeff(-1).is_zero());
    CHECK(K.pole.coeff(-2) == w(0));

    // two-sided subtractions stay regular: the alternative diagonal residues
    // differ from the canonical one by exactly divisible numerators
    auto opa = r.one_plus_alpha();
    BiSeries<TodaPoly> polemu = BiSeries<TodaPoly>::from_mu(opa);
    BiSeries<TodaPoly> polela = BiSeries<TodaPoly>::from_lambda(opa);
    CHECK_NOTHROW((polela - polemu).divided_by_lambda_minus_mu());
    auto half =
        (polela + polemu).map_coeffs([](const TodaPoly& p) { return p.scaled(Rational(1, 2)); });
    CHECK_NOTHROW((polela - half).divided_by_lambda_minus_mu());

    // first regular slots, checked against a hand expansion in the region
    // where lambda dominates
    CHECK(K.reg.coeff(1, 1).is_zero());
    CHECK(K.reg.coeff(1, 2) == w(0));
    CHECK(K.reg.coeff(2, 1).is_zero());
}

TEST_CASE("mr_compute rejects negative order") { CHECK_THROWS(mr_compute(-1)); }
