#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "todatau/eps_scalar.hpp"
#include "todatau/lattice_poly.hpp"
#include "todatau/rational.hpp"

using namespace todatau;

TEST_CASE("rational canonical form") {
    Rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(Rational(2, 4) + Rational(1, 4) == Rational(3, 4));
    CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
    CHECK((Rational(7, 3) / Rational(7, 3)).is_one());
    CHECK_THROWS(Rational(1, 2) / Rational(0));
    CHECK(Rational::factorial(6) == Rational(720));
    CHECK(Rational::binomial(7, 3) == Rational(35));
    CHECK(Rational::binomial(-1, 2) == Rational(1));
}

TEST_CASE("eps scalar arithmetic") {
    EpsScalar a = EpsScalar::eps_power(-2, Rational(1, 2));
    EpsScalar b = EpsScalar::eps_power(1, Rational(3));
    EpsScalar p = a * b;
    CHECK(p.coeff(-1) == Rational(3, 2));
    CHECK((a + (-a)).is_zero());
    CHECK(a.inverse() * a == EpsScalar(Rational(1)));
    CHECK((a + b).min_exp() == -2);
    CHECK((a + b).max_exp() == 1);
}

TEST_CASE("shift_n expands binomially") {
    LatticePoly n = LatticePoly::var_n();
    LatticePoly n2 = n * n;
    // (n+1)^2 = n^2 + 2n + 1
    LatticePoly s = n2.shift_n(1);
    CHECK(s == n2 + n.scaled(EpsScalar(Rational(2))) + LatticePoly(1L));
    CHECK(LatticePoly(1L).shift_n(5) == LatticePoly(1L));

    // f(n) = n e + e/2 shifted down: n e - e/2
    LatticePoly f = LatticePoly::n_power(1, EpsScalar::eps_power(1)) +
                    LatticePoly(EpsScalar::eps_power(1, Rational(1, 2)));
    LatticePoly fm = f.shift_n(-1);
    CHECK(fm == LatticePoly::n_power(1, EpsScalar::eps_power(1)) +
                    LatticePoly(EpsScalar::eps_power(1, Rational(-1, 2))));
}

TEST_CASE("shift_n composes additively") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        LatticePoly p;
        int deg = static_cast<int>(rng() % 5);
        for (int d = 0; d <= deg; ++d)
            p += LatticePoly::n_power(
                d, EpsScalar::eps_power(static_cast<int>(rng() % 3) - 1,
                                        Rational(static_cast<long>(rng() % 7) - 3)));
        int a = static_cast<int>(rng() % 7) - 3;
        int b = static_cast<int>(rng() % 7) - 3;
        CHECK(p.shift_n(a).shift_n(b) == p.shift_n(a + b));
    }
}

TEST_CASE("antidifference") {
    LatticePoly n = LatticePoly::var_n();

    CHECK(LatticePoly(1L).antidifference() == n);
    // sum of first n-1 integers
    CHECK(n.antidifference() == (n * (n - LatticePoly(1L))).scaled(EpsScalar(Rational(1, 2))));
    // n(n-1)(2n-1)/6
    LatticePoly expect = (n * (n - LatticePoly(1L)) *
                          (n.scaled(EpsScalar(Rational(2))) - LatticePoly(1L)))
                             .scaled(EpsScalar(Rational(1, 6)));
    CHECK((n * n).antidifference() == expect);
}

TEST_CASE("antidifference inverts the forward difference and vanishes at 0") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        LatticePoly p;
        int deg = static_cast<int>(rng() % 6);
        for (int d = 0; d <= deg; ++d)
            p += LatticePoly::n_power(
                d, EpsScalar::eps_power(static_cast<int>(rng() % 5) - 2,
                                        Rational(static_cast<long>(rng() % 11) - 5)));
        LatticePoly q = p.antidifference();
        CHECK(q.shift_n(1) - q == p);
        CHECK(q.eval_at(0).is_zero());
    }
}

TEST_CASE("eval_at") {
    LatticePoly n = LatticePoly::var_n();
    LatticePoly p = n * n + n.scaled(EpsScalar::eps_power(2)) + LatticePoly(Rational(5));
    EpsScalar v = p.eval_at(3);
    CHECK(v.coeff(0) == Rational(14));
    CHECK(v.coeff(2) == Rational(3));
}
