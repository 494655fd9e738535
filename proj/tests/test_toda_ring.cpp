#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "todatau/derivation.hpp"
#include "todatau/diff_op.hpp"
#include "todatau/toda_poly.hpp"

using namespace todatau;

namespace {

TodaPoly v(int k) { return TodaPoly::var(vvar(k)); }
TodaPoly w(int k) { return TodaPoly::var(wvar(k)); }

AdmissibleDerivation d0() {
    AdmissibleDerivation d;
    d.image_v = w(1) - w(0);
    d.image_w = w(0) * (v(0) - v(-1));
    return d;
}

TodaPoly random_poly(std::mt19937_64& rng, int nterms = 4) {
    TodaPoly p;
    for (int t = 0; t < nterms; ++t) {
        TodaMono m;
        int nf = 1 + static_cast<int>(rng() % 3);
        TodaPoly mono(1L);
        for (int i = 0; i < nf; ++i) {
            TodaVar var{rng() % 2 ? TodaVar::V : TodaVar::W, static_cast<int>(rng() % 5) - 2};
            mono *= TodaPoly::var(var);
        }
        p += mono.scaled(Rational(static_cast<long>(rng() % 9) - 4));
    }
    return p;
}

}  // namespace

TEST_CASE("ring shift acts on indices") {
    CHECK((v(0) * w(-1)).ring_shift(1) == v(1) * w(0));
    CHECK(w(0).ring_shift(-1) == w(-1));
    CHECK((w(1) - w(0)).ring_shift(-1) == w(0) - w(-1));
    CHECK(TodaPoly(3L).ring_shift(4) == TodaPoly(3L));
}

TEST_CASE("derivation on generators and products") {
    auto d = d0();
    CHECK(d(v(0)) == w(1) - w(0));
    CHECK(d(w(0)) == w(0) * (v(0) - v(-1)));
    // Leibniz on v_0 w_0
    CHECK(d(v(0) * w(0)) == (w(1) - w(0)) * w(0) + v(0) * w(0) * (v(0) - v(-1)));
    // power rule
    CHECK(d(v(0) * v(0)) == (w(1) - w(0)) * v(0).scaled(Rational(2)));
}

TEST_CASE("derivation commutes with the shift") {
    std::mt19937_64 rng(11);
    auto d = d0();
    for (int trial = 0; trial < 15; ++trial) {
        TodaPoly p = random_poly(rng);
        int k = static_cast<int>(rng() % 7) - 3;
        CHECK(d(p.ring_shift(k)) == d(p).ring_shift(k));
    }
}

TEST_CASE("derivation is additive and Leibniz on random pairs") {
    std::mt19937_64 rng(13);
    auto d = d0();
    for (int trial = 0; trial < 15; ++trial) {
        TodaPoly p = random_poly(rng), q = random_poly(rng);
        CHECK(d(p + q) == d(p) + d(q));
        CHECK(d(p * q) == d(p) * q + p * d(q));
    }
}

TEST_CASE("lax route derivation images") {
    auto [dv0, dw0] = lax_derivation_images<Rational>(0);
    CHECK(dv0 == w(1) - w(0));
    CHECK(dw0 == w(0) * (v(0) - v(-1)));

    auto [dv1, dw1] = lax_derivation_images<Rational>(1);
    CHECK(dv1 == w(1) * (v(1) + v(0)) - w(0) * (v(0) + v(-1)));
    CHECK(dw1 == w(0) * (w(1) - w(-1) + v(0) * v(0) - v(-1) * v(-1)));
}

TEST_CASE("difference operator twisted product") {
    DiffOp L = DiffOp::lax();
    DiffOp L2 = L * L;
    // Coef(L^2, 0) = Lambda(w_0) + v_0^2 + w_0 = w_1 + v_0^2 + w_0
    CHECK(L2.coef(0) == w(1) + v(0) * v(0) + w(0));
    CHECK(L2.coef(2) == TodaPoly(1L));
    CHECK(L2.coef(1) == v(1) + v(0));
    CHECK(L2.coef(-1) == w(0) * (v(0) + v(-1)));
    CHECK(L2.coef(-2) == w(0) * w(-1));
}

TEST_CASE("substitution of initial data") {
    LatticePoly n = LatticePoly::var_n();
    // GUE data f = 0, g = n
    CHECK(w(0).substitute_initial(LatticePoly(), n) == n);
    CHECK((w(1) * (v(1) + v(0))).substitute_initial(LatticePoly(), n) == LatticePoly());

    // f = n e + e/2, g = 1: w_1 + w_0 + v_0^2 -> 2 + (n e + e/2)^2
    LatticePoly f = LatticePoly::n_power(1, EpsScalar::eps_power(1)) +
                    LatticePoly(EpsScalar::eps_power(1, Rational(1, 2)));
    LatticePoly g(1L);
    CHECK((w(1) + w(0) + v(0) * v(0)).substitute_initial(f, g) == LatticePoly(2L) + f * f);
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(17);
    LatticePoly f = LatticePoly::n_power(1, EpsScalar::eps_power(1)) + LatticePoly(Rational(2));
    LatticePoly g = LatticePoly::var_n() * LatticePoly::var_n() - LatticePoly(1L);
    for (int trial = 0; trial < 10; ++trial) {
        TodaPoly p = random_poly(rng), q = random_poly(rng);
        CHECK((p * q).substitute_initial(f, g) ==
              p.substitute_initial(f, g) * q.substitute_initial(f, g));
        CHECK((p + q).substitute_initial(f, g) ==
              p.substitute_initial(f, g) + q.substitute_initial(f, g));
    }
}

TEST_CASE("canonical text rendering") {
    TodaPoly p = w(0) * v(0) - w(0) * v(-1);
    CHECK(p.str() == "-v_{-1}*w_0 + v_0*w_0");
    CHECK(TodaPoly().str() == "0");
    CHECK((w(0) * w(0)).str() == "w_0^2");
}
