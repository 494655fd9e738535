#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "todatau/bi_series.hpp"
#include "todatau/derivation.hpp"
#include "todatau/toda_poly.hpp"
#include "todatau/trunc_series.hpp"

namespace todatau {

struct VerifyReport {
    bool pass = true;
    std::string detail;

    void fail(const std::string& msg) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

/// Basic matrix resolvent of the Toda Lax operator: the unique 2x2 series
///   [[1 + alpha, beta], [gamma, -alpha]]
/// solving the stationary commutator equation with trace 1, determinant 0 and
/// leading term diag(1, 0). Stored through the coefficient families a_i, b_i,
/// c_i of alpha, beta, gamma.
class Resolvent {
public:
    std::vector<TodaPoly> a, b, c;  // index i: coefficient of lambda^{-i-1}

    int order() const { return static_cast<int>(a.size()) - 1; }

    using Series = TruncSeries<TodaPoly>;

    Series alpha() const { return family_series(a); }
    Series beta() const { return family_series(b); }
    Series gamma() const { return family_series(c); }
    Series one_plus_alpha() const { return Series::one(alpha().lo()) + alpha(); }

    /// Entries as a 2x2 array of series.
    std::array<std::array<Series, 2>, 2> matrix() const {
        return {{{one_plus_alpha(), beta()}, {gamma(), -alpha()}}};
    }

private:
    Series family_series(const std::vector<TodaPoly>& f) const {
        Series s(0, -static_cast<int>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) s.set(-static_cast<int>(i) - 1, f[i]);
        return s;
    }
};

/// Runs the matrix-resolvent recursion up to order N. The first-order
/// difference relation that the recursion leaves implicit is re-checked as an
/// identity at every step; a failure aborts.
inline Resolvent mr_compute(int N) {
    if (N < 0) throw std::domain_error("mr_compute: order must be nonnegative");
    Resolvent r;
    TodaPoly v0 = TodaPoly::var(vvar(0));
    TodaPoly vm1 = TodaPoly::var(vvar(-1));
    TodaPoly w0 = TodaPoly::var(wvar(0));
    TodaPoly w1 = TodaPoly::var(wvar(1));

    r.a.push_back(TodaPoly());    // a_0 = 0
    r.c.push_back(TodaPoly(1L));  // c_0 = 1
    for (int j = 0; j < N; ++j) {
        // c_{j+1} = v_{-1} c_j + (1 + Lambda^{-1})(a_j)
        r.c.push_back(vm1 * r.c[j] + r.a[j] + r.a[j].ring_shift(-1));
        // a_{j+1} from the closed quadratic form
        TodaPoly anext;
        for (int i = 0; i <= j; ++i) {
            anext += w0 * r.c[i] * r.c[j - i].ring_shift(1);
            anext -= r.a[i] * r.a[j - i];
        }
        r.a.push_back(anext);
        // consistency: (1-Lambda)(a_{j+1}) + v_0 (Lambda-1)(a_j) + w_1 Lambda^2(c_j) - w_0 c_j = 0
        TodaPoly check = r.a[j + 1] - r.a[j + 1].ring_shift(1) +
                         v0 * (r.a[j].ring_shift(1) - r.a[j]) + w1 * r.c[j].ring_shift(2) -
                         w0 * r.c[j];
        if (!check.is_zero())
            throw std::runtime_error("mr_compute: recursion consistency failure at order " +
                                     std::to_string(j + 1));
    }
    for (int j = 0; j <= N; ++j) r.b.push_back(-(w0 * r.c[j].ring_shift(1)));
    return r;
}

/// Entrywise check of the defining relations: the stationary commutator
/// equation, trace 1, det 0, and the leading normalization.
inline VerifyReport verify_defining(const Resolvent& r) {
    VerifyReport rep;
    using S = Resolvent::Series;
    int N = r.order();
    auto R = r.matrix();

    // U(lambda) = [[v_0 - lambda, w_0], [-1, 0]]
    S u11(1, -N - 2);
    u11.set(1, TodaPoly(-1L));
    u11.set(0, TodaPoly::var(vvar(0)));
    S u12 = S::constant(TodaPoly::var(wvar(0)), -N - 2);
    S u21 = S::constant(TodaPoly(-1L), -N - 2);
    S u22 = S::zero(-N - 2);
    std::array<std::array<S, 2>, 2> U = {{{u11, u12}, {u21, u22}}};

    auto shifted = [&](const S& s) {
        return s.map_coeffs([](const TodaPoly& p) { return p.ring_shift(1); });
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            S lhs = S::zero(-N);
            for (int m = 0; m < 2; ++m) lhs += shifted(R[i][m]) * U[m][j] - U[i][m] * R[m][j];
            for (int e = lhs.hi(); e >= lhs.lo(); --e)
                if (!lhs.coeff(e).is_zero()) {
                    rep.fail("commutator equation fails in entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") at lambda^" + std::to_string(e) + ": " +
                             lhs.coeff(e).str());
                    break;
                }
        }

    S tr = R[0][0] + R[1][1];
    if (!(tr == S::one(tr.lo()))) rep.fail("trace is not 1");
    S det = R[0][0] * R[1][1] - R[0][1] * R[1][0];
    if (!(det == S::zero(det.lo()))) rep.fail("determinant is not 0");
    if (!r.a[0].is_zero() || !(r.c[0] == TodaPoly(1L))) rep.fail("leading normalization broken");
    return rep;
}

/// The local two-variable kernel built from the resolvent:
/// K(lambda, mu) = [(1+alpha(lambda))(1+alpha(mu)) - w_0 gamma(lambda) Lambda(gamma(mu))] / (lambda - mu).
/// Exact division fixes the canonical (pole, regular) split; a nonzero
/// division remainder means alpha/gamma are inconsistent and aborts.
inline BiKernel<TodaPoly> kernel_K(const Resolvent& r) {
    using S = Resolvent::Series;
    S opa = r.one_plus_alpha();
    S lam_gamma = r.gamma().map_coeffs([](const TodaPoly& p) { return p.ring_shift(1); });
    TodaPoly w0 = TodaPoly::var(wvar(0));
    BiSeries<TodaPoly> num = BiSeries<TodaPoly>::outer(opa, opa) -
                             BiSeries<TodaPoly>::outer(r.gamma().scaled(w0), lam_gamma);
    BiKernel<TodaPoly> K = BiKernel<TodaPoly>::from_numerator(num);
    if (!(K.pole == opa))
        throw std::runtime_error("kernel_K: diagonal residue does not reduce to 1 + alpha");
    return K;
}

}  // namespace todatau
