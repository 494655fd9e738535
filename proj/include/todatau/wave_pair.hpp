#pragma once

#include <utility>
#include <vector>

#include "todatau/cyclic_sum.hpp"
#include "todatau/resolvent.hpp"
#include "todatau/tau_structure.hpp"

namespace todatau {

using LatticeSeries = TruncSeries<LatticePoly>;

inline LatticeSeries shift_series_n(const LatticeSeries& s, int k) {
    return s.map_coeffs([k](const LatticePoly& p) { return p.shift_n(k); });
}

/// Solves the two eigenfunction recursions for the initial data (f, g):
/// y feeds the lambda^n-normalized wave function, z the reciprocal one. The
/// exponential identities the recursions encode are rechecked afterwards.
struct YZData {
    std::vector<LatticePoly> y, z;  // index i >= 1 meaningful; [0] unused
};

inline YZData yz_recursion(const LatticePoly& f, const LatticePoly& g, int N) {
    YZData out;
    out.y.assign(N + 1, LatticePoly());
    out.z.assign(N + 1, LatticePoly());

    auto series_of = [&](const std::vector<LatticePoly>& v, int upto) {
        LatticeSeries s(-1, -std::max(upto, 1));
        for (int i = 1; i <= upto; ++i) s.set(-i, v[i]);
        return s;
    };

    // lambda (e^y - 1) + f + g lambda^{-1} e^{-y(n-1)} = 0
    auto y_residual = [&](int upto) {
        LatticeSeries Y = series_of(out.y, upto);
        LatticeSeries r = (Y.exp() - LatticeSeries::one(Y.lo())).mul_power(1);
        r += LatticeSeries::constant(f, r.lo());
        r += shift_series_n((-Y).exp(), -1).mul_power(-1).scaled(g);
        return r;
    };
    // lambda (e^{-z(n-1)} - 1) + f + g(n+1) lambda^{-1} e^{z(n)} = 0
    auto z_residual = [&](int upto) {
        LatticeSeries Z = series_of(out.z, upto);
        LatticeSeries r = (shift_series_n((-Z).exp(), -1) - LatticeSeries::one(Z.lo())).mul_power(1);
        r += LatticeSeries::constant(f, r.lo());
        r += Z.exp().mul_power(-1).scaled(g.shift_n(1));
        return r;
    };

    for (int k = 0; k < N; ++k) {
        // The lambda^{-k} slot of the residual is y_{k+1} plus known terms.
        out.y[k + 1] = -y_residual(k + 1).coeff(-k);
        // For z the top unknown enters as -z_{k+1}(n-1).
        out.z[k + 1] = z_residual(k + 1).coeff(-k).shift_n(1);
    }

    auto ry = y_residual(N), rz = z_residual(N);
    for (int e = 1; e >= ry.lo() + 1; --e)
        if (!ry.coeff_or_zero(e).is_zero() || !rz.coeff_or_zero(e).is_zero())
            throw std::runtime_error("yz_recursion: eigenfunction identity fails at lambda^" +
                                     std::to_string(e));
    return out;
}

/// Gauge-reduced pair of wave functions with unit constant terms. The pair
/// condition chi_A(n) chi_B(n-1) - g(n) lambda^{-2} chi_A(n-1) chi_B(n) = 1
/// holds to the truncation order.
struct WavePair {
    LatticePoly f, g;
    int order = 0;
    LatticeSeries chi_a, chi_b;

    LatticeSeries pair_defect() const {
        LatticeSeries p = chi_a * shift_series_n(chi_b, -1);
        p += -(shift_series_n(chi_a, -1) * chi_b).mul_power(-2).scaled(g);
        return p;
    }
};

/// Builds the pair from initial data: exponentials of summed antidifferences,
/// then the constant-in-n defect series is divided out of chi_B.
inline WavePair build_pair(const LatticePoly& f, const LatticePoly& g, int N) {
    YZData yz = yz_recursion(f, g, N);
    WavePair p;
    p.f = f;
    p.g = g;
    p.order = N;

    LatticeSeries ya(-1, -N), za(-1, -N);
    for (int i = 1; i <= N; ++i) {
        ya.set(-i, yz.y[i].antidifference());
        za.set(-i, yz.z[i].antidifference());
    }
    p.chi_a = ya.exp();
    p.chi_b = za.exp();

    LatticeSeries defect = p.pair_defect();
    if (!(defect.coeff_or_zero(0) == LatticePoly(1L)))
        throw std::runtime_error("build_pair: pair defect has non-unit constant term");
    LatticeSeries E(0, defect.lo());
    E.set(0, LatticePoly(1L));
    for (int e = -1; e >= defect.lo(); --e) {
        LatticePoly d = defect.coeff_or_zero(e);
        if (!d.is_constant())
            throw std::runtime_error("build_pair: pair defect depends on n at lambda^" +
                                     std::to_string(e) + ": " + d.str());
        E.set(e, d);
    }
    p.chi_b = p.chi_b * E.invert();

    LatticeSeries check = p.pair_defect() - LatticeSeries::one(-N);
    for (int e = 0; e >= check.lo(); --e)
        if (!check.coeff_or_zero(e).is_zero())
            throw std::runtime_error("build_pair: pair condition fails after normalization");
    return p;
}

/// Closed-form pair for the initial data f = 0, g = n.
inline WavePair gue_closed_pair(int N) {
    auto pochhammer = [](const LatticePoly& base, int len) {
        LatticePoly r(1L);
        for (int t = 0; t < len; ++t) r *= base + LatticePoly(Rational(t));
        return r;
    };
    WavePair p;
    p.f = LatticePoly();
    p.g = LatticePoly::var_n();
    p.order = N;
    LatticeSeries a(0, -N), b(0, -N);
    for (int j = 0; 2 * j <= N; ++j) {
        // coefficients (-1)^j (n-2j+1)_{2j} / (2^j j!) and (n+1)_{2j} / (2^j j!)
        Rational scale = Rational::factorial(j);
        for (int t = 0; t < j; ++t) scale *= Rational(2);
        LatticePoly pa =
            pochhammer(LatticePoly::var_n() + LatticePoly(Rational(1 - 2 * j)), 2 * j)
                .scaled(EpsScalar(scale.inverse() * Rational(j % 2 == 0 ? 1 : -1)));
        LatticePoly pb = pochhammer(LatticePoly::var_n() + LatticePoly(Rational(1)), 2 * j)
                             .scaled(EpsScalar(scale.inverse()));
        a.set(-2 * j, pa);
        b.set(-2 * j, pb);
    }
    p.chi_a = a;
    p.chi_b = b;
    return p;
}

/// The pair-built kernel in gauge-reduced form: pole coefficient is exactly 1
/// and the regular part is a genuine double series over lattice polynomials.
inline BiKernel<LatticePoly> reduced_kernel(const WavePair& p) {
    BiSeries<LatticePoly> num =
        BiSeries<LatticePoly>::outer(p.chi_a, shift_series_n(p.chi_b, -1)) -
        BiSeries<LatticePoly>::outer(shift_series_n(p.chi_a, -1).mul_power(-1).scaled(p.g),
                                     p.chi_b.mul_power(-1));
    BiKernel<LatticePoly> k = BiKernel<LatticePoly>::from_numerator(num);
    for (const auto& [e, c] : k.pole.terms())
        if (!(e == 0 ? c == LatticePoly(1L) : c.is_zero()))
            throw std::runtime_error("reduced_kernel: pole coefficient is not 1");
    return k;
}

/// k-point partial correlation functions from the pair route.
inline IndexArray<LatticePoly> correlators_wave(const WavePair& p, const std::vector<int>& caps,
                                                const std::vector<int>& region) {
    const int k = static_cast<int>(caps.size());
    int W = 0;
    for (int cap : caps) W += cap + 2;
    if (p.order + 1 < W)
        throw std::domain_error("correlators_wave: pair order " + std::to_string(p.order) +
                                " below required window " + std::to_string(W - 1));
    BiKernel<LatticePoly> D = reduced_kernel(p);

    CyclicSpec spec;
    spec.k = k;
    spec.caps = caps;
    spec.region = region;
    spec.window = W;
    spec.sign = (k % 2 == 0) ? -1 : 1;

    auto edges = [&](int, int, bool a_dom) { return expand_kernel_window(D, a_dom, W); };
    auto arr = cyclic_contract<LatticePoly>(spec, edges);
    if (!index_array_symmetric(arr))
        throw std::runtime_error("correlators_wave: extracted array is not symmetric");
    return arr;
}

/// Projector identity at initial time: the 2x2 projector assembled from the
/// pair equals the substituted matrix resolvent entrywise.
inline VerifyReport verify_rp_initial(const WavePair& p, const Resolvent& r, int N) {
    VerifyReport rep;
    auto sub = [&](const Resolvent::Series& s) {
        return s.map_coeffs([&](const TodaPoly& q) { return q.substitute_initial(p.f, p.g); })
            .truncated(-N);
    };
    LatticeSeries am1 = shift_series_n(p.chi_a, -1), bm1 = shift_series_n(p.chi_b, -1);
    LatticeSeries m11 = (p.chi_a * bm1).truncated(-N);
    LatticeSeries m12 = (-(p.chi_a * p.chi_b).scaled(p.g).mul_power(-1)).truncated(-N);
    LatticeSeries m21 = (am1 * bm1).mul_power(-1).truncated(-N);
    LatticeSeries m22 = (-(am1 * p.chi_b).scaled(p.g).mul_power(-2)).truncated(-N);

    if (!(m11 == sub(r.one_plus_alpha()))) rep.fail("(1,1) entry mismatch");
    if (!(m12 == sub(r.beta()))) rep.fail("(1,2) entry mismatch");
    if (!(m21 == sub(r.gamma()))) rep.fail("(2,1) entry mismatch");
    if (!(m22 == sub(-r.alpha()))) rep.fail("(2,2) entry mismatch");
    return rep;
}

/// Relation between the local kernel and the pair-built kernel:
/// K_sub(lambda, mu) = (1 + alpha_sub(lambda)) chi_A(mu) chi_A(lambda)^{-1} D(lambda, mu).
inline VerifyReport verify_K_D_relation(const WavePair& p, const Resolvent& r, int N) {
    VerifyReport rep;
    BiKernel<TodaPoly> K = kernel_K(r);
    auto subf = [&](const TodaPoly& q) { return q.substitute_initial(p.f, p.g); };
    BiKernel<LatticePoly> Ksub;
    Ksub.pole = K.pole.map_coeffs(subf);
    Ksub.reg = K.reg.map_coeffs(subf);

    BiKernel<LatticePoly> D = reduced_kernel(p);
    LatticeSeries u = Ksub.pole * p.chi_a.invert();
    BiKernel<LatticePoly> rhs = D.mul_univar(u, p.chi_a);

    if (!(Ksub.pole == rhs.pole.truncated(-N))) rep.fail("pole coefficients differ");
    if (!agree(Ksub.reg, rhs.reg)) rep.fail("regular parts differ");

    // One-sided expansions in both regions.
    int W = std::min({N, -Ksub.pole.lo(), -rhs.pole.lo()});
    for (bool a_dom : {true, false}) {
        std::map<std::pair<int, int>, LatticePoly> w1, w2;
        for (const auto& t : expand_kernel_window(Ksub, a_dom, W)) w1[{t.ea, t.eb}] += t.c;
        for (const auto& t : expand_kernel_window(rhs, a_dom, W)) w2[{t.ea, t.eb}] += t.c;
        int safe = W - 2;
        auto look = [](const std::map<std::pair<int, int>, LatticePoly>& m,
                       const std::pair<int, int>& k) {
            auto it = m.find(k);
            return it == m.end() ? LatticePoly() : it->second;
        };
        for (const auto& [slot, c] : w1)
            if (std::abs(slot.first) + std::abs(slot.second) <= safe && !(c == look(w2, slot)))
                rep.fail("window slot mismatch in region " + std::string(a_dom ? "l>m" : "m>l"));
        for (const auto& [slot, c] : w2)
            if (std::abs(slot.first) + std::abs(slot.second) <= safe && !(c == look(w1, slot)))
                rep.fail("window slot mismatch in region " + std::string(a_dom ? "l>m" : "m>l"));
    }
    return rep;
}

}  // namespace todatau
