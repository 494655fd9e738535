#pragma once

#include <map>
#include <utility>
#include <vector>

#include "todatau/cyclic_sum.hpp"
#include "todatau/resolvent.hpp"

namespace todatau {

/// Derivation of the hierarchy read off the resolvent coefficients:
/// D_k(v_0) = (Lambda - 1)(a_{k+1}),  D_k(w_0) = w_0 (Lambda - 1)(c_{k+1}).
inline AdmissibleDerivation toda_derivation(const Resolvent& r, int k) {
    if (k + 1 > r.order())
        throw std::domain_error("toda_derivation: resolvent order too small for D_" +
                                std::to_string(k));
    AdmissibleDerivation d;
    d.image_v = r.a[k + 1].ring_shift(1) - r.a[k + 1];
    d.image_w = TodaPoly::var(wvar(0)) * (r.c[k + 1].ring_shift(1) - r.c[k + 1]);
    return d;
}

/// Canonical tau-structure tables: S_p from the shifted (2,1)-entry, Omega_{p,q}
/// read from the regular part of the two-point kernel
///   Tr(R(lambda) R(mu)) / (lambda - mu)^2 - 1/(lambda - mu)^2,
/// extracted by exact division and cross-checked against the two one-sided
/// region expansions (which must agree slot for slot).
struct TauTables {
    int max_index = 0;
    std::map<std::pair<int, int>, TodaPoly> omega;
    std::vector<TodaPoly> s;

    const TodaPoly& Omega(int p, int q) const {
        auto it = omega.find({p, q});
        if (it == omega.end()) throw std::domain_error("TauTables: Omega index out of range");
        return it->second;
    }
    const TodaPoly& S(int p) const {
        if (p < 0 || p >= static_cast<int>(s.size()))
            throw std::domain_error("TauTables: S index out of range");
        return s[p];
    }
};

/// Cyclic-sum correlator array over the abstract ring, matrix-resolvent route:
/// coefficient of lambda_1^{-i_1-2}...lambda_k^{-i_k-2} in
///   -sum_{pi in S_k/C_k} tr prod_j R(lambda_{pi(j)}) / prod_j (lambda_{pi(j)} - lambda_{pi(j+1)})
/// (minus the k=2 double pole, which never meets the extracted slots).
inline IndexArray<TodaPoly> correlators_mr(const Resolvent& r, const std::vector<int>& caps,
                                           const std::vector<int>& region) {
    const int k = static_cast<int>(caps.size());
    int W = 0;
    for (int cap : caps) W += cap + 2;
    if (r.order() + 1 < W)
        throw std::domain_error("correlators_mr: resolvent order " + std::to_string(r.order()) +
                                " below required window " + std::to_string(W - 1));

    CyclicSpec spec;
    spec.k = k;
    spec.caps = caps;
    spec.region = region;
    spec.window = W;
    spec.sign = -1;

    auto unit_pole = TruncSeries<TodaPoly>::one(-W);
    auto edges = [&](int, int, bool a_dom) { return expand_pole_window(unit_pole, a_dom, W); };

    int total_min = -W;  // sum of target exponents
    auto R = r.matrix();
    auto seed = [&](const std::vector<int>& cycle) {
        // trace of R(lambda_{c_0}) ... R(lambda_{c_{k-1}}), with total degree
        // pruned to what the k simple poles can still lift to a target slot
        int seed_total_min = total_min + k;
        using Mat = std::array<std::array<MultiSeries<TodaPoly>, 2>, 2>;
        auto var_series = [&](int v, const Resolvent::Series& s) {
            MultiSeries<TodaPoly> m;
            for (const auto& [e, c] : s.terms()) {
                if (e < seed_total_min) continue;
                std::vector<int> key(k, 0);
                key[v] = e;
                m[key] = c;
            }
            return m;
        };
        Mat acc;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc[i][j] = var_series(cycle[0], R[i][j]);
        for (int step = 1; step < k; ++step) {
            Mat next;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    MultiSeries<TodaPoly> cell;
                    for (int m = 0; m < 2; ++m) {
                        auto factor = var_series(cycle[step], R[m][j]);
                        for (const auto& [va, ca] : acc[i][m])
                            for (const auto& [vb, cb] : factor) {
                                std::vector<int> key = va;
                                key[cycle[step]] += vb[cycle[step]];
                                int total = std::accumulate(key.begin(), key.end(), 0);
                                if (total < seed_total_min) continue;
                                multi_add(cell, key, ca * cb);
                            }
                    }
                    next[i][j] = std::move(cell);
                }
            acc = std::move(next);
        }
        MultiSeries<TodaPoly> tr = acc[0][0];
        for (const auto& [v, c] : acc[1][1]) multi_add(tr, v, c);
        return tr;
    };

    auto arr = cyclic_contract<TodaPoly>(spec, edges, seed);
    if (!index_array_symmetric(arr))
        throw std::runtime_error("correlators_mr: extracted array is not symmetric");
    return arr;
}

/// Same array through the local kernel route:
/// (-1)^{k-1} sum_pi prod_j K(lambda_{pi(j)}, lambda_{pi(j+1)}) / prod_i (1 + alpha(lambda_i)).
inline IndexArray<TodaPoly> correlators_kernel(const Resolvent& r, const std::vector<int>& caps,
                                               const std::vector<int>& region) {
    const int k = static_cast<int>(caps.size());
    int W = 0;
    for (int cap : caps) W += cap + 2;
    if (r.order() + 1 < W)
        throw std::domain_error("correlators_kernel: resolvent order " + std::to_string(r.order()) +
                                " below required window " + std::to_string(W - 1));

    BiKernel<TodaPoly> K = kernel_K(r);
    TruncSeries<TodaPoly> inv = r.one_plus_alpha().invert();

    CyclicSpec spec;
    spec.k = k;
    spec.caps = caps;
    spec.region = region;
    spec.window = W;
    spec.sign = (k % 2 == 0) ? -1 : 1;

    auto edges = [&](int, int, bool a_dom) {
        auto terms = expand_kernel_window(K, a_dom, W);
        return fold_univar_into_terms(terms, inv, W);
    };

    auto arr = cyclic_contract<TodaPoly>(spec, edges);
    if (!index_array_symmetric(arr))
        throw std::runtime_error("correlators_kernel: extracted array is not symmetric");
    return arr;
}

inline TauTables tau_tables(const Resolvent& r, int P) {
    if (r.order() < 2 * P + 4)
        throw std::domain_error("tau_tables: need resolvent order >= " + std::to_string(2 * P + 4) +
                                ", have " + std::to_string(r.order()));
    TauTables t;
    t.max_index = P;
    for (int p = 0; p <= P; ++p) t.s.push_back(r.c[p + 1].ring_shift(1));

    // Two-point numerator Tr(R(lambda) R(mu)) - 1, divided twice by (lambda - mu).
    int t_cap = 2 * P + 6;
    auto al = r.alpha(), be = r.beta(), ga = r.gamma(), opa = r.one_plus_alpha();
    BiSeries<TodaPoly> num = BiSeries<TodaPoly>::outer(opa, opa, t_cap) +
                             BiSeries<TodaPoly>::outer(be, ga, t_cap) +
                             BiSeries<TodaPoly>::outer(ga, be, t_cap) +
                             BiSeries<TodaPoly>::outer(al, al, t_cap);
    num.add(0, 0, TodaPoly(-1L));
    BiSeries<TodaPoly> g = num.divided_by_lambda_minus_mu().divided_by_lambda_minus_mu();
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= P; ++q) t.omega[{p, q}] = g.coeff(p + 2, q + 2);

    // Region cross-check: the same slots from the one-sided expansions of the
    // double-pole factor, evaluated against on-demand numerator entries.
    auto fam = [&](const std::vector<TodaPoly>& f, int depth) {
        return depth >= 1 && depth - 1 < static_cast<int>(f.size()) ? f[depth - 1] : TodaPoly();
    };
    auto num_entry = [&](int a, int b) {
        TodaPoly one_a = a == 0 ? TodaPoly(1L) : fam(r.a, a);
        TodaPoly one_b = b == 0 ? TodaPoly(1L) : fam(r.a, b);
        TodaPoly res = one_a * one_b + fam(r.b, a) * fam(r.c, b) + fam(r.c, a) * fam(r.b, b) +
                       fam(r.a, a) * fam(r.a, b);
        if (a == 0 && b == 0) res -= TodaPoly(1L);
        return res;
    };
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= P; ++q) {
            TodaPoly left, right;  // lambda-dominant and mu-dominant expansions
            for (int m = 0; m <= p; ++m)
                left += num_entry(p - m, q + 2 + m).scaled(Rational(m + 1));
            for (int m = 0; m <= q; ++m)
                right += num_entry(p + 2 + m, q - m).scaled(Rational(m + 1));
            if (!(left == t.omega[{p, q}]) || !(right == t.omega[{p, q}]))
                throw std::runtime_error("tau_tables: region expansions disagree at (" +
                                         std::to_string(p) + "," + std::to_string(q) + ")");
        }
    return t;
}

/// Multi-index correlator polynomial: derivations applied to a two-index seed.
/// The result must not depend on which two indices seed the table lookup;
/// that independence is asserted.
inline TodaPoly omega_multi(const Resolvent& r, const TauTables& t, std::vector<int> idx) {
    if (idx.size() < 2) throw std::domain_error("omega_multi: need at least two indices");
    auto eval = [&](const std::vector<int>& order) {
        std::size_t m = order.size();
        TodaPoly acc = t.Omega(order[m - 2], order[m - 1]);
        for (int j = static_cast<int>(m) - 3; j >= 0; --j) acc = toda_derivation(r, order[j])(acc);
        return acc;
    };
    TodaPoly first = eval(idx);
    if (idx.size() > 2) {
        std::vector<int> alt(idx.rbegin(), idx.rend());
        if (!(eval(alt) == first))
            throw std::runtime_error("omega_multi: seed choice changed the result");
    }
    return first;
}

/// Gradient identity of the resolvent: nabla(mu) R(lambda) equals
/// [R(mu), R(lambda)]/(mu - lambda) + [Q(mu), R(lambda)] with
/// Q(mu) = -id/mu + diag(0, gamma(mu)). Checked entrywise through exact
/// division and additionally via the two one-sided pole expansions.
inline VerifyReport verify_gradient_identity(const Resolvent& r, int Nl, int Nm) {
    VerifyReport rep;
    using P = TodaPoly;
    using BS = BiSeries<P>;
    if (r.order() < std::max(Nl, Nm))
        throw std::domain_error("verify_gradient_identity: resolvent order too small");

    // Left side: nabla(mu) applied to the lambda-coefficients.
    std::vector<AdmissibleDerivation> ders;
    for (int j = 0; j + 2 <= Nm; ++j) ders.push_back(toda_derivation(r, j));
    auto lhs_family = [&](const std::vector<P>& fam) {
        BS out(Nl, Nm, Nl + Nm);
        for (int i = 0; i + 1 <= Nl && i < static_cast<int>(fam.size()); ++i)
            for (int j = 0; j + 2 <= Nm; ++j) out.add(i + 1, j + 2, ders[j](fam[i]));
        return out;
    };
    std::array<std::array<BS, 2>, 2> lhs = {{{lhs_family(r.a), lhs_family(r.b)},
                                             {lhs_family(r.c), -lhs_family(r.a)}}};

    auto R = r.matrix();
    auto entry_mu = [&](int i, int j) { return BS::from_mu(R[i][j]); };
    auto entry_la = [&](int i, int j) { return BS::from_lambda(R[i][j]); };

    // Commutator [R(mu), R(lambda)] as bi-series entries.
    std::array<std::array<BS, 2>, 2> com;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BS acc = entry_mu(i, 0) * entry_la(0, j) - entry_la(i, 0) * entry_mu(0, j);
            acc = acc + entry_mu(i, 1) * entry_la(1, j) - entry_la(i, 1) * entry_mu(1, j);
            com[i][j] = acc;
        }

    // [Q(mu), R(lambda)] = gamma(mu) [[0, -beta(lambda)], [gamma(lambda), 0]].
    BS q12 = BS::from_mu(r.gamma()) * BS::from_lambda(-r.beta());
    BS q21 = BS::from_mu(r.gamma()) * BS::from_lambda(r.gamma());

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BS rhs = (-com[i][j]).divided_by_lambda_minus_mu();
            if (i == 0 && j == 1) rhs = rhs + q12;
            if (i == 1 && j == 0) rhs = rhs + q21;
            if (!agree(lhs[i][j], rhs))
                rep.fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") mismatch");
        }

    // One-sided expansions: both regions must reproduce the left side, with all
    // nonnegative powers cancelling.
    int Wl = Nl - 1, Wm = Nm - 1;
    int safe = std::min(Nl, Nm) - 2;
    for (bool mu_dominates : {true, false}) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::map<std::pair<int, int>, P> window;  // (e_lambda, e_mu) -> coeff
                for (const auto& [key, c] : com[i][j].terms()) {
                    int a = key.first, b = key.second;  // lambda-, mu-depths
                    // 1/(mu - lambda) expanded per region
                    if (mu_dominates) {
                        for (int m = 0; m <= Wl; ++m) {
                            int el = m - a, em = -m - 1 - b;
                            if (el >= -Wl && el <= Wl && em >= -Wm) window[{el, em}] += c;
                        }
                    } else {
                        for (int m = 0; m <= Wm; ++m) {
                            int el = -m - 1 - a, em = m - b;
                            if (em >= -Wm && em <= Wm && el >= -Wl) window[{el, em}] -= c;
                        }
                    }
                }
                BS qterm(Nl, Nm, Nl + Nm);
                if (i == 0 && j == 1) qterm = q12;
                if (i == 1 && j == 0) qterm = q21;
                for (const auto& [key, c] : qterm.terms()) window[{-key.first, -key.second}] += c;

                for (const auto& [slot, c] : window) {
                    auto [el, em] = slot;
                    if (std::abs(el) + std::abs(em) > safe) continue;
                    P expect;
                    if (el <= -1 && em <= -2) expect = lhs[i][j].coeff_or_zero(-el, -em);
                    if (!(c == expect))
                        rep.fail("region " + std::string(mu_dominates ? "mu>lambda" : "lambda>mu") +
                                 " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ") slot (" + std::to_string(el) + "," + std::to_string(em) + ")");
                }
            }
    }
    return rep;
}

}  // namespace todatau
