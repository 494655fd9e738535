#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "todatau/bi_series.hpp"

namespace todatau {

/// One monomial of a two-variable expanded factor: c * lambda_a^{ea} * lambda_b^{eb}.
template <class R>
struct WindowTerm {
    int ea, eb;
    R c;
};

/// Expansion of pole_coeff(lambda_a)/(lambda_a - lambda_b) in the region where
/// one variable dominates, restricted to exponents within [-W, W].
template <class R>
std::vector<WindowTerm<R>> expand_pole_window(const TruncSeries<R>& pole_coeff, bool a_dominates,
                                              int W) {
    if (pole_coeff.hi() > 0) throw std::logic_error("expand_pole_window: positive pole exponents");
    if (-pole_coeff.lo() < W - 1)
        throw std::domain_error("expand_pole_window: pole coefficient truncated below window (have " +
                                std::to_string(-pole_coeff.lo()) + ", need " + std::to_string(W - 1) +
                                ")");
    std::vector<WindowTerm<R>> out;
    for (const auto& [e, c] : pole_coeff.terms()) {
        int s = -e;
        if (a_dominates) {
            // 1/(la - lb) = sum_{m>=0} lb^m la^{-m-1}
            for (int m = 0; s + m + 1 <= W && m <= W; ++m) out.push_back({-s - m - 1, m, c});
        } else {
            // 1/(la - lb) = -sum_{m>=0} la^m lb^{-m-1}
            for (int m = 0; m + 1 <= W; ++m) {
                int ea = m - s;
                if (ea >= -W && ea <= W) out.push_back({ea, -m - 1, -c});
            }
        }
    }
    return out;
}

/// Full window expansion of a kernel (pole part plus regular part).
template <class R>
std::vector<WindowTerm<R>> expand_kernel_window(const BiKernel<R>& k, bool a_dominates, int W) {
    auto out = expand_pole_window(k.pole, a_dominates, W);
    for (const auto& [key, c] : k.reg.terms()) {
        if (key.first <= W && key.second <= W) out.push_back({-key.first, -key.second, c});
    }
    return out;
}

/// Multiply a term list by a univariate series in the first variable.
template <class R>
std::vector<WindowTerm<R>> fold_univar_into_terms(const std::vector<WindowTerm<R>>& terms,
                                                  const TruncSeries<R>& u, int W) {
    std::vector<WindowTerm<R>> out;
    for (const auto& t : terms)
        for (const auto& [e, c] : u.terms()) {
            int ea = t.ea + e;
            if (ea >= -W && ea <= W) out.push_back({ea, t.eb, t.c * c});
        }
    return out;
}

/// Sparse series over k spectral variables, keyed by exponent vectors.
template <class R>
using MultiSeries = std::map<std::vector<int>, R>;

template <class R>
void multi_add(MultiSeries<R>& m, const std::vector<int>& key, const R& c) {
    if (c.is_zero()) return;
    auto it = m.find(key);
    if (it == m.end()) {
        m[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
}

/// Symmetric coefficient array of a cyclic-class sum: maps index tuples
/// (i_1..i_k) to the coefficient of lambda_1^{-i_1-2} ... lambda_k^{-i_k-2}.
template <class R>
using IndexArray = std::map<std::vector<int>, R>;

struct CyclicSpec {
    int k = 2;
    std::vector<int> caps;    // per-variable index caps (extract i_v <= caps[v])
    std::vector<int> region;  // variables listed most-dominant first
    int window = 0;           // exponent window W; 0 means derive from caps
    int sign = 1;             // overall sign applied to the class sum
};

/// Cyclic-class contraction. For each representative of S_k/C_k (first entry
/// of the cycle pinned), multiplies the edge factors
/// edge_terms(a, b, a_dominates) along the cycle, starting from an optional
/// per-cycle seed (used for trace-of-matrix-product numerators), and
/// accumulates the target slots. Pruning uses: every remaining edge factor
/// has total degree <= -1, the final exponent of each variable must land in
/// [-cap-2, -2], and single-factor exponents lie within [-W-1, W].
template <class R>
IndexArray<R> cyclic_contract(
    const CyclicSpec& spec,
    const std::function<std::vector<WindowTerm<R>>(int a, int b, bool a_dom)>& edge_terms,
    const std::function<MultiSeries<R>(const std::vector<int>& cycle)>& seed = nullptr) {
    const int k = spec.k;
    if (k < 2) throw std::domain_error("cyclic_contract: k >= 2 required");
    if (static_cast<int>(spec.caps.size()) != k || static_cast<int>(spec.region.size()) != k)
        throw std::domain_error("cyclic_contract: caps/region size mismatch");

    std::vector<int> rank(k);
    for (int i = 0; i < k; ++i) rank[spec.region[i]] = i;

    int target_total_min = 0;
    for (int v = 0; v < k; ++v) target_total_min -= spec.caps[v] + 2;
    const int W = spec.window;

    IndexArray<R> result;

    // Representatives of S_k/C_k: cycles starting at variable 0.
    std::vector<int> rest(k - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<std::vector<int>> cycles;
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<int> cycle = {0};
        cycle.insert(cycle.end(), rest.begin(), rest.end());
        cycles.push_back(cycle);
    } while (std::next_permutation(rest.begin(), rest.end()));

    for (const auto& cycle : cycles) {
        MultiSeries<R> partial;
        if (seed)
            partial = seed(cycle);
        else
            partial[std::vector<int>(k, 0)] = ring_one<R>();

        for (int j = 0; j < k; ++j) {
            int a = cycle[j], b = cycle[(j + 1) % k];
            auto raw = edge_terms(a, b, rank[a] < rank[b]);
            std::map<std::pair<int, int>, R> terms;
            for (const auto& t : raw) {
                auto it = terms.find({t.ea, t.eb});
                if (it == terms.end()) {
                    terms[{t.ea, t.eb}] = t.c;
                } else {
                    it->second += t.c;
                    if (it->second.is_zero()) terms.erase(it);
                }
            }
            int remaining = k - 1 - j;  // edges still to come after this one

            MultiSeries<R> next;
            if (remaining == 0) {
                // Last edge closes the cycle: both endpoints have their final
                // exponents in the target range, so only the matching edge
                // slots are touched.
                for (const auto& [vec, c] : partial) {
                    for (int fa = -spec.caps[a] - 2; fa <= -2; ++fa)
                        for (int fb = -spec.caps[b] - 2; fb <= -2; ++fb) {
                            auto it = terms.find({fa - vec[a], fb - vec[b]});
                            if (it == terms.end()) continue;
                            std::vector<int> v2 = vec;
                            v2[a] = fa;
                            v2[b] = fb;
                            bool ok = true;
                            for (int v = 0; v < k && ok; ++v)
                                ok = v2[v] >= -spec.caps[v] - 2 && v2[v] <= -2;
                            if (!ok) continue;
                            multi_add(next, v2, c * it->second);
                        }
                }
            } else {
                // Future contacts per variable.
                std::vector<int> touch(k, 0);
                for (int jj = j + 1; jj < k; ++jj) {
                    ++touch[cycle[jj]];
                    ++touch[cycle[(jj + 1) % k]];
                }
                for (const auto& [vec, c] : partial) {
                    for (const auto& [eab, tc] : terms) {
                        std::vector<int> v2 = vec;
                        v2[a] += eab.first;
                        v2[b] += eab.second;
                        int total = std::accumulate(v2.begin(), v2.end(), 0);
                        if (total < target_total_min + remaining) continue;
                        bool ok = true;
                        for (int v = 0; v < k && ok; ++v) {
                            if (touch[v] == 0) {
                                ok = v2[v] >= -spec.caps[v] - 2 && v2[v] <= -2;
                            } else {
                                if (v2[v] - (W + 1) * touch[v] > -2) ok = false;
                                if (v2[v] + W * touch[v] < -spec.caps[v] - 2) ok = false;
                            }
                        }
                        if (!ok) continue;
                        multi_add(next, v2, c * tc);
                    }
                }
            }
            partial = std::move(next);
        }

        for (const auto& [vec, c] : partial) {
            std::vector<int> idx(k);
            for (int v = 0; v < k; ++v) idx[v] = -vec[v] - 2;
            R scaled = spec.sign < 0 ? R() - c : c;
            multi_add(result, idx, scaled);
        }
    }
    return result;
}

/// Checks that an index array is totally symmetric.
template <class R>
bool index_array_symmetric(const IndexArray<R>& arr) {
    for (const auto& [idx, val] : arr) {
        std::vector<int> s = idx;
        std::sort(s.begin(), s.end());
        std::vector<int> perm = s;
        do {
            auto it = arr.find(perm);
            R other = it == arr.end() ? R() : it->second;
            if (!(other == val)) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return true;
}

template <class R>
bool index_arrays_equal(const IndexArray<R>& x, const IndexArray<R>& y) {
    auto get = [](const IndexArray<R>& m, const std::vector<int>& k) {
        auto it = m.find(k);
        return it == m.end() ? R() : it->second;
    };
    for (const auto& [k, v] : x)
        if (!(get(y, k) == v)) return false;
    for (const auto& [k, v] : y)
        if (!(get(x, k) == v)) return false;
    return true;
}

/// Truncation ledger: series order used to extract index tuples with
/// sum(i_j) <= total_cap over k points.
inline int ledger_order(int total_cap, int k) { return total_cap + 2 * k + 2; }

}  // namespace todatau
