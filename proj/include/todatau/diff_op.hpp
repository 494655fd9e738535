#pragma once

#include <map>
#include <utility>

#include "todatau/toda_poly.hpp"

namespace todatau {

/// Difference operator sum_m P_m Lambda^m with finitely many nonzero
/// coefficients. Composition uses the twisted product
/// (P_a Lambda^a)(Q_b Lambda^b) = P_a * Lambda^a(Q_b) Lambda^{a+b}.
template <class S>
class DiffOpT {
public:
    DiffOpT() = default;

    static DiffOpT term(int m, const TodaPolyT<S>& p) {
        DiffOpT op;
        op.add(m, p);
        return op;
    }

    /// L = Lambda + v_0 + w_0 Lambda^{-1}.
    static DiffOpT lax() {
        DiffOpT op;
        op.add(1, TodaPolyT<S>(1L));
        op.add(0, TodaPolyT<S>::var(vvar(0)));
        op.add(-1, TodaPolyT<S>::var(wvar(0)));
        return op;
    }

    void add(int m, const TodaPolyT<S>& p) {
        if (p.is_zero()) return;
        auto it = c_.find(m);
        if (it == c_.end()) {
            c_[m] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    TodaPolyT<S> coef(int m) const {
        auto it = c_.find(m);
        return it == c_.end() ? TodaPolyT<S>() : it->second;
    }
    const std::map<int, TodaPolyT<S>>& terms() const { return c_; }

    DiffOpT plus_part() const {
        DiffOpT r;
        for (const auto& [m, p] : c_)
            if (m >= 0) r.c_[m] = p;
        return r;
    }

    friend DiffOpT operator+(const DiffOpT& a, const DiffOpT& b) {
        DiffOpT r = a;
        for (const auto& [m, p] : b.c_) r.add(m, p);
        return r;
    }
    friend DiffOpT operator-(const DiffOpT& a, const DiffOpT& b) {
        DiffOpT r = a;
        for (const auto& [m, p] : b.c_) r.add(m, -p);
        return r;
    }

    friend DiffOpT operator*(const DiffOpT& a, const DiffOpT& b) {
        DiffOpT r;
        for (const auto& [ma, pa] : a.c_)
            for (const auto& [mb, pb] : b.c_) r.add(ma + mb, pa * pb.ring_shift(ma));
        return r;
    }

    friend DiffOpT commutator(const DiffOpT& a, const DiffOpT& b) { return a * b - b * a; }

    bool is_zero() const { return c_.empty(); }

private:
    std::map<int, TodaPolyT<S>> c_;
};

using DiffOp = DiffOpT<Rational>;

/// Lax-side derivation images: A_k = (L^{k+1})_+, then
/// (Coef([A_k, L], 0), Coef([A_k, L], -1)). Serves as the independent route
/// against the matrix-resolvent recursion.
template <class S>
std::pair<TodaPolyT<S>, TodaPolyT<S>> lax_derivation_images(int k) {
    DiffOpT<S> L = DiffOpT<S>::lax();
    DiffOpT<S> Lp = L;
    for (int i = 0; i < k; ++i) Lp = Lp * L;  // L^{k+1}
    DiffOpT<S> Ak = Lp.plus_part();
    DiffOpT<S> comm = commutator(Ak, L);
    return {comm.coef(0), comm.coef(-1)};
}

}  // namespace todatau
