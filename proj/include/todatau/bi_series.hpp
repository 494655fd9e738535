#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "todatau/trunc_series.hpp"

namespace todatau {

/// Effectively-unbounded rectangular validity (for data with no dependence on
/// one of the variables).
inline constexpr int kBiUnbounded = 1 << 20;

/// Doubly truncated formal series in lambda^{-1}, mu^{-1}. Entries are keyed
/// by nonnegative depths (a, b) standing for lambda^{-a} mu^{-b}. Validity is
/// tracked as a rectangle (pl, pm) plus a total-order bound t: the entry
/// (a, b) is exact iff a <= pl, b <= pm, a + b <= t.
template <class R>
class BiSeries {
public:
    using Key = std::pair<int, int>;

    BiSeries() : pl_(-1), pm_(-1), t_(-1) {}
    BiSeries(int pl, int pm, int t) : pl_(pl), pm_(pm), t_(t) {}

    int pl() const { return pl_; }
    int pm() const { return pm_; }
    int t() const { return t_; }

    bool valid(int a, int b) const { return a >= 0 && b >= 0 && a <= pl_ && b <= pm_ && a + b <= t_; }

    void set(int a, int b, const R& c) {
        if (!valid(a, b)) throw std::logic_error("BiSeries::set outside validity");
        if (c.is_zero())
            c_.erase(Key{a, b});
        else
            c_[Key{a, b}] = c;
    }
    void add(int a, int b, const R& c) {
        if (c.is_zero()) return;
        auto it = c_.find(Key{a, b});
        if (it == c_.end()) {
            c_[Key{a, b}] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    R coeff(int a, int b) const {
        if (!valid(a, b)) throw std::domain_error("BiSeries: coefficient outside validity");
        auto it = c_.find(Key{a, b});
        return it == c_.end() ? R() : it->second;
    }
    R coeff_or_zero(int a, int b) const {
        auto it = c_.find(Key{a, b});
        return it == c_.end() ? R() : it->second;
    }
    const std::map<Key, R>& terms() const { return c_; }

    /// Outer product u(lambda) * v(mu) of two univariate series (hi <= 0).
    /// An explicit cap on the total order keeps high-depth cross terms from
    /// being materialized when they will never be read.
    static BiSeries outer(const TruncSeries<R>& u, const TruncSeries<R>& v,
                          int t_cap = kBiUnbounded) {
        if (u.hi() > 0 || v.hi() > 0) throw std::logic_error("BiSeries::outer: positive exponents");
        BiSeries r(-u.lo(), -v.lo(), std::min(-u.lo() - v.lo(), t_cap));
        for (const auto& [eu, cu] : u.terms())
            for (const auto& [ev, cv] : v.terms())
                if (-eu - ev <= r.t_) r.add(-eu, -ev, cu * cv);
        return r;
    }

    /// A univariate series in lambda viewed as a bi-series with no mu
    /// dependence (or in mu, transposed).
    static BiSeries from_lambda(const TruncSeries<R>& u) {
        if (u.hi() > 0) throw std::logic_error("BiSeries::from_lambda: positive exponents");
        BiSeries r(-u.lo(), kBiUnbounded, kBiUnbounded);
        for (const auto& [e, c] : u.terms()) r.add(-e, 0, c);
        return r;
    }
    static BiSeries from_mu(const TruncSeries<R>& u) { return from_lambda(u).transposed(); }

    BiSeries transposed() const {
        BiSeries r(pm_, pl_, t_);
        for (const auto& [k, c] : c_) r.c_[Key{k.second, k.first}] = c;
        return r;
    }

    /// Apply a coefficient map, possibly into a different ring.
    template <class F>
    auto map_coeffs(F&& f) const -> BiSeries<std::decay_t<decltype(f(std::declval<R>()))>> {
        using R2 = std::decay_t<decltype(f(std::declval<R>()))>;
        BiSeries<R2> r(pl_, pm_, t_);
        for (const auto& [k, c] : c_) r.add(k.first, k.second, f(c));
        return r;
    }

    friend BiSeries operator+(const BiSeries& x, const BiSeries& y) {
        BiSeries r(std::min(x.pl_, y.pl_), std::min(x.pm_, y.pm_), std::min(x.t_, y.t_));
        for (const auto& [k, c] : x.c_)
            if (r.valid(k.first, k.second)) r.add(k.first, k.second, c);
        for (const auto& [k, c] : y.c_)
            if (r.valid(k.first, k.second)) r.add(k.first, k.second, c);
        return r;
    }
    friend BiSeries operator-(const BiSeries& x, const BiSeries& y) { return x + (-y); }
    BiSeries operator-() const {
        BiSeries r(pl_, pm_, t_);
        for (const auto& [k, c] : c_) r.c_[k] = -c;
        return r;
    }

    friend BiSeries operator*(const BiSeries& x, const BiSeries& y) {
        BiSeries r(std::min(x.pl_, y.pl_), std::min(x.pm_, y.pm_), std::min(x.t_, y.t_));
        for (const auto& [ka, ca] : x.c_)
            for (const auto& [kb, cb] : y.c_) {
                int a = ka.first + kb.first, b = ka.second + kb.second;
                if (r.valid(a, b)) r.add(a, b, ca * cb);
            }
        return r;
    }

    /// Multiply by univariate factors u(lambda) and v(mu) (either may be 1).
    BiSeries mul_univar(const TruncSeries<R>& u, const TruncSeries<R>& v) const {
        if (u.hi() > 0 || v.hi() > 0) throw std::logic_error("BiSeries::mul_univar: positive exponents");
        BiSeries r(std::min(pl_, -u.lo()), std::min(pm_, -v.lo()), t_);
        for (const auto& [k, c] : c_)
            for (const auto& [eu, cu] : u.terms())
                for (const auto& [ev, cv] : v.terms()) {
                    int a = k.first - eu, b = k.second - ev;
                    if (r.valid(a, b)) r.add(a, b, c * cu * cv);
                }
        return r;
    }

    /// Sum over the diagonal mu := lambda, as a univariate series in lambda.
    TruncSeries<R> diagonal() const {
        int depth = std::min({pl_, pm_, t_});
        TruncSeries<R> s(0, -depth);
        for (const auto& [k, c] : c_) {
            int d = k.first + k.second;
            if (d <= depth) {
                R cur = s.coeff_or_zero(-d);
                cur += c;
                s.set(-d, cur);
            }
        }
        return s;
    }

    /// Exact division by (lambda - mu). The numerator must vanish on the
    /// diagonal; both one-sided evaluations are computed wherever available
    /// and must agree — a nonzero remainder shows up as a mismatch.
    BiSeries divided_by_lambda_minus_mu() const {
        int th = std::min(std::max(pl_, pm_), t_) - 1;  // validity of F/(x-y)
        BiSeries g(pl_ + 1, pm_ + 1, th + 2);
        for (int a = 0; a <= th && a <= pl_; ++a) {
            for (int b = 0; a + b <= th && b <= pm_; ++b) {
                bool d1ok = a <= pl_ && a + b + 1 <= std::min(pm_, t_);
                bool d2ok = b <= pm_ && a + b + 1 <= std::min(pl_, t_);
                if (!d1ok && !d2ok)
                    throw std::logic_error("BiSeries division: claimed slot not computable");
                R h1, h2;
                if (d1ok)
                    for (int r = 0; r <= a; ++r) h1 += coeff_or_zero(a - r, b + 1 + r);
                if (d2ok)
                    for (int r = 0; r <= b; ++r) h2 -= coeff_or_zero(a + 1 + r, b - r);
                if (d1ok && d2ok && !(h1 == h2))
                    throw std::domain_error(
                        "BiSeries division by (lambda-mu): nonzero remainder (numerator does not "
                        "vanish on the diagonal)");
                g.add(a + 1, b + 1, d1ok ? h1 : h2);
            }
        }
        return g;
    }

    /// Equality on the intersection of the validity regions.
    friend bool agree(const BiSeries& x, const BiSeries& y) {
        int pl = std::min(x.pl_, y.pl_), pm = std::min(x.pm_, y.pm_), t = std::min(x.t_, y.t_);
        for (int a = 0; a <= pl; ++a)
            for (int b = 0; b <= pm && a + b <= t; ++b)
                if (!(x.coeff_or_zero(a, b) == y.coeff_or_zero(a, b))) return false;
        return true;
    }

private:
    std::map<Key, R> c_;
    int pl_, pm_, t_;
};

/// Bivariate kernel with a simple diagonal pole, stored in the canonical form
/// pole(lambda)/(lambda - mu) + regular. The pole coefficient is the diagonal
/// residue, so the representation is unique and region-free; the choice of
/// expansion region is deferred to extraction time.
template <class R>
struct BiKernel {
    TruncSeries<R> pole;  // function of lambda only, hi <= 0
    BiSeries<R> reg;

    /// Build from a numerator N(lambda, mu), representing N/(lambda - mu).
    static BiKernel from_numerator(const BiSeries<R>& num) {
        BiKernel k;
        k.pole = num.diagonal();
        BiSeries<R> diag_l = BiSeries<R>::from_lambda(k.pole);
        k.reg = (num - diag_l).divided_by_lambda_minus_mu();
        return k;
    }

    /// The kernel multiplied by u(lambda) * v(mu), re-canonicalized.
    BiKernel mul_univar(const TruncSeries<R>& u, const TruncSeries<R>& v) const {
        BiKernel out;
        TruncSeries<R> pu = pole * u;
        out.pole = pu * v;
        BiSeries<R> cross = BiSeries<R>::outer(pu, v) - BiSeries<R>::from_lambda(out.pole);
        out.reg = reg.mul_univar(u, v) + cross.divided_by_lambda_minus_mu();
        return out;
    }

    friend bool agree(const BiKernel& x, const BiKernel& y) {
        return x.pole == y.pole && agree(x.reg, y.reg);
    }
};

}  // namespace todatau
