#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "todatau/ring_traits.hpp"

namespace todatau {

/// Truncated formal Laurent series in the spectral variable. Coefficients are
/// indexed by the exponent of lambda; `hi()` bounds the exponents that can be
/// nonzero, `lo()` is the validity floor: coefficients at exponents >= lo()
/// are exact, anything below is unknown. A finite principal part (positive
/// exponents) is allowed, which covers the few Laurent-type objects needed.
template <class R>
class TruncSeries {
public:
    TruncSeries() : hi_(0), lo_(0) {}
    TruncSeries(int hi, int lo) : hi_(hi), lo_(lo) {
        if (lo_ > hi_ + 1) lo_ = hi_ + 1;  // empty-window series
    }

    /// Constant series c + O(lambda^{lo-1}).
    static TruncSeries constant(const R& c, int lo) {
        TruncSeries s(0, lo);
        s.set(0, c);
        return s;
    }
    static TruncSeries one(int lo) { return constant(ring_one<R>(), lo); }
    static TruncSeries zero(int lo) { return TruncSeries(std::min(0, lo), lo); }

    /// c * lambda^e + O(lambda^{lo-1}).
    static TruncSeries monomial(int e, const R& c, int lo) {
        TruncSeries s(std::max(e, 0), lo);
        s.set(e, c);
        return s;
    }

    int hi() const { return hi_; }
    int lo() const { return lo_; }

    void set(int e, const R& c) {
        if (e > hi_) throw std::logic_error("TruncSeries::set above hi");
        if (c.is_zero())
            c_.erase(e);
        else
            c_[e] = c;
    }

    /// Stored coefficient (zero when absent); throws when the slot is below
    /// the validity floor.
    R coeff(int e) const {
        if (e < lo_) throw std::domain_error("TruncSeries: coefficient below truncation order");
        auto it = c_.find(e);
        return it == c_.end() ? R() : it->second;
    }
    R coeff_or_zero(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? R() : it->second;
    }
    const std::map<int, R>& terms() const { return c_; }

    bool is_zero_stored() const { return c_.empty(); }

    TruncSeries truncated(int new_lo) const {
        TruncSeries r(hi_, std::max(lo_, new_lo));
        for (const auto& [e, c] : c_)
            if (e >= r.lo_) r.c_[e] = c;
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::max(a.hi_, b.hi_), std::max(a.lo_, b.lo_));
        for (const auto& [e, c] : a.c_)
            if (e >= r.lo_) r.add(e, c);
        for (const auto& [e, c] : b.c_)
            if (e >= r.lo_) r.add(e, c);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
    TruncSeries operator-() const {
        TruncSeries r(hi_, lo_);
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(a.hi_ + b.hi_, std::max(a.lo_ + b.hi_, b.lo_ + a.hi_));
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) {
                int e = ea + eb;
                if (e >= r.lo_) r.add(e, ca * cb);
            }
        return r;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries scaled(const R& c) const {
        TruncSeries r(hi_, lo_);
        for (const auto& [e, v] : c_) r.add(e, v * c);
        return r;
    }

    /// Multiply by lambda^k.
    TruncSeries mul_power(int k) const {
        TruncSeries r(hi_ + k, lo_ + k);
        for (const auto& [e, c] : c_) r.c_[e + k] = c;
        return r;
    }

    /// Apply a coefficient map (e.g. a ring shift) to every entry.
    template <class F>
    TruncSeries map_coeffs(F&& f) const {
        TruncSeries r(hi_, lo_);
        for (const auto& [e, c] : c_) r.add(e, f(c));
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        // Compare on the common validity window.
        int lo = std::max(a.lo_, b.lo_);
        int hi = std::max(a.hi_, b.hi_);
        for (int e = lo; e <= hi; ++e)
            if (!(a.coeff_or_zero(e) == b.coeff_or_zero(e))) return false;
        return true;
    }

    /// Exponential of a series with strictly negative exponents.
    TruncSeries exp() const {
        for (const auto& [e, c] : c_)
            if (e >= 0 && !c.is_zero())
                throw std::domain_error("TruncSeries::exp: nonzero constant or positive part");
        TruncSeries r = one(lo_);
        TruncSeries power = one(lo_);
        Rational fact(1);
        for (int m = 1; -m >= lo_; ++m) {
            power = power * *this;
            fact *= Rational(m);
            r += power.map_coeffs([&](const R& c) { return ring_scale(c, fact.inverse()); });
        }
        return r;
    }

    /// Logarithm of a series of the form 1 + O(lambda^{-1}).
    TruncSeries log() const {
        if (!(coeff_or_zero(0) == ring_one<R>()))
            throw std::domain_error("TruncSeries::log: constant term must be 1");
        TruncSeries u = *this - one(lo_);
        for (const auto& [e, c] : u.c_)
            if (e >= 0 && !c.is_zero()) throw std::domain_error("TruncSeries::log: positive part");
        TruncSeries r = zero(lo_);
        TruncSeries power = one(lo_);
        for (int m = 1; -m >= lo_; ++m) {
            power = power * u;
            Rational coef = Rational(m % 2 == 1 ? 1 : -1, m);
            r += power.map_coeffs([&](const R& c) { return ring_scale(c, coef); });
        }
        return r;
    }

    /// Multiplicative inverse; the leading coefficient must be invertible in
    /// the coefficient ring.
    TruncSeries invert() const {
        int h = hi_;
        while (h >= lo_ && coeff_or_zero(h).is_zero()) --h;
        if (h < lo_) throw std::domain_error("TruncSeries::invert: zero series");
        auto cinv = ring_invert(coeff_or_zero(h));
        if (!cinv) throw std::domain_error("TruncSeries::invert: leading coefficient not a unit");
        // s = c lambda^h (1 + u), 1/s = c^{-1} lambda^{-h} sum (-u)^m
        TruncSeries u(hi_ - h >= -1 ? -1 : hi_ - h, lo_ - h);
        for (const auto& [e, c] : c_)
            if (e != h) u.add(e - h, c * *cinv);
        TruncSeries geo = one(u.lo_);
        TruncSeries power = one(u.lo_);
        for (int m = 1; -m >= u.lo_; ++m) {
            power = power * u;
            if (m % 2 == 1)
                geo += -power;
            else
                geo += power;
        }
        return geo.map_coeffs([&](const R& c) { return c * *cinv; }).mul_power(-h);
    }

    std::string str(const std::string& var = "x") const {
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << it->second << ")";
            if (it->first != 0) os << "*" << var << "^" << it->first;
        }
        if (first) os << "0";
        os << " + O(" << var << "^" << lo_ - 1 << ")";
        return os.str();
    }

private:
    void add(int e, const R& c) {
        if (c.is_zero()) return;
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    std::map<int, R> c_;
    int hi_;
    int lo_;
};

}  // namespace todatau
