#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "todatau/rational.hpp"

namespace todatau {

/// Laurent polynomial in the dispersion parameter e (epsilon) with Rational
/// coefficients. Exponents may be negative; zero coefficients are never stored.
class EpsScalar {
public:
    EpsScalar() = default;
    EpsScalar(const Rational& r) {
        if (!r.is_zero()) c_[0] = r;
    }
    EpsScalar(long n) : EpsScalar(Rational(n)) {}

    static EpsScalar eps_power(int k, const Rational& coeff = Rational(1)) {
        EpsScalar s;
        if (!coeff.is_zero()) s.c_[k] = coeff;
        return s;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

    /// Coefficient of e^k.
    Rational coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Rational(0) : it->second;
    }
    const std::map<int, Rational>& terms() const { return c_; }

    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("EpsScalar: not a plain rational");
        return coeff(0);
    }

    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    EpsScalar& operator+=(const EpsScalar& o) {
        for (const auto& [k, r] : o.c_) add_term(k, r);
        return *this;
    }
    EpsScalar& operator-=(const EpsScalar& o) {
        for (const auto& [k, r] : o.c_) add_term(k, -r);
        return *this;
    }
    EpsScalar operator-() const {
        EpsScalar r;
        for (const auto& [k, q] : c_) r.c_[k] = -q;
        return r;
    }
    friend EpsScalar operator+(EpsScalar a, const EpsScalar& b) { return a += b; }
    friend EpsScalar operator-(EpsScalar a, const EpsScalar& b) { return a -= b; }

    friend EpsScalar operator*(const EpsScalar& a, const EpsScalar& b) {
        EpsScalar r;
        for (const auto& [ka, ra] : a.c_)
            for (const auto& [kb, rb] : b.c_) r.add_term(ka + kb, ra * rb);
        return r;
    }
    EpsScalar& operator*=(const EpsScalar& o) { return *this = *this * o; }

    /// Multiply by e^k.
    EpsScalar shifted(int k) const {
        EpsScalar r;
        for (const auto& [e, q] : c_) r.c_[e + k] = q;
        return r;
    }

    /// Inverse, defined for single-term values only.
    EpsScalar inverse() const {
        if (c_.size() != 1) throw std::domain_error("EpsScalar: inverse needs a monomial");
        return eps_power(-c_.begin()->first, c_.begin()->second.inverse());
    }

    friend bool operator==(const EpsScalar& a, const EpsScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const EpsScalar& a, const EpsScalar& b) { return !(a == b); }
    friend bool operator<(const EpsScalar& a, const EpsScalar& b) { return a.c_ < b.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rational q = it->second;
            if (!first) {
                os << (q.sign() < 0 ? " - " : " + ");
                if (q.sign() < 0) q = -q;
            }
            first = false;
            int k = it->first;
            if (k == 0) {
                os << q.str();
            } else {
                if (!q.is_one()) os << q.str() << "*";
                os << "e";
                if (k != 1) os << "^" << k;
            }
        }
        return os.str();
    }

private:
    void add_term(int k, const Rational& r) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            if (!r.is_zero()) c_[k] = r;
        } else {
            it->second += r;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    std::map<int, Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const EpsScalar& s) { return os << s.str(); }

}  // namespace todatau
