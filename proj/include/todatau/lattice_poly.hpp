#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "todatau/eps_scalar.hpp"

namespace todatau {

/// Polynomial in the lattice variable n whose coefficients are Laurent
/// polynomials in e. Exact throughout; no zero coefficients stored.
class LatticePoly {
public:
    LatticePoly() = default;
    LatticePoly(const EpsScalar& c) {
        if (!c.is_zero()) c_[0] = c;
    }
    LatticePoly(const Rational& c) : LatticePoly(EpsScalar(c)) {}
    LatticePoly(long c) : LatticePoly(EpsScalar(c)) {}

    static LatticePoly n_power(int d, const EpsScalar& coeff = EpsScalar(Rational(1))) {
        if (d < 0) throw std::domain_error("LatticePoly: negative n-degree");
        LatticePoly p;
        if (!coeff.is_zero()) p.c_[d] = coeff;
        return p;
    }
    static LatticePoly var_n() { return n_power(1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

    EpsScalar coeff(int d) const {
        auto it = c_.find(d);
        return it == c_.end() ? EpsScalar() : it->second;
    }
    const std::map<int, EpsScalar>& terms() const { return c_; }

    EpsScalar constant_term() const { return coeff(0); }

    LatticePoly& operator+=(const LatticePoly& o) {
        for (const auto& [d, v] : o.c_) add_term(d, v);
        return *this;
    }
    LatticePoly& operator-=(const LatticePoly& o) {
        for (const auto& [d, v] : o.c_) add_term(d, -v);
        return *this;
    }
    LatticePoly operator-() const {
        LatticePoly r;
        for (const auto& [d, v] : c_) r.c_[d] = -v;
        return r;
    }
    friend LatticePoly operator+(LatticePoly a, const LatticePoly& b) { return a += b; }
    friend LatticePoly operator-(LatticePoly a, const LatticePoly& b) { return a -= b; }

    friend LatticePoly operator*(const LatticePoly& a, const LatticePoly& b) {
        LatticePoly r;
        for (const auto& [da, va] : a.c_)
            for (const auto& [db, vb] : b.c_) r.add_term(da + db, va * vb);
        return r;
    }
    LatticePoly& operator*=(const LatticePoly& o) { return *this = *this * o; }

    LatticePoly scaled(const EpsScalar& s) const {
        LatticePoly r;
        for (const auto& [d, v] : c_) {
            EpsScalar w = v * s;
            if (!w.is_zero()) r.c_[d] = w;
        }
        return r;
    }

    friend bool operator==(const LatticePoly& a, const LatticePoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LatticePoly& a, const LatticePoly& b) { return !(a == b); }

    /// Substitute n -> n + k, expanded by the binomial theorem.
    LatticePoly shift_n(int k) const {
        if (k == 0) return *this;
        LatticePoly r;
        EpsScalar kk{Rational(k)};
        for (const auto& [d, v] : c_) {
            // (n + k)^d = sum_j C(d, j) k^(d-j) n^j
            EpsScalar kpow(Rational(1));
            for (int j = d; j >= 0; --j) {
                // kpow = k^(d-j)
                r.add_term(j, v * kpow * EpsScalar(Rational::binomial(d, d - j)));
                if (j > 0) kpow = kpow * kk;
            }
        }
        return r;
    }

    /// The unique q with q(n+1) - q(n) = p(n) and q(0) = 0, computed through
    /// the binomial basis: C(n, j) has antidifference C(n, j+1).
    LatticePoly antidifference() const {
        if (is_zero()) return LatticePoly();
        int d = degree();
        // Forward differences at 0 give the binomial-basis coordinates.
        std::vector<EpsScalar> diffs;
        LatticePoly cur = *this;
        for (int j = 0; j <= d; ++j) {
            diffs.push_back(cur.constant_term());
            cur = cur.shift_n(1) - cur;
        }
        LatticePoly q;
        for (int j = 0; j <= d; ++j) {
            if (diffs[j].is_zero()) continue;
            q += binomial_in_n(j + 1).scaled(diffs[j]);
        }
        return q;
    }

    /// C(n + offset, m) as a polynomial in n.
    static LatticePoly binomial_in_n(int m, int offset = 0) {
        if (m < 0) return LatticePoly();
        LatticePoly r(1L);
        for (int i = 0; i < m; ++i) r *= (var_n() + LatticePoly(Rational(offset - i)));
        return r.scaled(EpsScalar(Rational::factorial(m).inverse()));
    }

    EpsScalar eval_at(long n) const {
        EpsScalar r;
        EpsScalar nn{Rational(n)};
        // Horner from the top degree.
        int top = degree();
        for (int d = top; d >= 0; --d) r = r * nn + coeff(d);
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            std::string cs = it->second.str();
            bool wrap = cs.find(' ') != std::string::npos;
            if (!first) os << " + ";
            first = false;
            if (it->first == 0) {
                os << (wrap ? "(" + cs + ")" : cs);
                continue;
            }
            if (cs != "1") os << (wrap ? "(" + cs + ")" : cs) << "*";
            os << "n";
            if (it->first != 1) os << "^" << it->first;
        }
        return os.str();
    }

private:
    void add_term(int d, const EpsScalar& v) {
        auto it = c_.find(d);
        if (it == c_.end()) {
            if (!v.is_zero()) c_[d] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    std::map<int, EpsScalar> c_;
};

inline std::ostream& operator<<(std::ostream& os, const LatticePoly& p) { return os << p.str(); }

}  // namespace todatau
