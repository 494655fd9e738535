#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "todatau/lattice_poly.hpp"
#include "todatau/rational.hpp"

namespace todatau {

/// A generator of the Toda ring: v_k or w_k, k ranging over all integers.
struct TodaVar {
    enum Kind : unsigned char { V = 0, W = 1 };
    Kind kind;
    int shift;

    friend auto operator<=>(const TodaVar&, const TodaVar&) = default;
};

inline TodaVar vvar(int k) { return TodaVar{TodaVar::V, k}; }
inline TodaVar wvar(int k) { return TodaVar{TodaVar::W, k}; }

/// Monomial in the v_k, w_k: sorted (kind, shift) -> exponent pairs.
/// Exponents are positive in the plain ring; the extended ring of the
/// pre-wave construction also allows negative w-exponents.
struct TodaMono {
    std::vector<std::pair<TodaVar, int>> factors;  // sorted by TodaVar

    friend auto operator<=>(const TodaMono&, const TodaMono&) = default;

    bool is_constant() const { return factors.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : factors) d += e;
        return d;
    }

    TodaMono shifted(int k) const {
        TodaMono r = *this;
        for (auto& [v, e] : r.factors) v.shift += k;
        return r;
    }

    static TodaMono var(TodaVar v, int exp = 1) {
        TodaMono m;
        if (exp != 0) m.factors.push_back({v, exp});
        return m;
    }

    friend TodaMono operator*(const TodaMono& a, const TodaMono& b) {
        TodaMono r;
        auto ia = a.factors.begin(), ib = b.factors.begin();
        while (ia != a.factors.end() || ib != b.factors.end()) {
            if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
                r.factors.push_back(*ia++);
            } else if (ia == a.factors.end() || ib->first < ia->first) {
                r.factors.push_back(*ib++);
            } else {
                int e = ia->second + ib->second;
                if (e != 0) r.factors.push_back({ia->first, e});
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::string str() const {
        if (factors.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [v, e] : factors) {
            if (!first) os << "*";
            first = false;
            os << (v.kind == TodaVar::V ? "v_" : "w_");
            if (v.shift < 0)
                os << "{" << v.shift << "}";
            else
                os << v.shift;
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }
};

/// Element of the Toda ring: map monomial -> scalar, scalar ring pluggable
/// (Rational for the abstract computations, EpsScalar when the dispersion
/// parameter is carried along).
template <class S>
class TodaPolyT {
public:
    using Scalar = S;

    TodaPolyT() = default;
    TodaPolyT(const S& c) {
        if (!c.is_zero()) c_[TodaMono{}] = c;
    }
    TodaPolyT(long c) : TodaPolyT(S(Rational(c))) {}

    static TodaPolyT var(TodaVar v, int exp = 1) { return monomial(TodaMono::var(v, exp), S(Rational(1))); }
    static TodaPolyT monomial(const TodaMono& m, const S& c) {
        TodaPolyT p;
        if (!c.is_zero()) p.c_[m] = c;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first.is_constant()); }
    std::size_t term_count() const { return c_.size(); }
    const std::map<TodaMono, S>& terms() const { return c_; }

    S constant_term() const {
        auto it = c_.find(TodaMono{});
        return it == c_.end() ? S() : it->second;
    }

    /// Value under v_i = w_i = 0 for all i: just the constant term.
    S eval_all_vars_zero() const { return constant_term(); }

    void add_term(const TodaMono& m, const S& v) {
        if (v.is_zero()) return;
        auto it = c_.find(m);
        if (it == c_.end()) {
            c_[m] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    TodaPolyT& operator+=(const TodaPolyT& o) {
        for (const auto& [m, v] : o.c_) add_term(m, v);
        return *this;
    }
    TodaPolyT& operator-=(const TodaPolyT& o) {
        for (const auto& [m, v] : o.c_) add_term(m, -v);
        return *this;
    }
    TodaPolyT operator-() const {
        TodaPolyT r;
        for (const auto& [m, v] : c_) r.c_[m] = -v;
        return r;
    }
    friend TodaPolyT operator+(TodaPolyT a, const TodaPolyT& b) { return a += b; }
    friend TodaPolyT operator-(TodaPolyT a, const TodaPolyT& b) { return a -= b; }

    friend TodaPolyT operator*(const TodaPolyT& a, const TodaPolyT& b) {
        TodaPolyT r;
        for (const auto& [ma, va] : a.c_)
            for (const auto& [mb, vb] : b.c_) r.add_term(ma * mb, va * vb);
        return r;
    }
    TodaPolyT& operator*=(const TodaPolyT& o) { return *this = *this * o; }

    TodaPolyT scaled(const S& s) const {
        TodaPolyT r;
        for (const auto& [m, v] : c_) r.add_term(m, v * s);
        return r;
    }

    friend bool operator==(const TodaPolyT& a, const TodaPolyT& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TodaPolyT& a, const TodaPolyT& b) { return !(a == b); }
    friend bool operator<(const TodaPolyT& a, const TodaPolyT& b) { return a.c_ < b.c_; }

    /// The shift operator: every variable's lattice index moves by k.
    TodaPolyT ring_shift(int k) const {
        if (k == 0) return *this;
        TodaPolyT r;
        for (const auto& [m, v] : c_) r.c_[m.shifted(k)] = v;
        return r;
    }

    /// v_i -> shift_n(f, i), w_i -> shift_n(g, i), expanded exactly.
    LatticePoly substitute_initial(const LatticePoly& f, const LatticePoly& g) const {
        LatticePoly out;
        for (const auto& [m, coeff] : c_) {
            LatticePoly term = scalar_to_lattice(coeff);
            for (const auto& [var, e] : m.factors) {
                if (e < 0) throw std::domain_error("substitute_initial: negative exponent");
                LatticePoly base = (var.kind == TodaVar::V ? f : g).shift_n(var.shift);
                for (int i = 0; i < e; ++i) term *= base;
            }
            out += term;
        }
        return out;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, v] : c_) {
            std::string cs = scalar_str(v);
            bool neg = !cs.empty() && cs[0] == '-' && cs.find(' ') == std::string::npos;
            if (first) {
                if (neg) {
                    os << "-";
                    cs = cs.substr(1);
                }
            } else {
                os << (neg ? " - " : " + ");
                if (neg) cs = cs.substr(1);
            }
            first = false;
            bool wrap = cs.find(' ') != std::string::npos;
            if (m.is_constant()) {
                os << (wrap ? "(" + cs + ")" : cs);
            } else {
                if (cs != "1") os << (wrap ? "(" + cs + ")" : cs) << "*";
                os << m.str();
            }
        }
        return os.str();
    }

private:
    static LatticePoly scalar_to_lattice(const Rational& r) { return LatticePoly(r); }
    static LatticePoly scalar_to_lattice(const EpsScalar& s) { return LatticePoly(s); }
    static std::string scalar_str(const Rational& r) { return r.str(); }
    static std::string scalar_str(const EpsScalar& s) { return s.str(); }

    std::map<TodaMono, S> c_;
};

using TodaPoly = TodaPolyT<Rational>;

template <class S>
std::ostream& operator<<(std::ostream& os, const TodaPolyT<S>& p) {
    return os << p.str();
}

}  // namespace todatau
