#pragma once

#include <optional>

#include "todatau/eps_scalar.hpp"
#include "todatau/lattice_poly.hpp"
#include "todatau/rational.hpp"
#include "todatau/toda_poly.hpp"

namespace todatau {

// Uniform coefficient-ring hooks used by the series templates. Every ring
// provides: default ctor (zero), +=, -, *, ==, is_zero(). The helpers below
// cover the rest.

inline Rational ring_one(const Rational*) { return Rational(1); }
inline EpsScalar ring_one(const EpsScalar*) { return EpsScalar(Rational(1)); }
inline LatticePoly ring_one(const LatticePoly*) { return LatticePoly(Rational(1)); }
template <class S>
TodaPolyT<S> ring_one(const TodaPolyT<S>*) {
    return TodaPolyT<S>(1L);
}

template <class R>
R ring_one() {
    return ring_one(static_cast<const R*>(nullptr));
}

inline Rational ring_scale(const Rational& x, const Rational& q) { return x * q; }
inline EpsScalar ring_scale(const EpsScalar& x, const Rational& q) { return x * EpsScalar(q); }
inline LatticePoly ring_scale(const LatticePoly& x, const Rational& q) { return x.scaled(EpsScalar(q)); }
template <class S>
TodaPolyT<S> ring_scale(const TodaPolyT<S>& x, const Rational& q) {
    return x.scaled(S(q));
}

/// Multiplicative inverse where the ring supports it for the given element.
inline std::optional<Rational> ring_invert(const Rational& x) {
    if (x.is_zero()) return std::nullopt;
    return x.inverse();
}
inline std::optional<EpsScalar> ring_invert(const EpsScalar& x) {
    if (x.terms().size() != 1) return std::nullopt;
    return x.inverse();
}
inline std::optional<LatticePoly> ring_invert(const LatticePoly& x) {
    if (!x.is_constant() || x.is_zero()) return std::nullopt;
    auto c = x.constant_term();
    if (c.terms().size() != 1) return std::nullopt;
    return LatticePoly(c.inverse());
}
template <class S>
std::optional<TodaPolyT<S>> ring_invert(const TodaPolyT<S>& x) {
    if (!x.is_constant() || x.is_zero()) return std::nullopt;
    auto inv = ring_invert(x.constant_term());
    if (!inv) return std::nullopt;
    return TodaPolyT<S>(*inv);
}

}  // namespace todatau
