#pragma once

#include "todatau/toda_poly.hpp"

namespace todatau {

/// Admissible derivation of the Toda ring: commutes with the shift operator,
/// so it is determined by its values on v_0 and w_0 and extends by equivariance
/// and the Leibniz rule.
template <class S>
struct AdmissibleDerivationT {
    TodaPolyT<S> image_v;  // D(v_0)
    TodaPolyT<S> image_w;  // D(w_0)

    TodaPolyT<S> image_of(TodaVar var) const {
        const TodaPolyT<S>& base = var.kind == TodaVar::V ? image_v : image_w;
        return base.ring_shift(var.shift);
    }

    TodaPolyT<S> operator()(const TodaPolyT<S>& p) const {
        TodaPolyT<S> out;
        for (const auto& [m, coeff] : p.terms()) {
            for (std::size_t i = 0; i < m.factors.size(); ++i) {
                const auto& [var, e] = m.factors[i];
                // d/dx of x^e * rest, times D(x)
                TodaMono rest;
                rest.factors = m.factors;
                if (e == 1)
                    rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
                else
                    rest.factors[i].second = e - 1;
                TodaPolyT<S> piece = TodaPolyT<S>::monomial(rest, coeff * S(Rational(e)));
                out += piece * image_of(var);
            }
        }
        return out;
    }
};

using AdmissibleDerivation = AdmissibleDerivationT<Rational>;

}  // namespace todatau
