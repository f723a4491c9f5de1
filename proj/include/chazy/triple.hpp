#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace chazy {

using Complex = std::complex<double>;

/// State of the first order system at a point x.
struct Triple {
    Complex P{0.0, 0.0};
    Complex Q{0.0, 0.0};
    Complex R{0.0, 0.0};
};

/// State of the Darboux-Halphen system.
struct WState {
    Complex w1{0.0, 0.0};
    Complex w2{0.0, 0.0};
    Complex w3{0.0, 0.0};
};

/// A triple together with its x-derivative.
struct TripleJet {
    Triple value;
    Triple deriv;
};

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const Triple& t) {
    return is_finite(t.P) && is_finite(t.Q) && is_finite(t.R);
}

inline double max_abs(const Triple& t) {
    return std::max({std::abs(t.P), std::abs(t.Q), std::abs(t.R)});
}

/// Componentwise max-norm distance between two triples.
inline double distance(const Triple& a, const Triple& b) {
    return std::max({std::abs(a.P - b.P), std::abs(a.Q - b.Q), std::abs(a.R - b.R)});
}

}  // namespace chazy
