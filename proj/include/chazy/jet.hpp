#pragma once

#include <complex>

namespace chazy {

using Complex = std::complex<double>;

/// First-order jet (value and x-derivative). Arithmetic implements the exact
/// chain rule, so expressions evaluated on jets yield analytic derivatives
/// with no numerical differentiation.
struct Jet {
    Complex v{0.0, 0.0};
    Complex d{0.0, 0.0};

    Jet() = default;
    Jet(Complex value) : v(value) {}
    Jet(double value) : v(value) {}
    Jet(Complex value, Complex deriv) : v(value), d(deriv) {}

    friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d}; }
    friend Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d}; }
    friend Jet operator-(const Jet& a) { return {-a.v, -a.d}; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        return {a.v * b.v, a.d * b.v + a.v * b.d};
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        const Complex q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }
};

inline Jet pow2(const Jet& a) { return a * a; }
inline Jet pow3(const Jet& a) { return a * a * a; }

/// Second-order jet (value and first two x-derivatives). Only the polynomial
/// operations are needed.
struct Jet2 {
    Complex v{0.0, 0.0};
    Complex d{0.0, 0.0};
    Complex dd{0.0, 0.0};

    Jet2() = default;
    Jet2(Complex value) : v(value) {}
    Jet2(double value) : v(value) {}
    Jet2(Complex value, Complex d1, Complex d2) : v(value), d(d1), dd(d2) {}

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        return {a.v + b.v, a.d + b.d, a.dd + b.dd};
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        return {a.v - b.v, a.d - b.d, a.dd - b.dd};
    }
    friend Jet2 operator-(const Jet2& a) { return {-a.v, -a.d, -a.dd}; }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
    }
};

}  // namespace chazy
