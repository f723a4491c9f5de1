#include "chazy/parameter.hpp"

namespace chazy {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational chazy_coefficient_exact(const Parameter& p) {
    if (!p.is_finite()) return Rational(-1);
    const Rational k2 = p.k() * p.k();
    return k2 / (Rational(36) - k2);  // k != 6 guaranteed by construction
}

Complex chazy_coefficient(const Parameter& p) {
    return Complex(to_double(chazy_coefficient_exact(p)), 0.0);
}

}  // namespace chazy
