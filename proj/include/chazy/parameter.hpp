#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <string>

#include "chazy/errors.hpp"

namespace chazy {

using Complex = std::complex<double>;
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r);

/// The Chazy parameter: a positive exact rational k (k != 6), or infinity.
class Parameter {
  public:
    static Parameter finite(const Rational& k) {
        if (k <= 0) throw ChazyError("parameter k must be positive, got " + to_string(k));
        if (k == Rational(6)) throw PoleAtSix();
        return Parameter(true, k);
    }
    static Parameter finite(long long num, long long den = 1) {
        return finite(Rational(num, den));
    }
    static Parameter infinite() { return Parameter(false, Rational(0)); }

    bool is_finite() const { return finite_; }
    const Rational& k() const { return k_; }

    friend bool operator==(const Parameter& a, const Parameter& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.k_ == b.k_;
    }
    friend bool operator!=(const Parameter& a, const Parameter& b) { return !(a == b); }

    /// "2", "3/2" or "inf"
    std::string str() const { return finite_ ? to_string(k_) : "inf"; }

  private:
    Parameter(bool finite, Rational k) : finite_(finite), k_(std::move(k)) {}
    bool finite_;
    Rational k_;
};

/// k^2/(36-k^2) in exact rational arithmetic; -1 for the infinite parameter.
Rational chazy_coefficient_exact(const Parameter& p);

/// Same coefficient evaluated to a complex double.
Complex chazy_coefficient(const Parameter& p);

}  // namespace chazy
