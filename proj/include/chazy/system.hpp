#pragma once

#include <array>

#include "chazy/parameter.hpp"
#include "chazy/triple.hpp"

namespace chazy {

/// The first order system equivalent to the generalised Chazy equation:
///   P' = (P^2 - Q)/6,  Q' = (2/3)(PQ - R),  R' = PR + c Q^2
/// with c = k^2/(36-k^2) (c = -1 in the Chazy/Ramanujan limit).
struct SystemSpec {
    Parameter parameter;
    Complex c;

    explicit SystemSpec(const Parameter& p) : parameter(p), c(chazy_coefficient(p)) {}
};

template <class T>
std::array<T, 3> system_rhs_t(const Complex& c, const T& P, const T& Q, const T& R) {
    return {(P * P - Q) * (1.0 / 6.0), (P * Q - R) * (2.0 / 3.0), P * R + c * (Q * Q)};
}

inline Triple system_rhs(const SystemSpec& spec, const Triple& t) {
    auto d = system_rhs_t<Complex>(spec.c, t.P, t.Q, t.R);
    return {d[0], d[1], d[2]};
}

/// Max-norm of dt - rhs(t), each component normalised by 1 + |rhs component|.
double residual(const SystemSpec& spec, const Triple& t, const Triple& dt);

}  // namespace chazy
