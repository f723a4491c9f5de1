#pragma once

#include <array>
#include <vector>

#include "chazy/odeint.hpp"
#include "chazy/parameter.hpp"
#include "chazy/triple.hpp"

namespace chazy {

/// Schwarz angles (alpha, beta, gamma), exact nonnegative rationals.
struct AngleTriple {
    Rational alpha{0};
    Rational beta{0};
    Rational gamma{0};

    friend bool operator==(const AngleTriple& a, const AngleTriple& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma;
    }
};

/// One admissible row: y = -(n1 w1 + n2 w2 + n3 w3) solves the system with
/// the given parameter when the Halphen flow runs with these angles.
struct CombinationRule {
    std::array<int, 3> weights{};
    AngleTriple angles;
    Parameter parameter;
};

/// tau^2 = a^2 (w1-w2)(w3-w1) + b^2 (w2-w3)(w1-w2) + g^2 (w3-w1)(w2-w3),
/// generic over jets so derivatives stay algebraic.
template <class T>
T tau_squared_t(double a2, double b2, double g2, const std::array<T, 3>& w) {
    return T(a2) * (w[0] - w[1]) * (w[2] - w[0]) + T(b2) * (w[1] - w[2]) * (w[0] - w[1]) +
           T(g2) * (w[2] - w[0]) * (w[1] - w[2]);
}

template <class T>
std::array<T, 3> halphen_rhs_t(double a2, double b2, double g2, const std::array<T, 3>& w) {
    const T t = tau_squared_t(a2, b2, g2, w);
    return {w[1] * w[2] - w[0] * (w[1] + w[2]) + t, w[2] * w[0] - w[1] * (w[2] + w[0]) + t,
            w[0] * w[1] - w[2] * (w[0] + w[1]) + t};
}

Complex tau_squared(const AngleTriple& angles, const WState& w);
WState halphen_rhs(const AngleTriple& angles, const WState& w);

/// Every stated (weights, angles) row instantiated at k, with all simultaneous
/// permutations of weights and angles materialised and deduplicated.
std::vector<CombinationRule> admissible_rules(const Parameter& p);

/// Lift a w-state to a triple through P = -n.w, Q = P^2 - 6P',
/// R = PQ - (3/2)Q'; the needed P', P'' come from the Halphen algebra.
Triple triple_from_w(const CombinationRule& rule, const WState& w);

/// Lift with the triple's x-derivative as well (uses w''' analytically).
TripleJet triple_jet_from_w(const CombinationRule& rule, const WState& w);
TripleJet triple_jet_from_w(const std::array<int, 3>& weights, const AngleTriple& angles,
                            const WState& w);

/// Integrate the Halphen system. tol > 0 required; errors surface as the
/// trajectory status (see odeint).
Trajectory integrate_w(const AngleTriple& angles, const WState& ic, double x0, double x1,
                       double tol);

WState sample_w(const Trajectory& traj, double x);

}  // namespace chazy
