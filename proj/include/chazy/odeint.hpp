#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chazy/triple.hpp"

namespace chazy {

enum class TrajStatus { completed, singular, failed };

/// Dense output for one accepted step: the interpolant on [x0, x0+h] is
/// y_i(theta) = sum_j c[j][i] theta^j with theta = (x - x0)/h.
struct DenseStep {
    double x0 = 0.0;
    double h = 0.0;
    std::vector<Complex> c[5];
};

/// Integrator output: mesh samples, per-step interpolants and a status.
/// `x_stop` is the last covered point for singular/failed runs.
struct Trajectory {
    std::vector<double> xs;
    std::vector<std::vector<Complex>> states;
    std::vector<DenseStep> steps;
    TrajStatus status = TrajStatus::failed;
    double x_stop = 0.0;
    std::string failure;
    double tol = 0.0;

    double x_begin() const { return xs.front(); }
    double x_end() const { return xs.back(); }
    bool completed() const { return status == TrajStatus::completed; }
};

using RhsFn = std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>;

/// Adaptive Dormand-Prince 5(4) over a complex state along a real parameter.
/// Local error per step <= tol with the mixed norm tol*(1 + |y_i|). Stops with
/// status singular once the state max-norm exceeds 1e8; status failed on step
/// underflow (h < 1e-13) or non-finite state. Requires tol in [1e-14, 1e-2]
/// and x1 > x0.
Trajectory integrate(const RhsFn& rhs, std::vector<Complex> ic, double x0, double x1, double tol);

/// Dense-output state at x. Mesh points return the stored state exactly.
/// Throws OutOfRange outside the covered interval.
std::vector<Complex> sample(const Trajectory& traj, double x);

/// Analytic derivative of the dense interpolant at x.
std::vector<Complex> sample_derivative(const Trajectory& traj, double x);

// Triple-valued convenience wrappers.
struct SystemSpec;
Trajectory integrate_triple(const SystemSpec& spec, const Triple& ic, double x0, double x1,
                            double tol);
Triple sample_triple(const Trajectory& traj, double x);
Triple sample_triple_derivative(const Trajectory& traj, double x);

}  // namespace chazy
