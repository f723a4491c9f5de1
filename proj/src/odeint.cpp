#include "chazy/odeint.hpp"

#include <algorithm>
#include <cmath>

#include "chazy/errors.hpp"
#include "chazy/log.hpp"
#include "chazy/system.hpp"

namespace chazy {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer's dopri5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kBlowup = 1e8;
constexpr double kMinStep = 1e-13;
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
// The interpolant's derivative must track the field to a fixed multiple of
// tol (its truncation is one order below the step error, so the main
// controller alone cannot bound it).
constexpr double kDenseDerivCap = 20.0;

double max_abs(const std::vector<Complex>& y) {
    double m = 0.0;
    for (const Complex& z : y) m = std::max(m, std::abs(z));
    return m;
}

bool finite_state(const std::vector<Complex>& y) {
    for (const Complex& z : y)
        if (!is_finite(z)) return false;
    return true;
}

}  // namespace

Trajectory integrate(const RhsFn& rhs, std::vector<Complex> ic, double x0, double x1, double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-2))
        throw ChazyError("integration tolerance must lie in [1e-14, 1e-2]");
    if (!(x1 > x0)) throw ChazyError("integrate requires x1 > x0");

    const size_t n = ic.size();
    Trajectory traj;
    traj.tol = tol;
    traj.xs.push_back(x0);
    traj.states.push_back(ic);

    std::vector<Complex> y = std::move(ic);
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    if (!finite_state(y)) {
        traj.status = TrajStatus::failed;
        traj.failure = "non-finite initial state";
        traj.x_stop = x0;
        return traj;
    }
    if (max_abs(y) > kBlowup) {
        traj.status = TrajStatus::singular;
        traj.x_stop = x0;
        return traj;
    }

    double x = x0;
    rhs(y, k1);

    // Initial step: small fraction of the interval, limited by the rhs scale.
    double h = 0.01 * (x1 - x0);
    {
        const double dy = max_abs(y), df = max_abs(k1);
        if (df > 0.0) h = std::min(h, 0.01 * (1.0 + dy) / df);
    }

    double facold = 1e-4;
    bool rejected = false;
    while (x < x1) {
        h = std::min(h, x1 - x);
        if (h < kMinStep) {
            traj.status = TrajStatus::failed;
            traj.failure = "step size underflow";
            traj.x_stop = x;
            return traj;
        }

        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
        rhs(ytmp, k2);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(ytmp, k3);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(ytmp, k4);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(ytmp, k5);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] =
                y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(ytmp, k6);
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(ynew, k7);

        if (!finite_state(ynew) || !finite_state(k7)) {
            traj.status = TrajStatus::failed;
            traj.failure = "non-finite state";
            traj.x_stop = x;
            return traj;
        }

        // Mixed absolute/relative error norm with floor 1.
        double err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
            const double q = std::abs(e) / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        const double fac11 = std::pow(std::max(err, 1e-32), kExpo);
        if (err <= 1.0) {
            // Build the quartic interpolant in theta = (x' - x)/h.
            DenseStep ds;
            ds.x0 = x;
            ds.h = h;
            for (auto& cv : ds.c) cv.resize(n);
            for (size_t i = 0; i < n; ++i) {
                const Complex ydiff = ynew[i] - y[i];
                const Complex bspl = h * k1[i] - ydiff;
                const Complex r1 = y[i];
                const Complex r2 = ydiff;
                const Complex r3 = bspl;
                const Complex r4 = ydiff - h * k7[i] - bspl;
                const Complex r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                        d6 * k6[i] + d7 * k7[i]);
                ds.c[0][i] = r1;
                ds.c[1][i] = r2 + r3;
                ds.c[2][i] = r4 + r5 - r3;
                ds.c[3][i] = -r4 - 2.0 * r5;
                ds.c[4][i] = r5;
            }

            // Midpoint derivative-consistency test on the interpolant, with a
            // roundoff floor (recovering a slope from O(h) coefficient
            // differences costs eps*|y|/h).
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = ds.c[0][i] +
                          0.5 * (ds.c[1][i] +
                                 0.5 * (ds.c[2][i] + 0.5 * (ds.c[3][i] + 0.5 * ds.c[4][i])));
            rhs(ytmp, k2);
            bool deriv_ok = true;
            for (size_t i = 0; i < n && deriv_ok; ++i) {
                const Complex dmid = (ds.c[1][i] + ds.c[2][i] + 0.75 * ds.c[3][i] +
                                      0.5 * ds.c[4][i]) /
                                     h;
                const double allowed =
                    kDenseDerivCap * tol * (1.0 + std::abs(k2[i])) +
                    64.0 * 2.220446049250313e-16 * (1.0 + std::abs(y[i])) / h;
                const double dev = std::abs(dmid - k2[i]);
                if (!std::isfinite(dev) || dev > allowed) deriv_ok = false;
            }
            if (!deriv_ok) {
                h *= 0.5;
                rejected = true;
                continue;
            }
            traj.steps.push_back(std::move(ds));

            x += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            traj.xs.push_back(x);
            traj.states.push_back(y);

            if (max_abs(y) > kBlowup) {
                traj.status = TrajStatus::singular;
                traj.x_stop = x;
                log_debug("integrate: singular truncation at x = " + std::to_string(x));
                return traj;
            }

            const double fac = std::clamp(fac11 / (std::pow(facold, kBeta) * kSafety), 0.1, 5.0);
            facold = std::max(err, 1e-4);
            double hnew = h / fac;
            if (rejected) hnew = std::min(hnew, h);  // no growth right after a rejection
            h = hnew;
            rejected = false;
        } else {
            h /= std::min(fac11 / kSafety, 5.0);
            rejected = true;
        }
    }

    traj.status = TrajStatus::completed;
    traj.x_stop = x;
    return traj;
}

namespace {

const DenseStep& locate_step(const Trajectory& traj, double x) {
    const auto it = std::upper_bound(
        traj.steps.begin(), traj.steps.end(), x,
        [](double v, const DenseStep& s) { return v < s.x0; });
    const size_t idx = (it == traj.steps.begin()) ? 0 : static_cast<size_t>(it - traj.steps.begin() - 1);
    return traj.steps[idx];
}

void check_range(const Trajectory& traj, double x) {
    if (traj.steps.empty() || x < traj.x_begin() || x > traj.x_end())
        throw OutOfRange("sample at x = " + std::to_string(x) + " outside [" +
                         std::to_string(traj.x_begin()) + ", " + std::to_string(traj.x_end()) +
                         "]");
}

}  // namespace

std::vector<Complex> sample(const Trajectory& traj, double x) {
    check_range(traj, x);
    // Mesh points return the stored state exactly.
    const auto mesh = std::lower_bound(traj.xs.begin(), traj.xs.end(), x);
    if (mesh != traj.xs.end() && *mesh == x)
        return traj.states[static_cast<size_t>(mesh - traj.xs.begin())];

    const DenseStep& s = locate_step(traj, x);
    const double th = (x - s.x0) / s.h;
    const size_t n = s.c[0].size();
    std::vector<Complex> y(n);
    for (size_t i = 0; i < n; ++i) {
        Complex v = s.c[4][i];
        for (int j = 3; j >= 0; --j) v = v * th + s.c[j][i];
        y[i] = v;
    }
    return y;
}

std::vector<Complex> sample_derivative(const Trajectory& traj, double x) {
    check_range(traj, x);
    const DenseStep& s = locate_step(traj, x);
    const double th = (x - s.x0) / s.h;
    const size_t n = s.c[0].size();
    std::vector<Complex> dy(n);
    for (size_t i = 0; i < n; ++i) {
        Complex v = 4.0 * s.c[4][i];
        for (int j = 3; j >= 1; --j) v = v * th + static_cast<double>(j) * s.c[j][i];
        dy[i] = v / s.h;
    }
    return dy;
}

Trajectory integrate_triple(const SystemSpec& spec, const Triple& ic, double x0, double x1,
                            double tol) {
    const Complex c = spec.c;
    auto rhs = [c](const std::vector<Complex>& y, std::vector<Complex>& dy) {
        const auto d = system_rhs_t<Complex>(c, y[0], y[1], y[2]);
        dy[0] = d[0];
        dy[1] = d[1];
        dy[2] = d[2];
    };
    return integrate(rhs, {ic.P, ic.Q, ic.R}, x0, x1, tol);
}

Triple sample_triple(const Trajectory& traj, double x) {
    const auto y = sample(traj, x);
    return {y[0], y[1], y[2]};
}

Triple sample_triple_derivative(const Trajectory& traj, double x) {
    const auto dy = sample_derivative(traj, x);
    return {dy[0], dy[1], dy[2]};
}

}  // namespace chazy
