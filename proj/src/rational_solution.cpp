#include "chazy/rational_solution.hpp"

#include <cmath>

#include "chazy/errors.hpp"

namespace {
constexpr double kPoleThreshold = 1e-8;
constexpr double kResidueTol = 1e-9;
}  // namespace

namespace chazy {

RationalSolutionSpec::RationalSolutionSpec(const Parameter& p, Complex residue, Complex pole)
    : parameter(p), a(residue), c(pole) {
    // y = a/(x-c) solves the equation iff (6+a)(4a^2 + 24a + 36 - k^2) = 0
    // (only the 6+a factor survives in the infinite limit).
    const Complex six_plus = 6.0 + a;
    if (p.is_finite()) {
        const double k2 = to_double(p.k() * p.k());
        const Complex quad = 4.0 * a * a + 24.0 * a + (36.0 - k2);
        const double scale = 1.0 + std::abs(a) * std::abs(a) + std::abs(k2);
        if (std::abs(six_plus * quad) > kResidueTol * scale)
            throw InadmissibleResidue("residue " + std::to_string(a.real()) + "+" +
                                      std::to_string(a.imag()) + "i is not admissible for k = " +
                                      p.str());
    } else {
        if (std::abs(six_plus) > kResidueTol)
            throw InadmissibleResidue("only a = -6 is admissible in the Chazy limit");
    }
}

std::vector<Complex> admissible_residues(const Parameter& p) {
    std::vector<Complex> out{Complex(-6.0, 0.0)};
    if (p.is_finite()) {
        const double half_k = 0.5 * to_double(p.k());
        for (double s : {+1.0, -1.0}) {
            const Complex a(-3.0 + s * half_k, 0.0);
            if (std::abs(a - out.front()) > 1e-15) out.push_back(a);
        }
    }
    return out;
}

Triple rational_triple(const RationalSolutionSpec& rs, Complex x) {
    const Complex u = x - rs.c;
    if (std::abs(u) < kPoleThreshold) throw PoleHit(std::abs(u));
    const Complex m = rs.a * rs.a + 6.0 * rs.a;  // a^2 + 6a
    const Complex u2 = u * u;
    return {rs.a / u, m / u2, m * (rs.a + 3.0) / (u2 * u)};
}

Triple rational_triple_derivative(const RationalSolutionSpec& rs, Complex x) {
    const Complex u = x - rs.c;
    if (std::abs(u) < kPoleThreshold) throw PoleHit(std::abs(u));
    const Complex m = rs.a * rs.a + 6.0 * rs.a;
    const Complex u2 = u * u;
    return {-rs.a / u2, -2.0 * m / (u2 * u), -3.0 * m * (rs.a + 3.0) / (u2 * u2)};
}

}  // namespace chazy
