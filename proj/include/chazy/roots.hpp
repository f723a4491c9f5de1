#pragma once

#include <vector>

#include "chazy/triple.hpp"

namespace chazy {

/// Monic polynomial of degree 2, 3 or 4. `coeffs` holds the coefficients
/// below the (implicit) leading 1, ordered from degree-1 down to the
/// constant term. Degree 2 appears for the sign-pair transform entries.
struct PolySpec {
    int degree = 0;
    std::vector<Complex> coeffs;
};

Complex poly_eval(const PolySpec& p, Complex z);
Complex poly_eval_derivative(const PolySpec& p, Complex z);

/// Max |coefficient| including the leading 1; scale for residual tolerances.
double poly_coeff_norm(const PolySpec& p);

/// Roots of z^2 + b z + c (cancellation-safe complex quadratic formula).
std::vector<Complex> solve_quadratic(Complex b, Complex c);

/// All three roots, with multiplicity. Cardano closed form, Newton polished.
std::vector<Complex> solve_cubic(const PolySpec& p);

/// All four roots, with multiplicity. Euler resolvent closed form, polished.
std::vector<Complex> solve_quartic(const PolySpec& p);

/// Dispatch on degree.
std::vector<Complex> solve_poly(const PolySpec& p);

/// Continuity-tracked choice of one root along a trajectory.
struct BranchState {
    int branch_index = 0;
    Complex current_root{0.0, 0.0};
    double last_x = 0.0;
};

/// Selects among `roots` the one nearest state.current_root (ties broken by
/// lexicographic (re, im) order). Throws BranchCollision when the two nearest
/// candidates nearly coincide while the root moved a comparable distance.
BranchState track_branch_roots(const BranchState& state, const std::vector<Complex>& roots,
                               double new_x);

/// As above, solving new_poly first.
BranchState track_branch(const BranchState& state, const PolySpec& new_poly, double new_x);

}  // namespace chazy
