#pragma once

#include <vector>

#include "chazy/parameter.hpp"
#include "chazy/triple.hpp"

namespace chazy {

/// Exact pole solution y = a/(x - c). Admissible residues satisfy
/// (6 + a)(4a^2 + 24a + 36 - k^2) = 0; for the infinite parameter only a = -6.
/// The induced triple is
///   P = a/u,  Q = (a^2 + 6a)/u^2,  R = (a^2 + 6a)(a + 3)/u^3,  u = x - c.
struct RationalSolutionSpec {
    Parameter parameter;
    Complex a;
    Complex c;

    /// Throws InadmissibleResidue if a fails the defining relation.
    RationalSolutionSpec(const Parameter& p, Complex residue, Complex pole);
};

/// All admissible residues for a parameter: {-6, -3 + k/2, -3 - k/2}, or {-6}
/// in the infinite case (duplicates removed for k giving coincident values).
std::vector<Complex> admissible_residues(const Parameter& p);

/// Triple of the rational solution at x. Throws PoleHit for |x - c| < 1e-8.
Triple rational_triple(const RationalSolutionSpec& rs, Complex x);

/// Analytic x-derivative of the triple at x.
Triple rational_triple_derivative(const RationalSolutionSpec& rs, Complex x);

}  // namespace chazy
