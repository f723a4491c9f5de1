#include "doctest.h"

#include <cmath>

#include "chazy/rational_solution.hpp"
#include "chazy/system.hpp"
#include "chazy/verify.hpp"

using namespace chazy;

namespace {

// Independent plug-in oracle: evaluate the generalised Chazy left-hand side
//   y''' - 2yy'' + 3y'^2 - (4/(36-k^2))(6y' - y^2)^2
// directly from the closed-form derivatives of y = a/(x - c). Zero iff the
// residue is admissible; kept free of the Triple/system code it cross-checks.
Complex chazy_lhs(Complex a, Complex c, const Parameter& p, Complex x) {
    const Complex u = x - c;
    const Complex u2 = u * u;
    const Complex y = a / u;
    const Complex y1 = -a / u2;
    const Complex y2 = 2.0 * a / (u2 * u);
    const Complex y3 = -6.0 * a / (u2 * u2);
    Complex coeff(0.0, 0.0);
    if (p.is_finite()) {
        const double k = to_double(p.k());
        coeff = 4.0 / (36.0 - k * k);
    }
    const Complex g = 6.0 * y1 - y * y;
    return y3 - 2.0 * y * y2 + 3.0 * y1 * y1 - coeff * g * g;
}

const std::vector<Parameter> kTestParameters = {
    Parameter::finite(2),    Parameter::finite(3),    Parameter::finite(4),
    Parameter::finite(9),    Parameter::finite(18),   Parameter::finite(3, 2),
    Parameter::finite(2, 3), Parameter::infinite(),
};

}  // namespace

TEST_SUITE("core") {

TEST_CASE("plug-in oracle accepts exactly the admissible residues") {
    auto gen = trial_rng(11, 0);
    for (const Parameter& p : kTestParameters) {
        for (const Complex a : admissible_residues(p)) {
            for (int i = 0; i < 10; ++i) {
                const Complex x = 1.0 + sample_unit_disc(gen) * 0.5;
                CHECK(std::abs(chazy_lhs(a, Complex(0.0), p, x)) < 1e-10);
            }
        }
        // Perturbed residues must fail the oracle.
        for (const Complex a : admissible_residues(p)) {
            const Complex bad = a + 0.1;
            bool nonzero = std::abs(chazy_lhs(bad, Complex(0.0), p, Complex(1.3, 0.2))) > 1e-6;
            // a = -6 shifted can collide with another admissible residue (k = 2/3 or similar)
            bool collides = false;
            for (const Complex other : admissible_residues(p))
                if (std::abs(bad - other) < 1e-12) collides = true;
            CHECK((nonzero || collides));
        }
    }
}

TEST_CASE("chazy_coefficient frozen values") {
    CHECK(chazy_coefficient_exact(Parameter::finite(2)) == Rational(1, 8));
    CHECK(chazy_coefficient_exact(Parameter::finite(3)) == Rational(1, 3));
    CHECK(chazy_coefficient_exact(Parameter::finite(4)) == Rational(4, 5));
    CHECK(chazy_coefficient_exact(Parameter::finite(9)) == Rational(-9, 5));
    CHECK(chazy_coefficient_exact(Parameter::finite(18)) == Rational(-9, 8));
    CHECK(chazy_coefficient_exact(Parameter::finite(3, 2)) == Rational(1, 15));
    CHECK(chazy_coefficient_exact(Parameter::finite(2, 3)) == Rational(1, 80));
    CHECK(chazy_coefficient_exact(Parameter::infinite()) == Rational(-1));
    CHECK(chazy_coefficient(Parameter::infinite()) == Complex(-1.0, 0.0));
}

TEST_CASE("chazy_coefficient approaches -1 for large k") {
    const Complex c = chazy_coefficient(Parameter::finite(1000000));
    CHECK(std::abs(c - Complex(-1.0, 0.0)) < 1e-10);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Parameter::finite(6), PoleAtSix);
    CHECK_THROWS_AS(Parameter::finite(0), ChazyError);
    CHECK_THROWS_AS(Parameter::finite(-2), ChazyError);
    CHECK(Parameter::finite(3, 2) == Parameter::finite(6, 4));
    CHECK(Parameter::finite(2) != Parameter::finite(3));
    CHECK(Parameter::infinite() == Parameter::infinite());
    CHECK(Parameter::finite(2) != Parameter::infinite());
    CHECK(Parameter::finite(3, 2).str() == "3/2");
    CHECK(Parameter::infinite().str() == "inf");
}

TEST_CASE("system_rhs examples") {
    const SystemSpec ram(Parameter::infinite());
    const Triple zero = system_rhs(ram, {Complex(0.0), Complex(0.0), Complex(0.0)});
    CHECK(max_abs(zero) == 0.0);

    const SystemSpec k2(Parameter::finite(2));
    const Triple d = system_rhs(k2, {Complex(-2.0), Complex(-8.0), Complex(-8.0)});
    CHECK(std::abs(d.P - Complex(2.0)) < 1e-14);
    CHECK(std::abs(d.Q - Complex(16.0)) < 1e-14);
    CHECK(std::abs(d.R - Complex(24.0)) < 1e-14);

    const Triple dc = system_rhs(ram, {Complex(-6.0), Complex(0.0), Complex(0.0)});
    CHECK(std::abs(dc.P - Complex(6.0)) < 1e-14);
    CHECK(std::abs(dc.Q) < 1e-14);
    CHECK(std::abs(dc.R) < 1e-14);
}

TEST_CASE("system_rhs scaling weights (2,3,4)") {
    auto gen = trial_rng(12, 0);
    const SystemSpec spec(Parameter::finite(9));
    for (int i = 0; i < 50; ++i) {
        const Triple t{sample_unit_disc(gen), sample_unit_disc(gen), sample_unit_disc(gen)};
        const Complex s = sample_unit_disc(gen) + Complex(1.5, 0.0);
        const Complex s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
        const Triple scaled{s * t.P, s2 * t.Q, s3 * t.R};
        const Triple d = system_rhs(spec, t);
        const Triple ds = system_rhs(spec, scaled);
        CHECK(std::abs(ds.P - s2 * d.P) < 1e-12);
        CHECK(std::abs(ds.Q - s3 * d.Q) < 1e-12);
        CHECK(std::abs(ds.R - s4 * d.R) < 1e-12);
    }
}

TEST_CASE("residual examples") {
    const SystemSpec ram(Parameter::infinite());
    const Triple zero{};
    CHECK(residual(ram, zero, zero) == 0.0);

    const Triple t{Complex(-6.0), Complex(0.0), Complex(0.0)};
    CHECK(residual(ram, t, {Complex(6.0), Complex(0.0), Complex(0.0)}) == 0.0);
    CHECK(residual(ram, t, zero) == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("rational_triple frozen examples") {
    // a = -6 works for every parameter.
    for (const Parameter& p : kTestParameters) {
        const RationalSolutionSpec rs(p, Complex(-6.0), Complex(0.0));
        const Triple t = rational_triple(rs, Complex(1.0));
        CHECK(std::abs(t.P - Complex(-6.0)) < 1e-14);
        CHECK(std::abs(t.Q) < 1e-14);
        CHECK(std::abs(t.R) < 1e-14);
    }
    const RationalSolutionSpec rs2(Parameter::finite(2), Complex(-2.0), Complex(0.0));
    const Triple t2 = rational_triple(rs2, Complex(1.0));
    CHECK(std::abs(t2.P - Complex(-2.0)) < 1e-14);
    CHECK(std::abs(t2.Q - Complex(-8.0)) < 1e-14);
    CHECK(std::abs(t2.R - Complex(-8.0)) < 1e-14);

    const RationalSolutionSpec rs3(Parameter::finite(3), Complex(-4.5), Complex(0.0));
    const Triple t3 = rational_triple(rs3, Complex(1.0));
    CHECK(std::abs(t3.P - Complex(-4.5)) < 1e-14);
    CHECK(std::abs(t3.Q - Complex(-27.0 / 4.0)) < 1e-14);
    CHECK(std::abs(t3.R - Complex(81.0 / 8.0)) < 1e-14);
}

TEST_CASE("rational_triple guards") {
    CHECK_THROWS_AS(RationalSolutionSpec(Parameter::finite(2), Complex(-2.5), Complex(0.0)),
                    InadmissibleResidue);
    CHECK_THROWS_AS(RationalSolutionSpec(Parameter::infinite(), Complex(-2.0), Complex(0.0)),
                    InadmissibleResidue);
    const RationalSolutionSpec rs(Parameter::finite(2), Complex(-2.0), Complex(0.5));
    CHECK_THROWS_AS(rational_triple(rs, Complex(0.5 + 1e-9)), PoleHit);
}

TEST_CASE("closed-form triples satisfy their systems at random points") {
    auto gen = trial_rng(13, 0);
    for (const Parameter& p : kTestParameters) {
        const SystemSpec spec(p);
        for (const Complex a : admissible_residues(p)) {
            const RationalSolutionSpec rs(p, a, Complex(-0.25, 0.1));
            for (int i = 0; i < 20; ++i) {
                const Complex x = 1.0 + 0.5 * sample_unit_disc(gen);
                const double r = residual(spec, rational_triple(rs, x),
                                          rational_triple_derivative(rs, x));
                CHECK(r <= 1e-12);
            }
        }
    }
}

}  // TEST_SUITE
