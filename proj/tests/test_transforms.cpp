#include "doctest.h"

#include <cmath>

#include "chazy/errors.hpp"
#include "chazy/transforms.hpp"
#include "chazy/verify.hpp"

using namespace chazy;

TEST_SUITE("transforms") {

TEST_CASE("catalog shape") {
    const auto& cat = catalog();
    REQUIRE(cat.size() == 19);
    for (size_t i = 0; i < cat.size(); ++i)
        CHECK(cat[i].id == "T" + std::to_string(i + 1));

    // branch_count matches the defining polynomial degree (explicit-root
    // entries carry their own count), and variants share the polynomial.
    for (const auto& e : cat) {
        if (e.explicit_roots != nullptr) {
            CHECK(e.branch_count == 3);
        } else if (e.has_poly()) {
            const auto c = e.poly_value(Complex(0.3, 0.1), Complex(-0.2, 0.4));
            CHECK(static_cast<int>(c.size()) == e.branch_count);
        } else {
            CHECK(e.branch_count == 1);
        }
        CHECK(!e.variants.empty());
    }

    CHECK(entry_by_id("T7").source == Parameter::finite(2, 3));
    CHECK(entry_by_id("T7").target == Parameter::finite(2));
    CHECK(entry_by_id("T19").source == Parameter::finite(18));
    CHECK_THROWS_AS(entry_by_id("T20"), ChazyError);
}

TEST_CASE("T4 aux collapses at Q = 0") {
    const auto& e = entry_by_id("T4");
    const Complex mu(0.37, -0.21);
    const Complex nu = aux_of(e, mu, Complex(0.0), Complex(1.0));
    CHECK(std::abs(nu - (-4.0 / 3.0) * mu) < 1e-15);
}

TEST_CASE("T17 quartic collapses at Q = 0") {
    const auto& e = entry_by_id("T17");
    const Complex R(0.7, 0.3);
    const auto roots = branch_roots(e, Complex(0.0), R);
    REQUIRE(roots.size() == 4);
    bool has_zero = false;
    for (const Complex& r : roots) {
        if (std::abs(r) < 1e-12) {
            has_zero = true;
        } else {
            CHECK(std::abs(r * r * r - (8.0 / 15.0) * R) < 1e-12);
        }
    }
    CHECK(has_zero);
}

TEST_CASE("apply frozen examples") {
    // T9 maps the a = -9/2 rational k=3 triple to the a = -6 one.
    const Triple t9 = apply(entry_by_id("T9"), "statement",
                            {Complex(-4.5), Complex(-6.75), Complex(10.125)}, Complex(0.0));
    CHECK(std::abs(t9.P - Complex(-6.0)) < 1e-13);
    CHECK(std::abs(t9.Q) < 1e-13);
    CHECK(std::abs(t9.R) < 1e-13);

    // T1 at the degenerate root is the identity.
    const Triple t1 = apply(entry_by_id("T1"), "statement",
                            {Complex(2.5, 1.0), Complex(0.0), Complex(0.0)}, Complex(0.0));
    CHECK(t1.P == Complex(2.5, 1.0));
    CHECK(std::abs(t1.Q) == 0.0);
    CHECK(std::abs(t1.R) == 0.0);

    // T3 on the a = -2 rational k=2 triple: proof variant collapses to zero,
    // statement variant gives (-4, 0, 0).
    const Triple src{Complex(-2.0), Complex(-8.0), Complex(-8.0)};
    const Triple proof = apply(entry_by_id("T3"), "proof", src, Complex(0.0));
    CHECK(std::abs(proof.P) < 1e-10);
    CHECK(std::abs(proof.Q) < 1e-10);
    CHECK(std::abs(proof.R) < 1e-10);
    const Triple stmt = apply(entry_by_id("T3"), "statement", src, Complex(0.0));
    CHECK(std::abs(stmt.P - Complex(-4.0)) < 1e-10);
    CHECK(std::abs(stmt.Q) < 1e-10);
    CHECK(std::abs(stmt.R) < 1e-10);

    // T14 maps the a = -9/4 rational k=3/2 triple to the a = -3/2 k=3 one.
    const Triple t14 = apply(entry_by_id("T14"), "statement",
                             {Complex(-2.25), Complex(-135.0 / 16.0), Complex(-405.0 / 64.0)},
                             Complex(0.0));
    CHECK(std::abs(t14.P - Complex(-1.5)) < 1e-13);
    CHECK(std::abs(t14.Q - Complex(-6.75)) < 1e-13);
    CHECK(std::abs(t14.R - Complex(-10.125)) < 1e-13);
}

TEST_CASE("apply guards") {
    // T9 divides by Q.
    CHECK_THROWS_AS(apply(entry_by_id("T9"), "statement",
                          {Complex(1.0), Complex(1e-12), Complex(1.0)}, Complex(0.0)),
                    DegenerateInput);
    try {
        apply(entry_by_id("T9"), "statement", {Complex(1.0), Complex(0.0), Complex(1.0)},
              Complex(0.0));
        CHECK(false);
    } catch (const DegenerateInput& e) {
        CHECK(e.denominator == "Q");
    }

    // Root far from the defining polynomial is rejected.
    CHECK_THROWS_AS(apply(entry_by_id("T13"), "statement",
                          {Complex(0.2), Complex(0.5), Complex(0.8)}, Complex(5.0)),
                    InconsistentRoot);

    // Aux inconsistent with its relation is rejected.
    const auto& t4 = entry_by_id("T4");
    const Complex mu = branch_roots(t4, Complex(0.5), Complex(0.7))[0];
    CHECK_THROWS_AS(apply(t4, "statement", {Complex(0.1), Complex(0.5), Complex(0.7)}, mu,
                          Complex(99.0)),
                    InconsistentRoot);
}

TEST_CASE("implicit_root_derivative examples") {
    const auto& t1 = entry_by_id("T1");
    // Stationary coefficients give a stationary root.
    const Complex root = branch_roots(t1, Complex(0.8, 0.1), Complex(0.3, -0.2))[1];
    const Complex d = implicit_root_derivative(
        t1, {Complex(0.0), Complex(0.8, 0.1), Complex(0.3, -0.2)},
        {Complex(1.0), Complex(0.0), Complex(0.0)}, root);
    CHECK(std::abs(d) < 1e-14);

    // Triple root of the degenerate cubic.
    CHECK_THROWS_AS(implicit_root_derivative(t1, {Complex(1.0), Complex(0.0), Complex(0.0)},
                                             {Complex(0.0), Complex(0.0), Complex(0.0)},
                                             Complex(0.0)),
                    MultipleRoot);

    // T13 with Q = 0, Q' = 0: w' = (R'/12)/(3w^2), differentiated by hand.
    const auto& t13 = entry_by_id("T13");
    const Complex R(0.9, 0.4), dR(0.31, -0.12);
    const Complex w = branch_roots(t13, Complex(0.0), R)[2];
    const Complex dw = implicit_root_derivative(t13, {Complex(0.0), Complex(0.0), R},
                                                {Complex(0.0), Complex(0.0), dR}, w);
    CHECK(std::abs(dw - (dR / 12.0) / (3.0 * w * w)) < 1e-12);
}

TEST_CASE("T8 explicit roots satisfy the composite quartic") {
    auto gen = trial_rng(41, 0);
    const auto& t8 = entry_by_id("T8");
    for (int i = 0; i < 25; ++i) {
        const Complex Q = sample_disc_min_modulus(gen, 0.2);
        const Complex R = sample_disc_min_modulus(gen, 0.2);
        const PolySpec F = defining_poly(t8, Q, R);
        const auto roots = branch_roots(t8, Q, R);
        REQUIRE(roots.size() == 3);
        for (const Complex& mu : roots) CHECK(std::abs(poly_eval(F, mu)) < 1e-10);

        // The fourth quartic root is the identity branch Q^2/(80R), and the
        // map evaluated there reproduces the input triple.
        const Complex mu_id = Q * Q / (80.0 * R);
        CHECK(std::abs(poly_eval(F, mu_id)) < 1e-12);
        const Triple in{sample_unit_disc(gen), Q, R};
        const Triple out = apply(t8, "statement", in, mu_id);
        CHECK(distance(out, in) < 1e-11);
    }
}

TEST_CASE("aux values satisfy their own closure polynomials") {
    auto gen = trial_rng(42, 0);
    for (int i = 0; i < 25; ++i) {
        const Complex Q = sample_disc_min_modulus(gen, 0.2);
        const Complex R = sample_disc_min_modulus(gen, 0.2);

        for (const Complex mu : branch_roots(entry_by_id("T4"), Q, R)) {
            const Complex v = aux_of(entry_by_id("T4"), mu, Q, R);
            const Complex cl = v * v * v - Q * Q / (8.0 * R) * v * v - Q * Q * Q / (108.0 * R) -
                               2.0 / 27.0 * R;
            CHECK(std::abs(cl) < 1e-8);
        }
        for (const Complex mu : branch_roots(entry_by_id("T10"), Q, R)) {
            const Complex v = aux_of(entry_by_id("T10"), mu, Q, R);
            const Complex v2 = v * v;
            const Complex cl = v2 * v2 + R / Q * v2 * v - 3.0 / 64.0 * Q * Q -
                               9.0 / 64.0 * R * R / Q;
            CHECK(std::abs(cl) < 1e-8);
        }
        for (const Complex nu : branch_roots(entry_by_id("T15"), Q, R)) {
            const Complex l = aux_of(entry_by_id("T15"), nu, Q, R);
            const Complex cl = l * l * l - 4.0 / 5.0 * Q * Q / R * l * l - Q / 5.0 * l -
                               4.0 / 675.0 * Q * Q * Q / R - R / 135.0;
            CHECK(std::abs(cl) < 1e-8);
        }
        for (const Complex mu : branch_roots(entry_by_id("T17"), Q, R)) {
            const Complex l = aux_of(entry_by_id("T17"), mu, Q, R);
            const Complex l2 = l * l;
            const Complex cl = l2 * l2 - R / Q * l2 * l + 3.0 / 5.0 * Q * l2 - R / 15.0 * l +
                               R * R / (960.0 * Q) - 3.0 / 1600.0 * Q * Q;
            CHECK(std::abs(cl) < 1e-8);
        }
    }
}

TEST_CASE("compose validates parameter chaining") {
    const auto chain = compose({"T14", "T11", "T6"}, {0, 0, 0});
    CHECK(chain.source == Parameter::finite(3, 2));
    CHECK(chain.target == Parameter::finite(2, 3));
    CHECK(chain.stages.size() == 3);

    const auto single = compose({"T9"}, {});
    CHECK(single.source == Parameter::finite(3));
    CHECK(single.target == Parameter::finite(3));

    const auto two = compose({"T5", "T13"}, {1, 2});
    CHECK(two.source == Parameter::finite(2));
    CHECK(two.target == Parameter::finite(3, 2));

    CHECK_THROWS_AS(compose({"T9", "T5"}, {}), ParameterMismatch);
    CHECK_THROWS_AS(compose({"T13", "T13"}, {}), ParameterMismatch);
    CHECK_THROWS_AS(compose({"T9"}, {5}), ChazyError);
}

}  // TEST_SUITE
