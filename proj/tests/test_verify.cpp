#include "doctest.h"

#include <cmath>

#include "chazy/io.hpp"
#include "chazy/rational_solution.hpp"
#include "chazy/verify.hpp"

using namespace chazy;

namespace {

Trajectory rational_run(const Parameter& p, Complex a, double x1 = 0.5, double tol = 1e-10) {
    const RationalSolutionSpec rs(p, a, Complex(-1.0));
    return integrate_triple(SystemSpec(p), rational_triple(rs, Complex(0.0)), 0.0, x1, tol);
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("closed-form rational solutions pass verify_points at 1e-12") {
    const Parameter p = Parameter::finite(2);
    const SystemSpec spec(p);
    const RationalSolutionSpec rs(p, Complex(-2.0), Complex(-1.0));
    const auto rep = verify_points(
        spec, [&](double x) { return rational_triple(rs, Complex(x)); },
        [&](double x) { return rational_triple_derivative(rs, Complex(x)); }, 0.0, 0.5, 200,
        1e-12);
    CHECK(rep.passed());
    CHECK(rep.samples_checked == 200);
}

TEST_CASE("integrated rational solution passes verify_trajectory") {
    const Trajectory traj = rational_run(Parameter::finite(2), Complex(-2.0));
    REQUIRE(traj.completed());
    const auto rep = verify_trajectory(SystemSpec(Parameter::finite(2)), traj, 200, 1e-7);
    CHECK(rep.passed());
    CHECK(rep.max_residual <= 1e-7);
}

TEST_CASE("constant zero trajectory has zero residual") {
    const SystemSpec spec(Parameter::finite(3));
    const Trajectory traj = integrate_triple(spec, Triple{}, 0.0, 1.0, 1e-10);
    const auto rep = verify_trajectory(spec, traj, 50, 1e-6);
    CHECK(rep.passed());
    CHECK(rep.max_residual == 0.0);
}

TEST_CASE("wrong parameter is detected") {
    const Trajectory traj = rational_run(Parameter::finite(2), Complex(-2.0));
    const auto rep = verify_trajectory(SystemSpec(Parameter::finite(3)), traj, 100, 1e-6);
    CHECK(rep.status == ReportStatus::fail);
    CHECK(rep.max_residual > 1e-3);
}

TEST_CASE("self-consistency at 100x the integration tolerance") {
    auto gen = trial_rng(51, 7);
    for (const Parameter& p :
         {Parameter::finite(2), Parameter::finite(9), Parameter::infinite()}) {
        const SystemSpec spec(p);
        for (int i = 0; i < 5; ++i) {
            const Triple ic = sample_audit_ic(gen);
            const double tol = 1e-10;
            const Trajectory traj = integrate_triple(spec, ic, 0.0, 0.5, tol);
            if (!traj.completed()) continue;
            const auto rep = verify_trajectory(spec, traj, 200, 100.0 * tol);
            CHECK(rep.passed());
        }
    }
}

TEST_CASE("transform_residual on exceptional rational inputs (T9, T3)") {
    const Trajectory k3src = rational_run(Parameter::finite(3), Complex(-4.5));
    REQUIRE(k3src.completed());
    const auto t9 = transform_residual(entry_by_id("T9"), "statement", 0, k3src, 100, 1e-6);
    CHECK(t9.passed());

    const Trajectory k2src = rational_run(Parameter::finite(2), Complex(-2.0));
    REQUIRE(k2src.completed());
    const auto proof = transform_residual(entry_by_id("T3"), "proof", 0, k2src, 100, 1e-6);
    CHECK(proof.passed());
    const auto stmt = transform_residual(entry_by_id("T3"), "statement", 0, k2src, 100, 1e-6);
    CHECK(stmt.status == ReportStatus::fail);
}

TEST_CASE("analytic and finite-difference image derivatives agree") {
    // Chain-rule guard: differentiate the mapped path of T13 numerically on
    // the dense output and compare against the jet derivative.
    const SystemSpec src(Parameter::finite(3));
    auto gen = trial_rng(52, 3);
    const Triple ic = sample_audit_ic(gen);
    const Trajectory traj = integrate_triple(src, ic, 0.0, 0.25, 1e-12);
    REQUIRE(traj.completed());

    const auto& e = entry_by_id("T13");
    const auto& var = e.variants.front();
    const double h = 1e-5;
    BranchState bs{1, Complex(0.0), 0.0};
    int compared = 0;
    for (int j = 0; j <= 20; ++j) {
        const double x = 0.05 + 0.15 * j / 20.0;
        const Triple t = sample_triple(traj, x);
        const auto roots = branch_roots(e, t.Q, t.R);
        bs = (j == 0) ? BranchState{1, roots[1], x} : track_branch_roots(bs, roots, x);

        const TripleJet out = apply_jet(e, var, {t, system_rhs(src, t)}, bs.current_root);

        auto mapped_at = [&](double xx) {
            const Triple tt = sample_triple(traj, xx);
            const auto rr = branch_roots(e, tt.Q, tt.R);
            const BranchState nb = track_branch_roots(bs, rr, xx);
            return apply(e, var.name, tt, nb.current_root,
                         aux_of(e, nb.current_root, tt.Q, tt.R));
        };
        const Triple plus = mapped_at(x + h), minus = mapped_at(x - h);
        const Triple fd{(plus.P - minus.P) / (2.0 * h), (plus.Q - minus.Q) / (2.0 * h),
                        (plus.R - minus.R) / (2.0 * h)};
        const double denom = 1.0 + max_abs(out.deriv);
        CHECK(distance(fd, out.deriv) / denom <= 1e-4);
        ++compared;
    }
    CHECK(compared == 21);
}

TEST_CASE("defining polynomial is conserved along an evolved root") {
    // Evolve the tracked root by integrating implicit_root_derivative (RK4 on
    // dense output) and never re-solving; |F| must stay small.
    const SystemSpec src(Parameter::finite(3));
    auto gen = trial_rng(53, 1);
    const Triple ic = sample_audit_ic(gen);
    const Trajectory traj = integrate_triple(src, ic, 0.0, 0.25, 1e-12);
    REQUIRE(traj.completed());

    const auto& e = entry_by_id("T10");
    const Triple t0 = sample_triple(traj, 0.0);
    Complex root = branch_roots(e, t0.Q, t0.R)[2];

    auto droot = [&](double x, Complex r) {
        const Triple t = sample_triple(traj, x);
        return implicit_root_derivative(e, t, system_rhs(src, t), r);
    };
    const int n = 200;
    const double h = 0.25 / n;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = j * h;
        const Complex k1 = droot(x, root);
        const Complex k2 = droot(x + h / 2.0, root + h / 2.0 * k1);
        const Complex k3 = droot(x + h / 2.0, root + h / 2.0 * k2);
        const Complex k4 = droot(x + h, root + h * k3);
        root += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Triple t = sample_triple(traj, (j + 1) * h);
        worst = std::max(worst, std::abs(poly_eval(defining_poly(e, t.Q, t.R), root)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("commutation examples") {
    // T1 at the degenerate (Q = R = 0) root: both sides are the same flow.
    const auto t1 = commutation_check(entry_by_id("T1"), "statement", 0,
                                      {Complex(0.8, 0.0), Complex(0.0), Complex(0.0)}, 0.0, 0.5,
                                      1e-10);
    CHECK(t1.passed());

    const auto t9 = commutation_check(entry_by_id("T9"), "statement", 0,
                                      {Complex(-4.5), Complex(-6.75), Complex(10.125)}, 0.0,
                                      0.25, 1e-10);
    CHECK(t9.passed());
    CHECK(t9.max_residual <= 1e-6);

    // Guarded degenerate path: T3 divides by R.
    const auto deg = commutation_check(entry_by_id("T3"), "proof", 0,
                                       {Complex(0.5), Complex(0.0), Complex(0.0)}, 0.0, 0.25,
                                       1e-10);
    CHECK(deg.status == ReportStatus::degenerate);
}

TEST_CASE("audit determinism and variant discrimination") {
    AuditConfig cfg;
    cfg.n_check = 60;
    const AuditReport a = audit(entry_by_id("T3"), 20, 42, cfg);
    const AuditReport b = audit(entry_by_id("T3"), 20, 42, cfg);
    CHECK(audit_report_json(a) == audit_report_json(b));

    int passing = 0;
    for (const auto& v : a.variants) {
        if (v.verdict == "pass") {
            ++passing;
            CHECK(v.name == "proof");
        }
        for (const auto& ba : v.branches)
            CHECK(ba.trials == ba.passes + ba.failures + ba.degenerate);
    }
    CHECK(passing == 1);

    const AuditReport t9 = audit(entry_by_id("T9"), 20, 42, cfg);
    CHECK(t9.variants.front().verdict == "pass");
    for (const auto& ba : t9.variants.front().branches) CHECK(ba.worst_residual <= 1e-8);
}

TEST_CASE("composite residual across a quadratic-entry chain") {
    // T5 then T13: k=2 -> 3 -> 3/2, every branch pair.
    const SystemSpec src(Parameter::finite(2));
    auto gen = trial_rng(54, 2);
    Trajectory traj;
    do {
        traj = integrate_triple(src, sample_audit_ic(gen), 0.0, 0.25, 1e-10);
    } while (!traj.completed());
    int checked = 0;
    for (int b5 = 0; b5 < 2; ++b5) {
        for (int b13 = 0; b13 < 3; ++b13) {
            const auto chain = compose({"T5", "T13"}, {b5, b13});
            const auto rep = composite_residual(chain, traj, 100, 1e-6);
            if (rep.status == ReportStatus::degenerate) continue;
            CHECK(rep.passed());
            ++checked;
        }
    }
    CHECK(checked >= 4);
}

}  // TEST_SUITE
