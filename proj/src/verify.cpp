#include "chazy/verify.hpp"

#include <algorithm>
#include <cmath>

#include "chazy/errors.hpp"
#include "chazy/log.hpp"

namespace chazy {

namespace {

void require_n_check(int n_check) {
    if (n_check < 2) throw ChazyError("n_check must be at least 2");
}

ResidualReport degenerate_report(double x, const std::string& reason) {
    ResidualReport r;
    r.status = ReportStatus::degenerate;
    r.argmax_x = x;
    r.reason = reason;
    return r;
}

}  // namespace

ResidualReport verify_points(const SystemSpec& spec, const std::function<Triple(double)>& state,
                             const std::function<Triple(double)>& deriv, double x0, double x1,
                             int n_check, double threshold) {
    require_n_check(n_check);
    ResidualReport rep;
    rep.argmax_x = x0;
    for (int j = 0; j < n_check; ++j) {
        const double x = x0 + (x1 - x0) * static_cast<double>(j) / (n_check - 1);
        const double r = residual(spec, state(x), deriv(x));
        ++rep.samples_checked;
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.argmax_x = x;
        }
    }
    rep.status = rep.max_residual <= threshold ? ReportStatus::pass : ReportStatus::fail;
    return rep;
}

ResidualReport verify_trajectory(const SystemSpec& spec, const Trajectory& traj, int n_check,
                                 double threshold) {
    require_n_check(n_check);
    if (traj.steps.empty())
        return degenerate_report(traj.x_stop, "trajectory covers no interval (" + traj.failure +
                                                  ")");
    ResidualReport rep = verify_points(
        spec, [&](double x) { return sample_triple(traj, x); },
        [&](double x) { return sample_triple_derivative(traj, x); }, traj.x_begin(), traj.x_end(),
        n_check, threshold);
    if (!traj.completed()) {
        rep.status = ReportStatus::degenerate;
        rep.reason = traj.status == TrajStatus::singular
                         ? "singular trajectory (stopped at x = " + std::to_string(traj.x_stop) +
                               ")"
                         : "failed trajectory: " + traj.failure;
    }
    return rep;
}

namespace {

struct Checkpointer {
    double x0, x1;
    int n;
    double at(int j) const { return x0 + (x1 - x0) * static_cast<double>(j) / (n - 1); }
};

}  // namespace

ResidualReport transform_residual(const TransformEntry& e, const std::string& variant, int branch,
                                  const Trajectory& source_traj, int n_check, double threshold) {
    require_n_check(n_check);
    if (branch < 0 || branch >= e.branch_count)
        throw ChazyError("branch " + std::to_string(branch) + " out of range for " + e.id);
    const TransformVariant& var = e.variant(variant);
    if (source_traj.steps.empty())
        return degenerate_report(source_traj.x_stop, "source trajectory covers no interval");

    const SystemSpec src(e.source), tgt(e.target);
    const Checkpointer cp{source_traj.x_begin(), source_traj.x_end(), n_check};
    const bool rooted = e.has_poly() || e.explicit_roots;

    ResidualReport rep;
    rep.argmax_x = cp.x0;
    BranchState bs;
    for (int j = 0; j < n_check; ++j) {
        const double x = cp.at(j);
        const Triple t = sample_triple(source_traj, x);
        const Triple dt = system_rhs(src, t);
        try {
            Complex root(0.0, 0.0);
            if (rooted) {
                const std::vector<Complex> roots = branch_roots(e, t.Q, t.R);
                if (j == 0)
                    bs = BranchState{branch, roots[static_cast<size_t>(branch)], x};
                else
                    bs = track_branch_roots(bs, roots, x);
                root = bs.current_root;
            }
            const TripleJet out = apply_jet(e, var, {t, dt}, root);
            const double r = residual(tgt, out.value, out.deriv);
            ++rep.samples_checked;
            if (r > rep.max_residual) {
                rep.max_residual = r;
                rep.argmax_x = x;
            }
        } catch (const ChazyError& err) {
            return degenerate_report(x, err.what());
        }
    }
    rep.status = rep.max_residual <= threshold ? ReportStatus::pass : ReportStatus::fail;
    if (!source_traj.completed() && rep.status == ReportStatus::pass) {
        rep.status = ReportStatus::degenerate;
        rep.reason = "source trajectory incomplete";
    }
    return rep;
}

ResidualReport composite_residual(const CompositeTransform& chain, const Trajectory& source_traj,
                                  int n_check, double threshold) {
    require_n_check(n_check);
    if (source_traj.steps.empty())
        return degenerate_report(source_traj.x_stop, "source trajectory covers no interval");

    const SystemSpec src(chain.source), tgt(chain.target);
    const Checkpointer cp{source_traj.x_begin(), source_traj.x_end(), n_check};
    const size_t n_stage = chain.stages.size();

    ResidualReport rep;
    rep.argmax_x = cp.x0;
    std::vector<BranchState> bss(n_stage);
    for (int j = 0; j < n_check; ++j) {
        const double x = cp.at(j);
        TripleJet jet;
        jet.value = sample_triple(source_traj, x);
        jet.deriv = system_rhs(src, jet.value);
        try {
            for (size_t s = 0; s < n_stage; ++s) {
                const TransformEntry& e = *chain.stages[s];
                const TransformVariant& var = e.variant(chain.variant_names[s]);
                Complex root(0.0, 0.0);
                if (e.has_poly() || e.explicit_roots) {
                    const std::vector<Complex> roots =
                        branch_roots(e, jet.value.Q, jet.value.R);
                    if (j == 0)
                        bss[s] =
                            BranchState{chain.branches[s],
                                        roots[static_cast<size_t>(chain.branches[s])], x};
                    else
                        bss[s] = track_branch_roots(bss[s], roots, x);
                    root = bss[s].current_root;
                }
                jet = apply_jet(e, var, jet, root);
            }
            const double r = residual(tgt, jet.value, jet.deriv);
            ++rep.samples_checked;
            if (r > rep.max_residual) {
                rep.max_residual = r;
                rep.argmax_x = x;
            }
        } catch (const ChazyError& err) {
            return degenerate_report(x, err.what());
        }
    }
    rep.status = rep.max_residual <= threshold ? ReportStatus::pass : ReportStatus::fail;
    return rep;
}

Triple map_point(const TransformEntry& e, const std::string& variant, const Triple& t,
                 BranchState& bs, double x, bool first) {
    Complex root(0.0, 0.0), aux(0.0, 0.0);
    if (e.has_poly() || e.explicit_roots) {
        const std::vector<Complex> roots = branch_roots(e, t.Q, t.R);
        if (first) {
            if (bs.branch_index < 0 || bs.branch_index >= e.branch_count)
                throw ChazyError("branch " + std::to_string(bs.branch_index) +
                                 " out of range for " + e.id);
            bs = BranchState{bs.branch_index, roots[static_cast<size_t>(bs.branch_index)], x};
        } else {
            bs = track_branch_roots(bs, roots, x);
        }
        root = bs.current_root;
        aux = aux_of(e, root, t.Q, t.R);
    }
    return apply(e, variant, t, root, aux);
}

namespace {

// Trajectory comparison amplifies integration error through the map's
// denominators; below this the trial is ill-conditioned, not informative.
constexpr double kConditioningFloor = 0.1;

void check_conditioning(const TransformEntry& e, const Triple& t) {
    if (e.guard_Q && std::abs(t.Q) < kConditioningFloor)
        throw DegenerateInput("Q (conditioning)", std::abs(t.Q));
    if (e.guard_R && std::abs(t.R) < kConditioningFloor)
        throw DegenerateInput("R (conditioning)", std::abs(t.R));
}

}  // namespace

ResidualReport commutation_check(const TransformEntry& e, const std::string& variant, int branch,
                                 const Triple& ic, double x0, double x1, double tol, int n_check,
                                 double threshold) {
    require_n_check(n_check);
    e.variant(variant);  // validate the name before integrating anything
    const SystemSpec src(e.source), tgt(e.target);

    const Trajectory straj = integrate_triple(src, ic, x0, x1, tol);
    if (!straj.completed())
        return degenerate_report(straj.x_stop, "source trajectory did not complete");

    Triple ic_mapped;
    BranchState bs{branch, Complex(0.0, 0.0), x0};
    try {
        check_conditioning(e, ic);
        ic_mapped = map_point(e, variant, ic, bs, x0, true);
    } catch (const ChazyError& err) {
        return degenerate_report(x0, err.what());
    }

    const Trajectory ttraj = integrate_triple(tgt, ic_mapped, x0, x1, tol);
    if (!ttraj.completed())
        return degenerate_report(ttraj.x_stop, "target trajectory did not complete");

    ResidualReport rep;
    rep.argmax_x = x0;
    for (int j = 0; j < n_check; ++j) {
        const double x = x0 + (x1 - x0) * static_cast<double>(j) / (n_check - 1);
        try {
            const Triple t = sample_triple(straj, x);
            check_conditioning(e, t);
            const Triple a = map_point(e, variant, t, bs, x, j == 0);
            const Triple b = sample_triple(ttraj, x);
            const double d = distance(a, b);
            ++rep.samples_checked;
            if (d > rep.max_residual) {
                rep.max_residual = d;
                rep.argmax_x = x;
            }
        } catch (const ChazyError& err) {
            return degenerate_report(x, err.what());
        }
    }
    rep.status = rep.max_residual <= threshold ? ReportStatus::pass : ReportStatus::fail;
    return rep;
}

bool AuditReport::any_variant_passed() const {
    return std::any_of(variants.begin(), variants.end(),
                       [](const VariantAudit& v) { return v.verdict == "pass"; });
}

// ---- deterministic sampling -------------------------------------------------

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Complex sample_unit_disc(std::mt19937_64& gen) {
    while (true) {
        const double re = 2.0 * uniform01(gen) - 1.0;
        const double im = 2.0 * uniform01(gen) - 1.0;
        if (re * re + im * im <= 1.0) return {re, im};
    }
}

Complex sample_disc_min_modulus(std::mt19937_64& gen, double min_modulus) {
    while (true) {
        const Complex z = sample_unit_disc(gen);
        if (std::abs(z) >= min_modulus) return z;
    }
}

Triple sample_audit_ic(std::mt19937_64& gen) {
    // |Q| and |R| stay away from the map denominators.
    return {sample_unit_disc(gen), sample_disc_min_modulus(gen, 0.1),
            sample_disc_min_modulus(gen, 0.1)};
}

WState sample_w_ic(std::mt19937_64& gen) {
    while (true) {
        const WState w{sample_unit_disc(gen), sample_unit_disc(gen), sample_unit_disc(gen)};
        const double sep = std::min({std::abs(w.w1 - w.w2), std::abs(w.w2 - w.w3),
                                     std::abs(w.w3 - w.w1)});
        if (sep >= 0.05) return w;
    }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ull * (trial + 1)));
}

AuditReport audit(const TransformEntry& e, int trials, std::uint64_t seed,
                  const AuditConfig& cfg) {
    if (trials < 1) throw ChazyError("audit requires at least one trial");
    const SystemSpec src(e.source);

    AuditReport report;
    report.entry = e.id;
    for (const auto& v : e.variants) {
        VariantAudit va;
        va.name = v.name;
        va.branches.resize(static_cast<size_t>(e.branch_count));
        for (int b = 0; b < e.branch_count; ++b) va.branches[static_cast<size_t>(b)].index = b;
        report.variants.push_back(std::move(va));
    }

    for (int trial = 0; trial < trials; ++trial) {
        auto gen = trial_rng(seed, static_cast<std::uint64_t>(trial));
        const Triple ic = sample_audit_ic(gen);
        const Trajectory straj = integrate_triple(src, ic, 0.0, cfg.interval, cfg.tol);
        const bool source_ok =
            straj.completed() && verify_trajectory(src, straj, 50, cfg.threshold).passed();

        for (auto& va : report.variants) {
            for (auto& ba : va.branches) {
                ++ba.trials;
                if (!source_ok) {
                    ++ba.degenerate;
                    continue;
                }
                const ResidualReport r =
                    transform_residual(e, va.name, ba.index, straj, cfg.n_check, cfg.threshold);
                switch (r.status) {
                    case ReportStatus::pass:
                        ++ba.passes;
                        ba.worst_residual = std::max(ba.worst_residual, r.max_residual);
                        break;
                    case ReportStatus::fail:
                        ++ba.failures;
                        ba.worst_residual = std::max(ba.worst_residual, r.max_residual);
                        break;
                    case ReportStatus::degenerate:
                        ++ba.degenerate;
                        break;
                }
            }
        }
    }

    for (auto& va : report.variants) {
        bool all_pass = true, inconclusive = false;
        for (const auto& ba : va.branches) {
            const int nd = ba.trials - ba.degenerate;
            if (ba.degenerate > ba.trials / 5) {
                inconclusive = true;
                continue;
            }
            if (nd == 0 || ba.passes < 0.95 * nd) all_pass = false;
        }
        va.verdict = inconclusive ? "inconclusive" : (all_pass ? "pass" : "fail");
        log_debug("audit " + e.id + " variant " + va.name + ": " + va.verdict);
    }
    return report;
}

}  // namespace chazy
