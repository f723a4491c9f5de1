#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chazy/odeint.hpp"
#include "chazy/system.hpp"
#include "chazy/transforms.hpp"

namespace chazy {

enum class ReportStatus { pass, fail, degenerate };

struct ResidualReport {
    double max_residual = 0.0;
    double argmax_x = 0.0;
    int samples_checked = 0;
    ReportStatus status = ReportStatus::fail;
    std::string reason;  // set for degenerate reports

    bool passed() const { return status == ReportStatus::pass; }
};

/// Pointwise residual check of an arbitrary (state, derivative) sampler
/// against a system, at n_check uniform points of [x0, x1].
ResidualReport verify_points(const SystemSpec& spec, const std::function<Triple(double)>& state,
                             const std::function<Triple(double)>& deriv, double x0, double x1,
                             int n_check, double threshold);

/// Residual of a trajectory's dense interpolant derivative against the
/// system. Degenerate status for trajectories that did not complete
/// (statistics still cover the reached interval). n_check >= 2.
ResidualReport verify_trajectory(const SystemSpec& spec, const Trajectory& traj, int n_check,
                                 double threshold = 1e-6);

/// Residual of the transformed trajectory against the entry's target system,
/// with the defining root branch-tracked along the flow and the image
/// derivative computed analytically through the map. Degenerate inputs and
/// branch collisions surface as degenerate status with the offending x.
ResidualReport transform_residual(const TransformEntry& e, const std::string& variant, int branch,
                                  const Trajectory& source_traj, int n_check,
                                  double threshold = 1e-6);

/// As above for a composed chain.
ResidualReport composite_residual(const CompositeTransform& chain, const Trajectory& source_traj,
                                  int n_check, double threshold = 1e-6);

/// Map a source trajectory pointwise at x (branch state threaded by caller).
/// Used by the CLI transform/compose subcommands.
Triple map_point(const TransformEntry& e, const std::string& variant, const Triple& t,
                 BranchState& bs, double x, bool first);

/// Flow-commutation restatement: integrate-then-map vs map-then-integrate,
/// reporting the sup max-norm distance between the two target-side paths.
ResidualReport commutation_check(const TransformEntry& e, const std::string& variant, int branch,
                                 const Triple& ic, double x0, double x1, double tol,
                                 int n_check = 200, double threshold = 1e-6);

struct BranchAudit {
    int index = 0;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    int degenerate = 0;
    double worst_residual = 0.0;
};

struct VariantAudit {
    std::string name;
    std::vector<BranchAudit> branches;
    std::string verdict;  // "pass", "fail" or "inconclusive"
};

struct AuditReport {
    std::string entry;
    std::vector<VariantAudit> variants;

    bool any_variant_passed() const;
};

struct AuditConfig {
    double tol = 1e-10;
    double threshold = 1e-6;
    int n_check = 200;
    double interval = 0.25;
};

/// Seeded residual audit of one entry: `trials` random source trajectories,
/// every variant and branch. A variant passes iff >= 95% of non-degenerate
/// trials pass on every branch; more than 20% degenerate trials on a branch
/// makes the verdict inconclusive.
AuditReport audit(const TransformEntry& e, int trials, std::uint64_t seed,
                  const AuditConfig& cfg = {});

// Deterministic sampling helpers (shared by audit and the test suites; the
// standard distributions are implementation-defined, these are not).
double uniform01(std::mt19937_64& gen);
Complex sample_unit_disc(std::mt19937_64& gen);
Complex sample_disc_min_modulus(std::mt19937_64& gen, double min_modulus);
Triple sample_audit_ic(std::mt19937_64& gen);
WState sample_w_ic(std::mt19937_64& gen);
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace chazy
