// Command-line front end: integrate the first order systems, apply and audit
// the solution transforms, and run Darboux-Halphen lifts. See README.md.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chazy/halphen.hpp"
#include "chazy/io.hpp"
#include "chazy/log.hpp"
#include "chazy/verify.hpp"

namespace {

using namespace chazy;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
    double tol = 1e-10;
    double pass_threshold = 1e-6;
    int n_check = 200;
    std::uint64_t seed = 0;
    std::string format = "csv";
};

void add_run_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol", opt.tol, "integration tolerance")->capture_default_str();
    cmd->add_option("--pass-threshold", opt.pass_threshold, "residual pass threshold")
        ->capture_default_str();
    cmd->add_option("--n-check", opt.n_check, "checkpoints per verification")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    cmd->add_option("--format", opt.format, "trajectory output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void write_samples(const std::string& path, const TripleSamples& samples,
                   const std::string& format) {
    if (format == "csv") {
        write_triple_csv(path, samples);
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [x, t] : samples)
        rows.push_back({x, t.P.real(), t.P.imag(), t.Q.real(), t.Q.imag(), t.R.real(),
                        t.R.imag()});
    nlohmann::json j{{"header", {"x", "P_re", "P_im", "Q_re", "Q_im", "R_re", "R_im"}},
                     {"rows", rows}};
    std::ofstream out(path);
    if (!out) throw ChazyError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

void write_w_samples(const std::string& path, const WSamples& samples,
                     const std::string& format) {
    if (format == "csv") {
        write_w_csv(path, samples);
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [x, w] : samples)
        rows.push_back({x, w.w1.real(), w.w1.imag(), w.w2.real(), w.w2.imag(), w.w3.real(),
                        w.w3.imag()});
    nlohmann::json j{{"header", {"x", "w1_re", "w1_im", "w2_re", "w2_im", "w3_re", "w3_im"}},
                     {"rows", rows}};
    std::ofstream out(path);
    if (!out) throw ChazyError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

int trajectory_exit(const Trajectory& traj) {
    switch (traj.status) {
        case TrajStatus::completed:
            return kExitPass;
        case TrajStatus::singular:
            std::cerr << "integration stopped at a movable singularity near x = " << traj.x_stop
                      << "\n";
            return kExitNumerical;
        case TrajStatus::failed:
            std::cerr << "integration failed at x = " << traj.x_stop << ": " << traj.failure
                      << "\n";
            return kExitNumerical;
    }
    return kExitNumerical;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int cmd_catalog() {
    for (const auto& e : catalog()) {
        std::printf("%-4s %5s -> %-5s branches %d  variants:", e.id.c_str(),
                    e.source.str().c_str(), e.target.str().c_str(), e.branch_count);
        for (const auto& v : e.variants) std::printf(" %s", v.name.c_str());
        std::printf("\n");
    }
    return kExitPass;
}

int cmd_integrate(const Options& opt, const std::string& k_text, const std::string& ic_text,
                  double x0, double x1, const std::string& out_path) {
    const SystemSpec spec(parse_parameter(k_text));
    const Triple ic = parse_triple(ic_text);
    log_info("integrate k=" + spec.parameter.str() + " over [" + std::to_string(x0) + ", " +
             std::to_string(x1) + "]");
    const Trajectory traj = integrate_triple(spec, ic, x0, x1, opt.tol);
    write_samples(out_path, trajectory_samples(traj), opt.format);
    return trajectory_exit(traj);
}

int cmd_verify(const Options& opt, const std::string& k_text, const std::string& in_path) {
    const SystemSpec spec(parse_parameter(k_text));
    const TripleSamples samples = read_triple_csv(in_path);
    if (samples.size() < 2) {
        std::cerr << "trajectory has fewer than two samples\n";
        return kExitBadInput;
    }
    // Shooting check: each consecutive sample pair must lie on the claimed
    // flow (re-integration mismatch within the pass threshold).
    double worst = 0.0, worst_x = samples.front().first;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& [xa, ya] = samples[i];
        const auto& [xb, yb] = samples[i + 1];
        if (!(xb > xa)) {
            std::cerr << "sample abscissae not increasing at row " << i + 2 << "\n";
            return kExitBadInput;
        }
        const Trajectory leg = integrate_triple(spec, ya, xa, xb, opt.tol);
        if (!leg.completed()) return trajectory_exit(leg);
        const double mismatch = distance(sample_triple(leg, xb), yb) / (1.0 + max_abs(yb));
        if (mismatch > worst) {
            worst = mismatch;
            worst_x = xb;
        }
    }
    const bool pass = worst <= opt.pass_threshold;
    std::printf("verify k=%s: %s  (max step mismatch %.3e at x = %g over %zu steps)\n",
                spec.parameter.str().c_str(), pass ? "PASS" : "FAIL", worst, worst_x,
                samples.size() - 1);
    return pass ? kExitPass : kExitVerifyFail;
}

int cmd_transform(const Options& opt, const std::string& id, const std::string& variant,
                  int branch, const std::string& in_path, const std::string& out_path) {
    const TransformEntry& e = entry_by_id(id);
    const TripleSamples samples = read_triple_csv(in_path);
    TripleSamples mapped;
    mapped.reserve(samples.size());
    BranchState bs{branch, Complex(0.0, 0.0), 0.0};
    for (size_t i = 0; i < samples.size(); ++i) {
        try {
            mapped.emplace_back(samples[i].first,
                                map_point(e, variant, samples[i].second, bs, samples[i].first,
                                          i == 0));
        } catch (const DegenerateInput& err) {
            std::cerr << e.id << " degenerate at x = " << samples[i].first << ": " << err.what()
                      << "\n";
            return kExitNumerical;
        } catch (const BranchCollision& err) {
            std::cerr << e.id << ": " << err.what() << "\n";
            return kExitNumerical;
        }
    }
    write_samples(out_path, mapped, opt.format);
    return kExitPass;
}

int cmd_compose(const Options& opt, const std::string& ids_text, const std::string& branches_text,
                const std::string& in_path, const std::string& out_path) {
    std::vector<int> branches;
    if (!branches_text.empty())
        for (const auto& b : split_list(branches_text)) branches.push_back(std::stoi(b));
    const CompositeTransform chain = compose(split_list(ids_text), branches);

    const TripleSamples samples = read_triple_csv(in_path);
    TripleSamples mapped;
    mapped.reserve(samples.size());
    std::vector<BranchState> bss(chain.stages.size());
    for (size_t s = 0; s < chain.stages.size(); ++s) bss[s].branch_index = chain.branches[s];
    for (size_t i = 0; i < samples.size(); ++i) {
        Triple t = samples[i].second;
        try {
            for (size_t s = 0; s < chain.stages.size(); ++s)
                t = map_point(*chain.stages[s], chain.variant_names[s], t, bss[s],
                              samples[i].first, i == 0);
        } catch (const ChazyError& err) {
            std::cerr << "compose degenerate at x = " << samples[i].first << ": " << err.what()
                      << "\n";
            return kExitNumerical;
        }
        mapped.emplace_back(samples[i].first, t);
    }
    write_samples(out_path, mapped, opt.format);
    return kExitPass;
}

int cmd_audit(const Options& opt, const std::string& id, int trials,
              const std::string& out_path) {
    const TransformEntry& e = entry_by_id(id);
    AuditConfig cfg;
    cfg.tol = opt.tol;
    cfg.threshold = opt.pass_threshold;
    cfg.n_check = opt.n_check;
    const AuditReport report = audit(e, trials, opt.seed, cfg);
    if (out_path.empty())
        std::cout << audit_report_json(report) << "\n";
    else
        write_audit_report(out_path, report);
    for (const auto& v : report.variants)
        log_info("audit " + report.entry + " variant " + v.name + ": " + v.verdict);
    return report.any_variant_passed() ? kExitPass : kExitVerifyFail;
}

int cmd_halphen(const Options& opt, const std::string& angles_text, const std::string& ic_text,
                double x0, double x1, const std::string& out_path,
                const std::string& weights_text, const std::string& triple_out,
                const std::string& verify_k) {
    const auto angle_parts = split_list(angles_text);
    if (angle_parts.size() != 3) throw ChazyError("--angles expects three rationals a,b,c");
    const AngleTriple angles{parse_rational(angle_parts[0]), parse_rational(angle_parts[1]),
                             parse_rational(angle_parts[2])};
    const WState ic = parse_wstate(ic_text);
    const Trajectory traj = integrate_w(angles, ic, x0, x1, opt.tol);

    WSamples samples;
    for (size_t i = 0; i < traj.xs.size(); ++i) {
        const auto& y = traj.states[i];
        samples.emplace_back(traj.xs[i], WState{y[0], y[1], y[2]});
    }
    if (!out_path.empty()) write_w_samples(out_path, samples, opt.format);

    if (!weights_text.empty()) {
        const auto wparts = split_list(weights_text);
        if (wparts.size() != 3) throw ChazyError("--weights expects three integers n1,n2,n3");
        const std::array<int, 3> weights{std::stoi(wparts[0]), std::stoi(wparts[1]),
                                         std::stoi(wparts[2])};
        TripleSamples lifted;
        double worst = 0.0;
        const bool check = !verify_k.empty();
        const SystemSpec spec(check ? parse_parameter(verify_k) : Parameter::infinite());
        for (const auto& [x, w] : samples) {
            const TripleJet tj = triple_jet_from_w(weights, angles, w);
            lifted.emplace_back(x, tj.value);
            if (check) worst = std::max(worst, residual(spec, tj.value, tj.deriv));
        }
        if (!triple_out.empty()) write_samples(triple_out, lifted, opt.format);
        if (check) {
            const bool pass = worst <= opt.pass_threshold;
            std::printf("halphen lift vs k=%s: %s  (max residual %.3e)\n",
                        spec.parameter.str().c_str(), pass ? "PASS" : "FAIL", worst);
            if (!pass) return kExitVerifyFail;
        }
    }
    return trajectory_exit(traj);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the generalised Chazy systems"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read key = value defaults from a config file");

    Options opt;

    auto* c_catalog = app.add_subcommand("catalog", "list the transform catalog");

    auto* c_int = app.add_subcommand("integrate", "integrate a first order system");
    std::string k_text, ic_text, out_path, in_path;
    double x0 = 0.0, x1 = 1.0;
    c_int->add_option("--k", k_text, "parameter (rational or inf)")->required();
    c_int->add_option("--ic", ic_text, "initial triple \"P,Q,R\" (complex a+bi each)")
        ->required();
    c_int->add_option("--x0", x0, "start")->required();
    c_int->add_option("--x1", x1, "end")->required();
    c_int->add_option("--out", out_path, "output trajectory file")->required();
    add_run_options(c_int, opt);

    auto* c_ver = app.add_subcommand("verify", "verify a trajectory file against a system");
    c_ver->add_option("--k", k_text, "parameter (rational or inf)")->required();
    c_ver->add_option("--in", in_path, "trajectory CSV")->required();
    add_run_options(c_ver, opt);

    auto* c_tra = app.add_subcommand("transform", "map a trajectory file through one entry");
    std::string id, variant = "statement", ids_text, branches_text;
    int branch = 0, trials = 100;
    c_tra->add_option("--id", id, "entry id T1..T19")->required();
    c_tra->add_option("--variant", variant, "variant name")->capture_default_str();
    c_tra->add_option("--branch", branch, "root branch index")->capture_default_str();
    c_tra->add_option("--in", in_path, "source trajectory CSV")->required();
    c_tra->add_option("--out", out_path, "output file")->required();
    add_run_options(c_tra, opt);

    auto* c_com = app.add_subcommand("compose", "map a trajectory through a transform chain");
    c_com->add_option("--ids", ids_text, "comma-separated entry ids, e.g. T14,T11,T6")
        ->required();
    c_com->add_option("--branches", branches_text, "per-stage branch indices, e.g. 0,0,0");
    c_com->add_option("--in", in_path, "source trajectory CSV")->required();
    c_com->add_option("--out", out_path, "output file")->required();
    add_run_options(c_com, opt);

    auto* c_aud = app.add_subcommand("audit", "seeded residual audit of one entry");
    c_aud->add_option("--id", id, "entry id T1..T19")->required();
    c_aud->add_option("--trials", trials, "number of random trials")->capture_default_str();
    c_aud->add_option("--out", out_path, "JSON report path (stdout when omitted)");
    add_run_options(c_aud, opt);

    auto* c_hal = app.add_subcommand("halphen", "integrate the Darboux-Halphen system");
    std::string angles_text, weights_text, triple_out, verify_k;
    c_hal->add_option("--angles", angles_text, "Schwarz angles a,b,c (rationals)")->required();
    c_hal->add_option("--ic", ic_text, "initial w-state \"w1,w2,w3\"")->required();
    c_hal->add_option("--x0", x0, "start")->required();
    c_hal->add_option("--x1", x1, "end")->required();
    c_hal->add_option("--out", out_path, "w-trajectory output file");
    c_hal->add_option("--weights", weights_text, "combination weights n1,n2,n3");
    c_hal->add_option("--triple-out", triple_out, "lifted triple output file");
    c_hal->add_option("--verify-k", verify_k, "check the lift against this parameter");
    add_run_options(c_hal, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        if (c_catalog->parsed()) return cmd_catalog();
        if (c_int->parsed()) return cmd_integrate(opt, k_text, ic_text, x0, x1, out_path);
        if (c_ver->parsed()) return cmd_verify(opt, k_text, in_path);
        if (c_tra->parsed()) return cmd_transform(opt, id, variant, branch, in_path, out_path);
        if (c_com->parsed()) return cmd_compose(opt, ids_text, branches_text, in_path, out_path);
        if (c_aud->parsed()) return cmd_audit(opt, id, trials, out_path);
        if (c_hal->parsed())
            return cmd_halphen(opt, angles_text, ic_text, x0, x1, out_path, weights_text,
                               triple_out, verify_k);
    } catch (const ChazyError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
