#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chazy/parameter.hpp"
#include "chazy/triple.hpp"
#include "chazy/verify.hpp"

namespace chazy {

/// Parse `a`, `a+bi` or `a-bi` with decimal a, b (e.g. "-2.0+0.5i").
/// Throws ChazyError on malformed input.
Complex parse_complex(const std::string& text);

/// Round-trip safe formatting (17 significant digits), `a+bi` form.
std::string format_complex(Complex z);

/// Parse "7", "-3/2" or "0.75" into an exact rational.
Rational parse_rational(const std::string& text);

/// Parse "7", "3/2", "0.75" (decimals become exact fractions) or "inf".
Parameter parse_parameter(const std::string& text);

/// Parse "a,b,c" of complex literals.
Triple parse_triple(const std::string& text);
WState parse_wstate(const std::string& text);

using TripleSamples = std::vector<std::pair<double, Triple>>;
using WSamples = std::vector<std::pair<double, WState>>;

// CSV schema: header "x,P_re,P_im,Q_re,Q_im,R_re,R_im", one row per sample,
// 17 significant digits so a written file re-reads bit-exactly.
void write_triple_csv(const std::string& path, const TripleSamples& samples);
TripleSamples read_triple_csv(const std::string& path);

// Halphen runs use "x,w1_re,w1_im,w2_re,w2_im,w3_re,w3_im".
void write_w_csv(const std::string& path, const WSamples& samples);
WSamples read_w_csv(const std::string& path);

TripleSamples trajectory_samples(const Trajectory& traj);

/// Audit report JSON: {entry, variants: [{name, branches: [...], verdict}]}.
std::string audit_report_json(const AuditReport& report);
void write_audit_report(const std::string& path, const AuditReport& report);

}  // namespace chazy
