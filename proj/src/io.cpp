#include "chazy/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "chazy/errors.hpp"

#include "json.hpp"

namespace chazy {

namespace {

constexpr const char* kTripleHeader = "x,P_re,P_im,Q_re,Q_im,R_re,R_im";
constexpr const char* kWHeader = "x,w1_re,w1_im,w2_re,w2_im,w3_re,w3_im";

std::string trimmed(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& text) {
    const std::string t = trimmed(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || end == nullptr || *end != '\0')
        throw ChazyError("malformed number '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const std::string t = trimmed(text);
    if (t.empty()) throw ChazyError("empty complex literal");
    if (t.back() != 'i' && t.back() != 'I') return {parse_double(t), 0.0};

    const std::string body = t.substr(0, t.size() - 1);
    // Split at the last +/- that is not an exponent sign and not leading.
    size_t split_pos = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split_pos = i;
            break;
        }
    }
    if (split_pos == std::string::npos) {
        // Pure imaginary: "2i", "-1.5i", "i".
        if (body.empty() || body == "+" || body == "-")
            return {0.0, body == "-" ? -1.0 : 1.0};
        return {0.0, parse_double(body)};
    }
    const double re = parse_double(body.substr(0, split_pos));
    std::string im = body.substr(split_pos);
    if (im == "+" || im == "-") im += "1";
    return {re, parse_double(im)};
}

std::string format_complex(Complex z) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

Rational parse_rational(const std::string& text) {
    const std::string t = trimmed(text);
    if (t.empty()) throw ChazyError("empty rational literal");

    const auto parts = split(t, '/');
    if (parts.size() == 2) {
        try {
            const long long num = std::stoll(trimmed(parts[0]));
            const long long den = std::stoll(trimmed(parts[1]));
            if (den == 0) throw ChazyError("rational denominator is zero");
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw ChazyError("malformed rational '" + text + "'");
        } catch (const std::out_of_range&) {
            throw ChazyError("rational out of range '" + text + "'");
        }
    }
    if (parts.size() != 1) throw ChazyError("malformed rational '" + text + "'");

    // Decimal literal, converted exactly (digits over a power of ten).
    std::string s = t;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    const auto dot = split(s, '.');
    if (dot.size() > 2 || s.empty()) throw ChazyError("malformed rational '" + text + "'");
    const std::string digits = dot[0] + (dot.size() == 2 ? dot[1] : "");
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ChazyError("malformed rational '" + text + "'");
    long long den = 1;
    if (dot.size() == 2)
        for (size_t i = 0; i < dot[1].size(); ++i) {
            if (den > 1000000000000000LL) throw ChazyError("rational has too many digits");
            den *= 10;
        }
    long long num = 0;
    for (char ch : digits) {
        if (num > 100000000000000000LL) throw ChazyError("rational has too many digits");
        num = num * 10 + (ch - '0');
    }
    return Rational(negative ? -num : num, den);
}

Parameter parse_parameter(const std::string& text) {
    const std::string t = trimmed(text);
    if (t == "inf") return Parameter::infinite();
    return Parameter::finite(parse_rational(t));
}

Triple parse_triple(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw ChazyError("expected three comma-separated complex values");
    return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

WState parse_wstate(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw ChazyError("expected three comma-separated complex values");
    return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

namespace {

template <class Row>
void write_csv(const std::string& path, const char* header,
               const std::vector<std::pair<double, Row>>& samples,
               std::array<Complex, 3> (*unpack)(const Row&)) {
    std::ofstream out(path);
    if (!out) throw ChazyError("cannot open '" + path + "' for writing");
    out << header << "\n";
    for (const auto& [x, row] : samples) {
        const auto z = unpack(row);
        out << fmt17(x);
        for (const Complex& c : z) out << ',' << fmt17(c.real()) << ',' << fmt17(c.imag());
        out << "\n";
    }
    if (!out) throw ChazyError("write failed for '" + path + "'");
}

template <class Row>
std::vector<std::pair<double, Row>> read_csv(const std::string& path, const char* header,
                                             Row (*pack)(const std::array<Complex, 3>&)) {
    std::ifstream in(path);
    if (!in) throw ChazyError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ChazyError("empty file '" + path + "'");
    if (trimmed(line) != header)
        throw ChazyError("unexpected CSV header in '" + path + "' (want \"" +
                         std::string(header) + "\")");
    std::vector<std::pair<double, Row>> samples;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 7)
            throw ChazyError(path + ":" + std::to_string(lineno) + ": expected 7 columns");
        std::array<double, 7> v{};
        for (size_t i = 0; i < 7; ++i) v[i] = parse_double(cols[i]);
        samples.emplace_back(v[0], pack({Complex(v[1], v[2]), Complex(v[3], v[4]),
                                         Complex(v[5], v[6])}));
    }
    if (samples.empty()) throw ChazyError("no samples in '" + path + "'");
    return samples;
}

std::array<Complex, 3> unpack_triple(const Triple& t) { return {t.P, t.Q, t.R}; }
std::array<Complex, 3> unpack_w(const WState& w) { return {w.w1, w.w2, w.w3}; }
Triple pack_triple(const std::array<Complex, 3>& z) { return {z[0], z[1], z[2]}; }
WState pack_w(const std::array<Complex, 3>& z) { return {z[0], z[1], z[2]}; }

}  // namespace

void write_triple_csv(const std::string& path, const TripleSamples& samples) {
    write_csv(path, kTripleHeader, samples, &unpack_triple);
}

TripleSamples read_triple_csv(const std::string& path) {
    return read_csv(path, kTripleHeader, &pack_triple);
}

void write_w_csv(const std::string& path, const WSamples& samples) {
    write_csv(path, kWHeader, samples, &unpack_w);
}

WSamples read_w_csv(const std::string& path) {
    return read_csv(path, kWHeader, &pack_w);
}

TripleSamples trajectory_samples(const Trajectory& traj) {
    TripleSamples out;
    out.reserve(traj.xs.size());
    for (size_t i = 0; i < traj.xs.size(); ++i) {
        const auto& y = traj.states[i];
        out.emplace_back(traj.xs[i], Triple{y[0], y[1], y[2]});
    }
    return out;
}

std::string audit_report_json(const AuditReport& report) {
    nlohmann::json j;
    j["entry"] = report.entry;
    j["variants"] = nlohmann::json::array();
    for (const auto& va : report.variants) {
        nlohmann::json jv;
        jv["name"] = va.name;
        jv["verdict"] = va.verdict;
        jv["branches"] = nlohmann::json::array();
        for (const auto& ba : va.branches) {
            jv["branches"].push_back({{"index", ba.index},
                                      {"trials", ba.trials},
                                      {"passes", ba.passes},
                                      {"failures", ba.failures},
                                      {"degenerate", ba.degenerate},
                                      {"worst_residual", ba.worst_residual}});
        }
        j["variants"].push_back(std::move(jv));
    }
    return j.dump(2);
}

void write_audit_report(const std::string& path, const AuditReport& report) {
    std::ofstream out(path);
    if (!out) throw ChazyError("cannot open '" + path + "' for writing");
    out << audit_report_json(report) << "\n";
    if (!out) throw ChazyError("write failed for '" + path + "'");
}

}  // namespace chazy
