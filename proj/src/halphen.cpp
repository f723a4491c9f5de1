#include "chazy/halphen.hpp"

#include <set>

#include "chazy/errors.hpp"
#include "chazy/jet.hpp"

namespace chazy {

namespace {

struct AnglesSq {
    double a2, b2, g2;
};

AnglesSq squares(const AngleTriple& a) {
    const double al = to_double(a.alpha), be = to_double(a.beta), ga = to_double(a.gamma);
    return {al * al, be * be, ga * ga};
}

}  // namespace

Complex tau_squared(const AngleTriple& angles, const WState& w) {
    const AnglesSq s = squares(angles);
    return tau_squared_t<Complex>(s.a2, s.b2, s.g2, {w.w1, w.w2, w.w3});
}

WState halphen_rhs(const AngleTriple& angles, const WState& w) {
    const AnglesSq s = squares(angles);
    const auto d = halphen_rhs_t<Complex>(s.a2, s.b2, s.g2, {w.w1, w.w2, w.w3});
    return {d[0], d[1], d[2]};
}

std::vector<CombinationRule> admissible_rules(const Parameter& p) {
    if (!p.is_finite()) throw ChazyError("admissible_rules requires a finite parameter");
    const Rational k = p.k();
    const Rational third(1, 3), half(1, 2), two_thirds(2, 3);
    const Rational inv_k = Rational(1) / k, two_k = Rational(2) / k, three_k = Rational(3) / k,
                   four_k = Rational(4) / k;

    struct Base {
        std::array<int, 3> n;
        std::array<Rational, 3> a;
    };
    const std::vector<Base> bases = {
        {{2, 2, 2}, {third, third, two_k}},   {{2, 2, 2}, {two_k, two_k, two_k}},
        {{1, 2, 3}, {inv_k, third, half}},    {{1, 2, 3}, {inv_k, two_k, half}},
        {{1, 2, 3}, {inv_k, third, three_k}}, {{1, 1, 4}, {inv_k, inv_k, four_k}},
        {{1, 1, 4}, {inv_k, inv_k, two_thirds}},
    };

    // Materialise every simultaneous permutation of (weights, angles) and
    // deduplicate exact repeats.
    using Key = std::array<std::pair<int, Rational>, 3>;
    std::set<Key> seen;
    std::vector<CombinationRule> rules;
    constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const Base& b : bases) {
        for (const auto& perm : perms) {
            Key key;
            for (int i = 0; i < 3; ++i) key[i] = {b.n[perm[i]], b.a[perm[i]]};
            if (!seen.insert(key).second) continue;
            CombinationRule r{{b.n[perm[0]], b.n[perm[1]], b.n[perm[2]]},
                              AngleTriple{b.a[perm[0]], b.a[perm[1]], b.a[perm[2]]},
                              p};
            rules.push_back(std::move(r));
        }
    }
    return rules;
}

namespace {

// w together with its first three x-derivatives, generated by evaluating the
// Halphen right-hand side on jets of increasing order (closed under the
// algebra; no numerical differentiation anywhere).
struct WJets {
    std::array<Complex, 3> w, d1, d2, d3;
};

WJets w_jets(const AngleTriple& angles, const WState& w) {
    const AnglesSq s = squares(angles);
    WJets out;
    out.w = {w.w1, w.w2, w.w3};

    const auto r1 = halphen_rhs_t<Complex>(s.a2, s.b2, s.g2, out.w);
    out.d1 = r1;

    std::array<Jet, 3> wj;
    for (int i = 0; i < 3; ++i) wj[i] = Jet(out.w[i], out.d1[i]);
    const auto r2 = halphen_rhs_t<Jet>(s.a2, s.b2, s.g2, wj);
    for (int i = 0; i < 3; ++i) out.d2[i] = r2[i].d;

    std::array<Jet2, 3> wj2;
    for (int i = 0; i < 3; ++i) wj2[i] = Jet2(out.w[i], out.d1[i], out.d2[i]);
    const auto r3 = halphen_rhs_t<Jet2>(s.a2, s.b2, s.g2, wj2);
    for (int i = 0; i < 3; ++i) out.d3[i] = r3[i].dd;

    return out;
}

}  // namespace

Triple triple_from_w(const CombinationRule& rule, const WState& w) {
    return triple_jet_from_w(rule, w).value;
}

TripleJet triple_jet_from_w(const CombinationRule& rule, const WState& w) {
    return triple_jet_from_w(rule.weights, rule.angles, w);
}

TripleJet triple_jet_from_w(const std::array<int, 3>& weights, const AngleTriple& angles,
                            const WState& w) {
    const WJets j = w_jets(angles, w);
    const double n1 = weights[0], n2 = weights[1], n3 = weights[2];
    auto comb = [&](const std::array<Complex, 3>& v) {
        return -(n1 * v[0] + n2 * v[1] + n3 * v[2]);
    };
    const Complex P = comb(j.w), P1 = comb(j.d1), P2 = comb(j.d2), P3 = comb(j.d3);

    const Complex Q = P * P - 6.0 * P1;
    const Complex Q1 = 2.0 * P * P1 - 6.0 * P2;
    const Complex Q2 = 2.0 * P1 * P1 + 2.0 * P * P2 - 6.0 * P3;
    const Complex R = P * Q - 1.5 * Q1;
    const Complex R1 = P1 * Q + P * Q1 - 1.5 * Q2;

    return {{P, Q, R}, {P1, Q1, R1}};
}

Trajectory integrate_w(const AngleTriple& angles, const WState& ic, double x0, double x1,
                       double tol) {
    const AnglesSq s = squares(angles);
    auto rhs = [s](const std::vector<Complex>& y, std::vector<Complex>& dy) {
        const auto d = halphen_rhs_t<Complex>(s.a2, s.b2, s.g2, {y[0], y[1], y[2]});
        dy[0] = d[0];
        dy[1] = d[1];
        dy[2] = d[2];
    };
    return integrate(rhs, {ic.w1, ic.w2, ic.w3}, x0, x1, tol);
}

WState sample_w(const Trajectory& traj, double x) {
    const auto y = sample(traj, x);
    return {y[0], y[1], y[2]};
}

}  // namespace chazy
