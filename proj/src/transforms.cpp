#include "chazy/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "chazy/errors.hpp"

namespace chazy {

namespace {

template <class T>
T p2(const T& a) {
    return a * a;
}
template <class T>
T p3(const T& a) {
    return a * a * a;
}
template <class T>
T p4(const T& a) {
    return p2(p2(a));
}
template <class T>
T p6(const T& a) {
    return p2(p3(a));
}

void check_guard(const char* name, const Complex& v) {
    const double m = std::abs(v);
    if (m < kDegeneracyThreshold) throw DegenerateInput(name, m);
}

// ---- defining polynomials (monic, coefficients descending below the lead) --

template <class T>
std::vector<T> poly_T1(const T& Q, const T& R) {
    return {T(0.0), Q * (-3.0 / 4.0), R * (1.0 / 4.0)};
}
template <class T>
std::vector<T> poly_T2(const T& Q, const T& R) {
    return {T(0.0), Q * (-2.0 / 3.0), R * (8.0 / 27.0), p2(Q) * (-1.0 / 27.0)};
}
template <class T>
std::vector<T> poly_T4(const T& Q, const T& R) {
    return {T(0.0), Q * (3.0 / 32.0), R * (1.0 / 32.0)};
}
template <class T>
std::vector<T> poly_T5(const T& Q, const T& R) {
    return {-(R / Q), Q * (-1.0 / 32.0)};
}
template <class T>
std::vector<T> poly_T6(const T& Q, const T& R) {
    return {T(0.0), Q * (1.0 / 12.0), R * (1.0 / 27.0), p2(Q) * (-1.0 / 1728.0)};
}
template <class T>
std::vector<T> poly_T8(const T& Q, const T& R) {
    // T6's quartic with (Q, R) replaced by their T7 image.
    const T Qt = Q * (4.0 / 5.0) - p4(Q) / (p2(R) * 800.0);
    const T Rt = R * (4.0 / 5.0) - p3(Q) / (R * 40.0) - p6(Q) / (p3(R) * 64000.0);
    return {T(0.0), Qt * (1.0 / 12.0), Rt * (1.0 / 27.0), p2(Qt) * (-1.0 / 1728.0)};
}
template <class T>
std::vector<T> poly_T10(const T& Q, const T& R) {
    return {T(0.0), Q * (2.0 / 9.0), R * (8.0 / 81.0), p2(Q) * (-1.0 / 243.0)};
}
template <class T>
std::vector<T> poly_T13(const T& Q, const T& R) {
    return {T(0.0), Q * (1.0 / 4.0), R * (-1.0 / 12.0)};
}
template <class T>
std::vector<T> poly_T15(const T& Q, const T& R) {
    return {T(0.0), Q * (3.0 / 5.0), R * (-1.0 / 5.0)};
}
template <class T>
std::vector<T> poly_T16(const T& Q, const T& R) {
    return {R / Q, Q * (-1.0 / 5.0)};
}
template <class T>
std::vector<T> poly_T17(const T& Q, const T& R) {
    return {T(0.0), Q * (-6.0 / 5.0), R * (-8.0 / 15.0), p2(Q) * (-3.0 / 25.0)};
}
template <class T>
std::vector<T> poly_T19(const T& Q, const T& R) {
    return {R / Q, Q * (9.0 / 32.0)};
}

// ---- auxiliary-root relations ----------------------------------------------

template <class T>
T aux_T4(const T& v, const T& Q, const T&) {
    return v * (-4.0 / 3.0) - Q / (v * 24.0);
}
template <class T>
T aux_T10(const T& v, const T& Q, const T&) {
    return v * (-9.0 / 8.0) - Q / (v * 24.0);
}
template <class T>
T aux_T15(const T& v, const T& Q, const T&) {
    return v * (1.0 / 3.0) + Q / v * (4.0 / 15.0);
}
template <class T>
T aux_T17(const T& v, const T& Q, const T&) {
    return v * (1.0 / 8.0) - Q / v * (9.0 / 40.0);
}

// ---- triple maps -------------------------------------------------------------

template <class T>
std::array<T, 3> map_T1(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P - v, -Q + p2(v) * 5.0, R * (11.0 / 4.0) - Q * v * (21.0 / 4.0)};
}
template <class T>
std::array<T, 3> map_T2(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P - v * 2.0, -Q + p2(v) * 10.0, -R - p3(v) * 35.0 + Q * v * 7.0};
}
template <class T>
std::array<T, 3> t3_shared(const T& Q, const T& R, std::array<T, 3>&& out) {
    out[1] = -Q - p4(Q) / (p2(R) * 8.0);
    out[2] = -R - p3(Q) / (R * 4.0) - p6(Q) / (p3(R) * 64.0);
    return std::move(out);
}
template <class T>
std::array<T, 3> map_T3_statement(const T& P, const T& Q, const T& R, const T&, const T&) {
    return t3_shared(Q, R, {P + p2(Q) / (R * 4.0), T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> map_T3_proof(const T& P, const T& Q, const T& R, const T&, const T&) {
    return t3_shared(Q, R, {P - p2(Q) / (R * 4.0), T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> map_T4(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return {P - a * 2.0, Q * (5.0 / 3.0) + p2(v) * (64.0 / 3.0) - p2(a) * 8.0,
            R * (-7.0 / 27.0) - Q * v * (4.0 / 3.0) - Q * a * 2.0 - p2(Q) / R * p2(a) -
                p3(Q) / R * (2.0 / 27.0)};
}
template <class T>
std::array<T, 3> map_T5(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P + v, Q * (3.0 / 4.0) - p2(v) * 3.0,
            R * (3.0 / 4.0) + Q * v * (9.0 / 8.0) + p3(v) * 3.0};
}
template <class T>
std::array<T, 3> map_T6(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P + v * 2.0, Q * (5.0 / 4.0) + p2(v) * 10.0,
            R * (5.0 / 4.0) + Q * v * (25.0 / 8.0) + p3(v) * 35.0};
}
template <class T>
std::array<T, 3> map_T7(const T& P, const T& Q, const T& R, const T&, const T&) {
    return {P - p2(Q) / (R * 40.0), Q * (4.0 / 5.0) - p4(Q) / (p2(R) * 800.0),
            R * (4.0 / 5.0) - p3(Q) / (R * 40.0) - p6(Q) / (p3(R) * 64000.0)};
}
template <class T>
std::array<T, 3> map_T8(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P - p2(Q) / (R * 40.0) + v * 2.0,
            Q - p4(Q) / (p2(R) * 640.0) + p2(v) * 10.0,
            R - p3(Q) / (R * 32.0) - p6(Q) / (p3(R) * 51200.0) + Q * v * (5.0 / 2.0) -
                p4(Q) / p2(R) * v * (25.0 / 6400.0) + p3(v) * 35.0};
}
template <class T>
std::array<T, 3> map_T9(const T& P, const T& Q, const T& R, const T&, const T&) {
    return {P + R / Q, -Q - p2(R) / p2(Q) * 3.0, R + p3(R) / p3(Q) * 3.0};
}
template <class T>
std::array<T, 3> map_T10(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return {P - a, Q * (5.0 / 4.0) + p2(v) * (27.0 / 4.0) - p2(a) * 3.0,
            R * (17.0 / 8.0) - p3(a) * 3.0 + Q * v * (63.0 / 16.0) + p3(v) * (243.0 / 16.0)};
}
template <class T>
std::array<T, 3> map_T11(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P + v, Q * (4.0 / 3.0) + p2(v) * 4.0, R * (4.0 / 3.0) + Q * v * 2.0 + p3(v) * 10.0};
}
template <class T>
std::array<T, 3> map_T12(const T& P, const T& Q, const T& R, const T&, const T&) {
    return {P - p2(Q) / (R * 3.0), Q * (-5.0 / 3.0) - p4(Q) / p2(R) * (5.0 / 9.0),
            p3(Q) / R * (-5.0 / 3.0) - R * (5.0 / 3.0) - p6(Q) / p3(R) * (10.0 / 27.0)};
}
template <class T>
std::array<T, 3> map_T13(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return {P - v, Q * (5.0 / 3.0) + p2(v) * 5.0, R * (5.0 / 12.0) + Q * v * (5.0 / 12.0)};
}
template <class T>
std::array<T, 3> map_T14(const T& P, const T& Q, const T& R, const T&, const T&) {
    return {P + R / Q, Q * (3.0 / 5.0) - p2(R) / p2(Q) * 3.0,
            R * (9.0 / 5.0) + p3(R) / p3(Q) * 3.0};
}
template <class T>
std::array<T, 3> map_T15(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return {P - a, Q * (-5.0 / 3.0) - p2(a) * 5.0 - p2(v) * (10.0 / 3.0),
            Q * v * (-5.0 / 3.0) - R * (20.0 / 27.0) - Q * a * 7.0 - p2(Q) / R * p2(a) * 8.0 -
                p3(Q) / R * (8.0 / 135.0)};
}
template <class T>
std::array<T, 3> t16_shared(const T& Q, const T& R, const T& v, std::array<T, 3>&& out) {
    out[1] = Q * (-3.0 / 5.0) - p2(v) * 3.0;
    out[2] = R * (-3.0 / 5.0) - Q * v * (9.0 / 5.0) - p3(v) * 3.0;
    return std::move(out);
}
template <class T>
std::array<T, 3> map_T16_statement(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return t16_shared(Q, R, v, {P + v, T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> map_T16_proof(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return t16_shared(Q, R, v, {P - v, T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> t17_common(const T& P, const T& Q, const T& R, const T& v, const T& a,
                            double mu2_coeff) {
    return {P - a, Q * (-5.0 / 4.0) + p2(v) * mu2_coeff + p2(a) * 5.0,
            p3(v) * (5.0 / 9.0) - p3(a) * 15.0 + Q * a * (349.0 / 54.0) + Q * v * (181.0 / 216.0) -
                R * (181.0 / 216.0)};
}
template <class T>
std::array<T, 3> map_T17_statement(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return t17_common(P, Q, R, v, a, 5.0 / 36.0);
}
template <class T>
std::array<T, 3> map_T17_proof(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return t17_common(P, Q, R, v, a, 5.0 / 4.0);
}
template <class T>
std::array<T, 3> t18_shared(const T& Q, const T& R, const T& v, const T& a,
                            std::array<T, 3>&& out) {
    out[1] = Q * (-4.0 / 5.0) + p2(v) * 4.0;
    out[2] = R * (4.0 / 15.0) + p3(v) * 8.0 - Q * v * (28.0 / 15.0) - Q * a * (16.0 / 15.0);
    return std::move(out);
}
template <class T>
std::array<T, 3> map_T18_statement(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return t18_shared(Q, R, v, a, {P - v, T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> map_T18_proof(const T& P, const T& Q, const T& R, const T& v, const T& a) {
    return t18_shared(Q, R, v, a, {P + v, T(0.0), T(0.0)});
}
template <class T>
std::array<T, 3> t19_common(const T& P, const T& Q, const T& R, const T& v, double q_coeff) {
    return {P + v, Q * q_coeff + p2(v) * 5.0,
            R * (-5.0 / 4.0) - Q * v * (55.0 / 8.0) + p3(v) * 15.0};
}
template <class T>
std::array<T, 3> map_T19_statement(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return t19_common(P, Q, R, v, -5.0 / 32.0);
}
template <class T>
std::array<T, 3> map_T19_proof(const T& P, const T& Q, const T& R, const T& v, const T&) {
    return t19_common(P, Q, R, v, -5.0 / 4.0);
}

std::vector<Complex> roots_T8(const Complex& Q, const Complex& R) {
    check_guard("R", R);
    const Complex om(-0.5, std::sqrt(3.0) / 2.0);
    const Complex cr = std::pow(R, 1.0 / 3.0);
    const Complex t1 = std::pow(10.0, 1.0 / 3.0) / 30.0 * Q / cr;
    const Complex t2 = std::pow(10.0, 2.0 / 3.0) / 15.0 * cr;
    const Complex base = -Q * Q / (240.0 * R);
    return {base + t1 - t2, base + om * t1 - om * om * t2, base + om * om * t1 - om * t2};
}

// ---- catalog assembly -------------------------------------------------------

struct EntryBuilder {
    TransformEntry e;
    EntryBuilder(std::string id, Parameter src, Parameter tgt)
        : e{std::move(id), src, tgt, 1, nullptr, nullptr, nullptr, nullptr, nullptr, {}, false,
            false, false} {}
    EntryBuilder& poly(PolyCoeffFn<Complex> pv, PolyCoeffFn<Jet> pj, int degree) {
        e.poly_value = pv;
        e.poly_jet = pj;
        e.branch_count = degree;
        return *this;
    }
    EntryBuilder& roots(std::vector<Complex> (*fn)(const Complex&, const Complex&), int count) {
        e.explicit_roots = fn;
        e.branch_count = count;
        return *this;
    }
    EntryBuilder& aux(AuxFn<Complex> av, AuxFn<Jet> aj) {
        e.aux_value = av;
        e.aux_jet = aj;
        return *this;
    }
    EntryBuilder& variant(std::string name, TripleMapFn<Complex> mv, TripleMapFn<Jet> mj) {
        e.variants.push_back({std::move(name), mv, mj});
        return *this;
    }
    EntryBuilder& guards(bool q, bool r, bool root) {
        e.guard_Q = q;
        e.guard_R = r;
        e.guard_root = root;
        return *this;
    }
    TransformEntry build() { return std::move(e); }
};

std::vector<TransformEntry> build_catalog() {
    const Parameter inf = Parameter::infinite();
    const Parameter k2 = Parameter::finite(2), k3 = Parameter::finite(3),
                    k4 = Parameter::finite(4), k9 = Parameter::finite(9),
                    k18 = Parameter::finite(18), k32 = Parameter::finite(3, 2),
                    k23 = Parameter::finite(2, 3);

    std::vector<TransformEntry> cat;
    cat.push_back(EntryBuilder("T1", inf, inf)
                      .poly(&poly_T1<Complex>, &poly_T1<Jet>, 3)
                      .variant("statement", &map_T1<Complex>, &map_T1<Jet>)
                      .build());
    cat.push_back(EntryBuilder("T2", inf, inf)
                      .poly(&poly_T2<Complex>, &poly_T2<Jet>, 4)
                      .variant("statement", &map_T2<Complex>, &map_T2<Jet>)
                      .build());
    cat.push_back(EntryBuilder("T3", k2, k2)
                      .variant("statement", &map_T3_statement<Complex>, &map_T3_statement<Jet>)
                      .variant("proof", &map_T3_proof<Complex>, &map_T3_proof<Jet>)
                      .guards(false, true, false)
                      .build());
    cat.push_back(EntryBuilder("T4", k2, k2)
                      .poly(&poly_T4<Complex>, &poly_T4<Jet>, 3)
                      .aux(&aux_T4<Complex>, &aux_T4<Jet>)
                      .variant("statement", &map_T4<Complex>, &map_T4<Jet>)
                      .guards(false, true, true)
                      .build());
    cat.push_back(EntryBuilder("T5", k2, k3)
                      .poly(&poly_T5<Complex>, &poly_T5<Jet>, 2)
                      .variant("statement", &map_T5<Complex>, &map_T5<Jet>)
                      .guards(true, false, false)
                      .build());
    cat.push_back(EntryBuilder("T6", k2, k23)
                      .poly(&poly_T6<Complex>, &poly_T6<Jet>, 4)
                      .variant("statement", &map_T6<Complex>, &map_T6<Jet>)
                      .build());
    cat.push_back(EntryBuilder("T7", k23, k2)
                      .variant("statement", &map_T7<Complex>, &map_T7<Jet>)
                      .guards(false, true, false)
                      .build());
    cat.push_back(EntryBuilder("T8", k23, k23)
                      .poly(&poly_T8<Complex>, &poly_T8<Jet>, 4)
                      .roots(&roots_T8, 3)
                      .variant("statement", &map_T8<Complex>, &map_T8<Jet>)
                      .guards(false, true, false)
                      .build());
    cat.push_back(EntryBuilder("T9", k3, k3)
                      .variant("statement", &map_T9<Complex>, &map_T9<Jet>)
                      .guards(true, false, false)
                      .build());
    cat.push_back(EntryBuilder("T10", k3, k3)
                      .poly(&poly_T10<Complex>, &poly_T10<Jet>, 4)
                      .aux(&aux_T10<Complex>, &aux_T10<Jet>)
                      .variant("statement", &map_T10<Complex>, &map_T10<Jet>)
                      .guards(false, false, true)
                      .build());
    cat.push_back(EntryBuilder("T11", k3, k2)
                      .poly(&poly_T10<Complex>, &poly_T10<Jet>, 4)
                      .variant("statement", &map_T11<Complex>, &map_T11<Jet>)
                      .build());
    cat.push_back(EntryBuilder("T12", k3, k4)
                      .variant("statement", &map_T12<Complex>, &map_T12<Jet>)
                      .guards(false, true, false)
                      .build());
    cat.push_back(EntryBuilder("T13", k3, k32)
                      .poly(&poly_T13<Complex>, &poly_T13<Jet>, 3)
                      .variant("statement", &map_T13<Complex>, &map_T13<Jet>)
                      .build());
    cat.push_back(EntryBuilder("T14", k32, k3)
                      .variant("statement", &map_T14<Complex>, &map_T14<Jet>)
                      .guards(true, false, false)
                      .build());
    cat.push_back(EntryBuilder("T15", k4, k4)
                      .poly(&poly_T15<Complex>, &poly_T15<Jet>, 3)
                      .aux(&aux_T15<Complex>, &aux_T15<Jet>)
                      .variant("statement", &map_T15<Complex>, &map_T15<Jet>)
                      .guards(false, true, true)
                      .build());
    cat.push_back(EntryBuilder("T16", k4, k3)
                      .poly(&poly_T16<Complex>, &poly_T16<Jet>, 2)
                      .variant("statement", &map_T16_statement<Complex>, &map_T16_statement<Jet>)
                      .variant("proof", &map_T16_proof<Complex>, &map_T16_proof<Jet>)
                      .guards(true, false, false)
                      .build());
    cat.push_back(EntryBuilder("T17", k9, k9)
                      .poly(&poly_T17<Complex>, &poly_T17<Jet>, 4)
                      .aux(&aux_T17<Complex>, &aux_T17<Jet>)
                      .variant("statement", &map_T17_statement<Complex>, &map_T17_statement<Jet>)
                      .variant("proof", &map_T17_proof<Complex>, &map_T17_proof<Jet>)
                      .guards(false, false, true)
                      .build());
    cat.push_back(EntryBuilder("T18", k9, k18)
                      .poly(&poly_T17<Complex>, &poly_T17<Jet>, 4)
                      .aux(&aux_T17<Complex>, &aux_T17<Jet>)
                      .variant("statement", &map_T18_statement<Complex>, &map_T18_statement<Jet>)
                      .variant("proof", &map_T18_proof<Complex>, &map_T18_proof<Jet>)
                      .guards(false, false, true)
                      .build());
    cat.push_back(EntryBuilder("T19", k18, k9)
                      .poly(&poly_T19<Complex>, &poly_T19<Jet>, 2)
                      .variant("statement", &map_T19_statement<Complex>, &map_T19_statement<Jet>)
                      .variant("proof", &map_T19_proof<Complex>, &map_T19_proof<Jet>)
                      .guards(true, false, false)
                      .build());
    return cat;
}

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

const TransformVariant& TransformEntry::variant(const std::string& name) const {
    for (const auto& v : variants)
        if (v.name == name) return v;
    throw ChazyError("entry " + id + " has no variant named '" + name + "'");
}

const std::vector<TransformEntry>& catalog() {
    static const std::vector<TransformEntry> cat = build_catalog();
    return cat;
}

const TransformEntry& entry_by_id(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw ChazyError("unknown transform id '" + id + "'");
}

PolySpec defining_poly(const TransformEntry& e, Complex Q, Complex R) {
    if (!e.has_poly()) throw ChazyError("entry " + e.id + " has no defining polynomial");
    if (e.guard_Q) check_guard("Q", Q);
    if (e.guard_R) check_guard("R", R);
    PolySpec p;
    p.coeffs = e.poly_value(Q, R);
    p.degree = static_cast<int>(p.coeffs.size());
    return p;
}

std::vector<Complex> branch_roots(const TransformEntry& e, Complex Q, Complex R) {
    if (e.explicit_roots) return e.explicit_roots(Q, R);
    std::vector<Complex> r = solve_poly(defining_poly(e, Q, R));
    std::sort(r.begin(), r.end(), lex_less);
    return r;
}

Complex aux_of(const TransformEntry& e, Complex root, Complex Q, Complex R) {
    if (!e.has_aux()) return Complex(0.0, 0.0);
    check_guard("root", root);
    return e.aux_value(root, Q, R);
}

Triple apply(const TransformEntry& e, const std::string& variant, const Triple& t, Complex root,
             Complex aux) {
    const TransformVariant& var = e.variant(variant);
    if (e.guard_Q) check_guard("Q", t.Q);
    if (e.guard_R) check_guard("R", t.R);
    if (e.has_poly()) {
        const PolySpec ps = defining_poly(e, t.Q, t.R);
        const double fr = std::abs(poly_eval(ps, root));
        if (fr > 1e-8 * poly_coeff_norm(ps))
            throw InconsistentRoot("entry " + e.id + ": |F(root)| = " + std::to_string(fr));
    }
    Complex a(0.0, 0.0);
    if (e.has_aux()) {
        if (e.guard_root) check_guard("root", root);
        const Complex expect = e.aux_value(root, t.Q, t.R);
        if (std::abs(aux - expect) > 1e-10 * std::max(1.0, std::abs(expect)))
            throw InconsistentRoot("entry " + e.id + ": aux inconsistent with its relation");
        a = aux;
    } else if (e.guard_root) {
        check_guard("root", root);
    }
    const auto out = var.map_value(t.P, t.Q, t.R, root, a);
    return {out[0], out[1], out[2]};
}

Complex implicit_root_derivative(const TransformEntry& e, const Triple& t, const Triple& dt,
                                 Complex root) {
    if (!e.has_poly()) throw ChazyError("entry " + e.id + " has no defining polynomial");
    if (e.guard_Q) check_guard("Q", t.Q);
    if (e.guard_R) check_guard("R", t.R);
    const std::vector<Jet> cj = e.poly_jet(Jet(t.Q, dt.Q), Jet(t.R, dt.R));

    PolySpec ps;
    ps.degree = static_cast<int>(cj.size());
    ps.coeffs.reserve(cj.size());
    for (const Jet& c : cj) ps.coeffs.push_back(c.v);
    const Complex dF = poly_eval_derivative(ps, root);
    if (std::abs(dF) < 1e-10)
        throw MultipleRoot("entry " + e.id + ": |dF/droot| = " + std::to_string(std::abs(dF)));

    // sum of (dc_j/dx) root^j over the non-leading coefficients
    Complex num(0.0, 0.0), zp(1.0, 0.0);
    for (auto it = cj.rbegin(); it != cj.rend(); ++it) {
        num += it->d * zp;
        zp *= root;
    }
    return -num / dF;
}

TripleJet apply_jet(const TransformEntry& e, const TransformVariant& var, const TripleJet& in,
                    Complex root) {
    if (e.guard_Q) check_guard("Q", in.value.Q);
    if (e.guard_R) check_guard("R", in.value.R);
    Jet rj(root);
    if (e.has_poly()) rj = Jet(root, implicit_root_derivative(e, in.value, in.deriv, root));
    const Jet P(in.value.P, in.deriv.P), Q(in.value.Q, in.deriv.Q), R(in.value.R, in.deriv.R);
    Jet a;
    if (e.has_aux()) {
        if (e.guard_root) check_guard("root", root);
        a = e.aux_jet(rj, Q, R);
    } else if (e.guard_root) {
        check_guard("root", root);
    }
    const auto out = var.map_jet(P, Q, R, rj, a);
    return {{out[0].v, out[1].v, out[2].v}, {out[0].d, out[1].d, out[2].d}};
}

CompositeTransform compose(const std::vector<std::string>& ids, const std::vector<int>& branches,
                           const std::vector<std::string>& variant_names) {
    if (ids.empty()) throw ChazyError("compose requires at least one entry id");
    if (!branches.empty() && branches.size() != ids.size())
        throw ChazyError("compose: branch list must match the id list");
    if (!variant_names.empty() && variant_names.size() != ids.size())
        throw ChazyError("compose: variant list must match the id list");

    CompositeTransform c{{}, {}, {}, entry_by_id(ids.front()).source,
                         entry_by_id(ids.back()).target};
    for (size_t i = 0; i < ids.size(); ++i) {
        const TransformEntry& e = entry_by_id(ids[i]);
        if (i > 0 && !(c.stages.back()->target == e.source))
            throw ParameterMismatch("compose: " + c.stages.back()->id + " targets k = " +
                                    c.stages.back()->target.str() + " but " + e.id +
                                    " expects k = " + e.source.str());
        const int b = branches.empty() ? 0 : branches[i];
        if (b < 0 || b >= e.branch_count)
            throw ChazyError("compose: branch " + std::to_string(b) + " out of range for " + e.id);
        const std::string vn = variant_names.empty() ? e.variants.front().name : variant_names[i];
        e.variant(vn);  // validates
        c.stages.push_back(&e);
        c.branches.push_back(b);
        c.variant_names.push_back(vn);
    }
    return c;
}

}  // namespace chazy
