#include "chazy/roots.hpp"

#include <algorithm>
#include <cmath>

#include "chazy/errors.hpp"

namespace chazy {

namespace {

constexpr double kCollisionGap = 1e-9;

// Lexicographic (re, im) order; the deterministic tie-break everywhere.
bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Guarded Newton: take a step only while it reduces |F|.
Complex polish_root(const PolySpec& p, Complex z) {
    double best = std::abs(poly_eval(p, z));
    for (int i = 0; i < 2 && best > 0.0; ++i) {
        const Complex df = poly_eval_derivative(p, z);
        if (std::abs(df) == 0.0) break;
        const Complex z2 = z - poly_eval(p, z) / df;
        const double f2 = std::abs(poly_eval(p, z2));
        if (f2 >= best) break;
        z = z2;
        best = f2;
    }
    return z;
}

void polish_all(const PolySpec& p, std::vector<Complex>& roots) {
    for (auto& z : roots) z = polish_root(p, z);
}

}  // namespace

Complex poly_eval(const PolySpec& p, Complex z) {
    Complex r(1.0, 0.0);
    for (const Complex& c : p.coeffs) r = r * z + c;
    return r;
}

Complex poly_eval_derivative(const PolySpec& p, Complex z) {
    Complex r(static_cast<double>(p.degree), 0.0);
    for (int i = 0; i + 1 < p.degree; ++i)
        r = r * z + static_cast<double>(p.degree - 1 - i) * p.coeffs[static_cast<size_t>(i)];
    return r;
}

double poly_coeff_norm(const PolySpec& p) {
    double m = 1.0;
    for (const Complex& c : p.coeffs) m = std::max(m, std::abs(c));
    return m;
}

std::vector<Complex> solve_quadratic(Complex b, Complex c) {
    if (std::abs(b) == 0.0 && std::abs(c) == 0.0) return {Complex(0.0), Complex(0.0)};
    Complex s = std::sqrt(b * b - 4.0 * c);
    // Avoid cancellation in -b -/+ s.
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    const Complex q = -0.5 * (b + s);
    if (std::abs(q) == 0.0) return {Complex(0.0), -b};
    return {q, c / q};
}

std::vector<Complex> solve_cubic(const PolySpec& p) {
    const Complex a = p.coeffs[0], b = p.coeffs[1], c = p.coeffs[2];
    const Complex shift = a / 3.0;
    // Depressed form t^3 + pp t + qq.
    const Complex pp = b - a * a / 3.0;
    const Complex qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::vector<Complex> roots;
    if (std::abs(pp) == 0.0 && std::abs(qq) == 0.0) {
        roots = {-shift, -shift, -shift};
    } else if (std::abs(pp) == 0.0) {
        const Complex u = std::pow(-qq, 1.0 / 3.0);
        const Complex om(-0.5, std::sqrt(3.0) / 2.0);
        roots = {u - shift, u * om - shift, u * om * om - shift};
    } else {
        const Complex s = std::sqrt(qq * qq / 4.0 + pp * pp * pp / 27.0);
        const Complex t1 = -qq / 2.0 + s, t2 = -qq / 2.0 - s;
        const Complex u3 = std::abs(t1) >= std::abs(t2) ? t1 : t2;
        const Complex u = std::pow(u3, 1.0 / 3.0);
        const Complex om(-0.5, std::sqrt(3.0) / 2.0);
        Complex w = u;
        for (int j = 0; j < 3; ++j) {
            roots.push_back(w - pp / (3.0 * w) - shift);
            w = w * om;
        }
    }
    polish_all(p, roots);
    return roots;
}

std::vector<Complex> solve_quartic(const PolySpec& p) {
    const Complex a = p.coeffs[0], b = p.coeffs[1], c = p.coeffs[2], d = p.coeffs[3];
    const Complex shift = a / 4.0;
    // Depressed form y^4 + pp y^2 + qq y + rr.
    const Complex a2 = a * a;
    const Complex pp = b - 3.0 * a2 / 8.0;
    const Complex qq = c - a * b / 2.0 + a2 * a / 8.0;
    const Complex rr = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    const double scale = std::max({1.0, std::abs(pp), std::abs(rr)});

    std::vector<Complex> roots;
    if (std::abs(qq) <= 1e-14 * scale) {
        // Biquadratic.
        for (const Complex& w : solve_quadratic(pp, rr)) {
            const Complex s = std::sqrt(w);
            roots.push_back(s - shift);
            roots.push_back(-s - shift);
        }
    } else {
        // Euler resolvent: t^3 + 2pp t^2 + (pp^2 - 4rr) t - qq^2, whose roots
        // are the squares of s_k = y_a + y_b with s1 s2 s3 = -qq.
        PolySpec res{3, {2.0 * pp, pp * pp - 4.0 * rr, -qq * qq}};
        std::vector<Complex> t = solve_cubic(res);
        std::sort(t.begin(), t.end(),
                  [](const Complex& x, const Complex& y) { return std::abs(x) > std::abs(y); });
        const Complex s1 = std::sqrt(t[0]);
        const Complex s2 = std::sqrt(t[1]);
        const Complex s3 = -qq / (s1 * s2);
        roots = {(s1 + s2 + s3) / 2.0 - shift, (s1 - s2 - s3) / 2.0 - shift,
                 (-s1 + s2 - s3) / 2.0 - shift, (-s1 - s2 + s3) / 2.0 - shift};
    }
    polish_all(p, roots);
    return roots;
}

std::vector<Complex> solve_poly(const PolySpec& p) {
    switch (p.degree) {
        case 2: {
            auto r = solve_quadratic(p.coeffs[0], p.coeffs[1]);
            polish_all(p, r);
            return r;
        }
        case 3:
            return solve_cubic(p);
        case 4:
            return solve_quartic(p);
        default:
            throw ChazyError("unsupported polynomial degree " + std::to_string(p.degree));
    }
}

BranchState track_branch_roots(const BranchState& state, const std::vector<Complex>& roots,
                               double new_x) {
    if (roots.empty()) throw ChazyError("track_branch: empty root set");
    size_t nearest = 0;
    double dmin = std::abs(roots[0] - state.current_root);
    for (size_t i = 1; i < roots.size(); ++i) {
        const double d = std::abs(roots[i] - state.current_root);
        if (d < dmin || (d == dmin && lex_less(roots[i], roots[nearest]))) {
            dmin = d;
            nearest = i;
        }
    }
    if (roots.size() > 1) {
        double d2 = -1.0;
        size_t second = nearest;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (i == nearest) continue;
            const double d = std::abs(roots[i] - state.current_root);
            if (d2 < 0.0 || d < d2) {
                d2 = d;
                second = i;
            }
        }
        // A collision matters when the two candidates nearly coincide and the
        // tracked root moved at least a tenth of that gap this step.
        const double gap = std::abs(roots[nearest] - roots[second]);
        if (gap <= kCollisionGap && dmin > 0.0 && gap <= 10.0 * dmin)
            throw BranchCollision(new_x, gap);
    }
    return {state.branch_index, roots[nearest], new_x};
}

BranchState track_branch(const BranchState& state, const PolySpec& new_poly, double new_x) {
    return track_branch_roots(state, solve_poly(new_poly), new_x);
}

}  // namespace chazy
