#pragma once

#include <array>
#include <string>
#include <vector>

#include "chazy/jet.hpp"
#include "chazy/parameter.hpp"
#include "chazy/roots.hpp"
#include "chazy/system.hpp"
#include "chazy/triple.hpp"

namespace chazy {

/// Denominators below this magnitude make a map evaluation degenerate.
inline constexpr double kDegeneracyThreshold = 1e-10;

template <class T>
using TripleMapFn = std::array<T, 3> (*)(const T& P, const T& Q, const T& R, const T& root,
                                         const T& aux);
template <class T>
using AuxFn = T (*)(const T& root, const T& Q, const T& R);
template <class T>
using PolyCoeffFn = std::vector<T> (*)(const T& Q, const T& R);

/// A named coefficient-sign variant of an entry's triple map. Where a
/// transform's stated form and the relations deriving it disagree, both are
/// shipped and the audit decides empirically.
struct TransformVariant {
    std::string name;
    TripleMapFn<Complex> map_value = nullptr;
    TripleMapFn<Jet> map_jet = nullptr;
};

/// One catalog item: source/target parameters, the defining polynomial in the
/// auxiliary root (when the map is not closed-form rational), an optional
/// auxiliary-root relation, the triple map variants and the branch count.
struct TransformEntry {
    std::string id;
    Parameter source;
    Parameter target;
    int branch_count = 1;

    // Defining polynomial F(root; Q, R) = 0, monic, coefficients descending.
    PolyCoeffFn<Complex> poly_value = nullptr;
    PolyCoeffFn<Jet> poly_jet = nullptr;

    // Explicit closed-form root list (T8 only); branch_count entries.
    std::vector<Complex> (*explicit_roots)(const Complex& Q, const Complex& R) = nullptr;

    AuxFn<Complex> aux_value = nullptr;
    AuxFn<Jet> aux_jet = nullptr;

    std::vector<TransformVariant> variants;

    // Quantities that must stay >= kDegeneracyThreshold in magnitude.
    bool guard_Q = false;
    bool guard_R = false;
    bool guard_root = false;

    bool has_poly() const { return poly_value != nullptr; }
    bool has_aux() const { return aux_value != nullptr; }
    const TransformVariant& variant(const std::string& name) const;
};

/// The full T1..T19 catalog (immutable, built once).
const std::vector<TransformEntry>& catalog();

/// Lookup by id; throws ChazyError for unknown ids.
const TransformEntry& entry_by_id(const std::string& id);

/// F(.; Q, R) for a poly-based entry. Throws DegenerateInput when a guarded
/// coefficient denominator vanishes.
PolySpec defining_poly(const TransformEntry& e, Complex Q, Complex R);

/// Branch roots at (Q, R): solved from the defining polynomial and ordered
/// lexicographically by (re, im), or the explicit list for T8. The element
/// count equals branch_count.
std::vector<Complex> branch_roots(const TransformEntry& e, Complex Q, Complex R);

/// Auxiliary value for entries with an aux relation (0 otherwise).
Complex aux_of(const TransformEntry& e, Complex root, Complex Q, Complex R);

/// The mapped triple. Checks |F(root)| against the entry's polynomial, the
/// consistency of aux with the aux relation (1e-10) and all degeneracy
/// guards. Throws DegenerateInput / InconsistentRoot.
Triple apply(const TransformEntry& e, const std::string& variant, const Triple& t, Complex root,
             Complex aux = Complex(0.0, 0.0));

/// d(root)/dx = -(dF/dQ Q' + dF/dR R')/(dF/droot) along a flow with
/// derivative dt. Throws MultipleRoot when |dF/droot| < 1e-10.
Complex implicit_root_derivative(const TransformEntry& e, const Triple& t, const Triple& dt,
                                 Complex root);

/// Map a jet (triple + derivative) through one entry variant; droot comes
/// from implicit differentiation, aux and its derivative from the relation.
TripleJet apply_jet(const TransformEntry& e, const TransformVariant& variant, const TripleJet& in,
                    Complex root);

/// An ordered chain of entries with per-stage branch choices.
struct CompositeTransform {
    std::vector<const TransformEntry*> stages;
    std::vector<int> branches;
    std::vector<std::string> variant_names;
    Parameter source;
    Parameter target;
};

/// Validates that consecutive target/source parameters chain and that each
/// branch index is in range. Variants default to each entry's first variant.
CompositeTransform compose(const std::vector<std::string>& ids, const std::vector<int>& branches,
                           const std::vector<std::string>& variant_names = {});

}  // namespace chazy
