#pragma once

#include "adt/adtheory.hpp"
#include "adt/wres.hpp"

namespace adt {

// element of (C (x) C)_*: list of (deg_a, idx_a, deg_b, idx_b, coeff) in the
// coordinates of an ambient complex
struct TensorElt {
    int da = 0, ia = 0, db = 0, ib = 0;
    i64 c = 0;
    auto operator<=>(const TensorElt&) const = default;
};
using TensorChain = std::vector<TensorElt>;

TensorChain tensor_normalize(TensorChain t);
TensorChain tensor_add(const TensorChain& a, const TensorChain& b, i64 scale_b = 1);
TensorChain tensor_transpose(const TensorChain& t);  // Koszul transposition
TensorChain tensor_boundary(const IntegerChainComplex& C, const TensorChain& t);

// A symmetric complex (C, phi) of dimension n: phi_s lives in (C (x) C)_{n+s};
// it is "symmetric" (not merely quasi-) when
//   d phi_s = (-1)^n (phi_{s-1} + (-1)^s T phi_{s-1}).
struct SymmetricComplexData {
    std::shared_ptr<const IntegerChainComplex> C;
    int n = 0;
    std::map<int, TensorChain> phi;  // s -> phi_s (missing = 0)

    bool is_symmetric(int smax) const;
    SymmetricComplexData involute() const;  // phi -> -phi
};

// quasi-quadratic complex (C, psi), psi in (W (x)_{Z/2} (C (x) C))_n stored as
// representatives psi_s in (C (x) C)_{n-s} for the e_s slots
struct QuadraticComplexData {
    std::shared_ptr<const IntegerChainComplex> C;
    int n = 0;
    std::map<int, TensorChain> psi;
};

// norm map: phi_0 = (1 + T) psi_0, higher phi vanish
SymmetricComplexData norm(const QuadraticComplexData& q);

// ---- the symmetric Poincare ad theory over Z -------------------------------

// Per-cell value of a symmetric ad inside one shared ambient complex: the
// cell's complex is the span of a basis subset (so structure maps are the
// subset inclusions and based colimits are unions).
struct SymValue {
    std::map<int, std::vector<int>> basis;  // degree -> sorted ambient indices
    int n = 0;                              // dim sigma - degree of the ad
    std::map<int, TensorChain> phi;         // ambient coordinates
};

struct SymAd {
    int degree = 0;
    CellPair base;
    std::shared_ptr<const IntegerChainComplex> ambient;
    std::map<int, SymValue> vals;  // cell -> value; absent = the empty object

    const SymValue* value(int cell) const;
};

struct DualityReport {
    bool ok = false;
    std::vector<std::string> failures;  // per-cell diagnostics
};

class SymTheory {
  public:
    using Ad = SymAd;

    int truncation = 6;  // phi data above this index is discarded

    Ad trivial(const CellPair& base, int degree) const;
    bool is_ad(const Ad& F) const { return check(F).ok; }
    DualityReport check(const Ad& F) const;  // balanced/closed/well-behaved/duality

    Ad involute(const Ad& F) const;
    Ad reindex(const CellIso& iso, const Ad& F) const;
    Ad inverse_reindex(const CellIso& iso, const Ad& F) const;
    Ad restrict_to(const Ad& F, const SubcomplexRef& sub, ComplexPtr sub_complex) const;
    Ad glue(const Subdivision& s, const Ad& fine) const;
    Ad cylinder(const Ad& F) const;  // tensor with the interval ad
    Ad isomorphic_variant(const Ad& F, Rng& rng) const;
    Ad perturbed(const Ad& F, Rng& rng) const;
    Ad transport(const Ad& F, const CellPair& base,
                 const std::map<std::string, std::string>& src_of) const;
    Ad overlay(Ad base, const Ad& part, bool check_consistent) const;
    bool equal(const Ad& a, const Ad& b) const;
    bool vanishes_on(const Ad& F, const std::vector<int>& cells) const;
    bool is_trivial_on(const Ad& F, int cell) const;
    bool is_trivial_ad(const Ad& F) const;
    bool cylinder_ends_equal(const Ad& J, const Ad& F) const;
    std::vector<Ad> sample_ads(const CellPair& base, int degree, Rng& rng, int count) const;

    // tensor product of ads (Lemma-style composite through the W-diagonal)
    Ad tensor_ads(const Ad& F1, const Ad& F2) const;

    // extension over an elementary expansion by cylinder + gluing
    Ad kan_extend(const ElementaryExpansion& e, const Ad& F) const;
};

// the tautological ad of an oriented simplicial ball complex: each cell
// carries its own simplicial chains with the AW family of its orientation
SymAd tautological_sym_ad(ComplexPtr K);

// the interval ad G used by the cylinder
SymAd interval_sym_ad();

// symmetric signature of a simplicial complex with a fundamental cycle:
// C = simplicial chains, phi_s = (-1)^{n s} AW_s(xi)
SymmetricComplexData sig_of(ComplexPtr X, const CellChain& xi);

// wrap a symmetric complex as a point ad of degree -n
SymAd point_sym_ad(const SymmetricComplexData& S);

// evaluate AW_s on a simplicial cellular chain, in ambient coordinates
TensorChain aw_on_chain(const CellularChains& cc, ComplexPtr K, const CellChain& chain, int s);

// signature of a 4m-dimensional Poincare symmetric complex: the phi_0
// pairing on H^{2m}(Hom(C,Z)) mod torsion
int signature(const SymmetricComplexData& S);

// independent route: simplicial cup-product form on H^{2m}(X) evaluated
// against the fundamental cycle
int cup_form_signature(ComplexPtr X, const CellChain& xi);

// duality checker for a standalone symmetric complex (as a point ad), with a
// second splitting 1 -> e_0 + d(e_1) available for the independence test
bool point_duality(const SymmetricComplexData& S, bool alternative_splitting = false);

}  // namespace adt
