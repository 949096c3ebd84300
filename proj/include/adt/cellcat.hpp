#pragma once

#include <functional>

#include "adt/complex.hpp"

namespace adt {

// The Z-graded category Cell(K, L): objects are oriented cells of K not in L
// (plus formal empty objects). Only the pair data is needed concretely.
struct CellPair {
    ComplexPtr K;
    std::vector<int> L;  // sorted cell indices, downward closed

    bool in_L(int cell) const;
    static CellPair make(ComplexPtr K, const SubcomplexRef& L);
    static CellPair whole(ComplexPtr K);
    SubcomplexRef l_ref() const;
};

// An isomorphism of Z-graded categories Cell(src) -> Cell(dst) that lowers
// dimension by `shift`, stored by its action on reference-oriented cells.
// Incidence compatibility means [th o, th o'] = (-1)^shift [o, o'].
struct CellIso {
    CellPair src, dst;
    int shift = 0;
    std::vector<std::pair<int, i64>> obj;  // src cell -> (dst cell, sign); (-1,0) on L

    OrientedCell map_cell(const OrientedCell& c) const;
    CellIso inverse() const;
};

// build from an id-level map; validates bijectivity and dimension shift
CellIso make_cell_iso(const CellPair& src, const CellPair& dst, int shift,
                      const std::function<std::pair<std::string, i64>(const std::string&)>& f);

bool check_incidence_compatible(const CellIso& iso);

// kappa : Cell(I x K, ({0,1} x K) u (I x L)) -> Cell(K, L), (I|s) -> s
struct KappaIso {
    ComplexPtr IK;  // product(interval(), K)
    CellIso iso;
};
KappaIso kappa(ComplexPtr K, const SubcomplexRef& L);
KappaIso kappa(ComplexPtr K);

// lambda : Cell(D1 x K, dD1 x K) -> Cell(K), (01|s) -> s
struct LambdaIso {
    ComplexPtr DK;  // product(simplex(1), K)
    CellIso iso;
};
LambdaIso lambda_iso(ComplexPtr K);

// theta : Cell(D^{n+1}, d_{n+1} D^{n+1} u {n+1}) -> Cell(D^n), degree -1;
// a simplex containing the last vertex maps to the one omitting it, with
// (-1)^{dim sigma - 1} times its canonical orientation
CellIso theta_susp(int n);

// mu_n : Cell(D1 x D0 x D^{n+1}, L) -> Cell(D^n x I), degree -1, built by the
// clause prescriptions (theta on the 0-end, lambda on the d_{n+1} face,
// i . mu_{n-1} on the faces 0..n) and extended over the top cell; every
// consistency condition is re-validated and failures are hard errors
struct MuIso {
    ComplexPtr src_complex;  // product(D1, D0, D^{n+1})
    ComplexPtr dst_complex;  // product(D^n, I)
    CellIso iso;
};
MuIso mu_iso(int n);

// eta_# : Cell(D^{n_{eta^{-1}(1)}} x ... ) -> Cell(D^{n_1} x ...), the factor
// shuffle with its Koszul orientation sign
struct EtaSharp {
    ComplexPtr src_complex, dst_complex;
    CellIso iso;
};
EtaSharp eta_sharp(const std::vector<int>& eta, const std::vector<int>& multi_index);

// order-preserving face embedding D^{n-1} = d_i D^n c D^n as a 0-shift iso
// onto the subcomplex pair (closure of face i, empty)
CellIso face_embedding_iso(int n, int i);

// identify two complexes by an id translation (shift 0, signs +1)
CellIso ident_iso(ComplexPtr src, ComplexPtr dst,
                  const std::function<std::string(const std::string&)>& rename);

}  // namespace adt
