#pragma once

#include <vector>

#include "adt/chain.hpp"

namespace adt {

// The standard resolution W of Z by Z[Z/2]-modules, truncated at N:
// W_s free of rank 1 over Z[Z/2] with generator e_s, Z-basis (e_s, T e_s),
// d(e_s) = e_{s-1} + (-1)^s T e_{s-1}.
struct WResolution {
    int N = 0;
    IntegerChainComplex C;  // Z-ranks: 2 in degrees 0..N

    static WResolution make(int N);
    // augmentation W_0 -> Z (both basis elements to 1), as a chain map to Z[0]
    GradedChainMap augmentation(const IntegerChainComplex& z0) const;
};

// V_{-n} = Hom_{Z/2}(W_n, Z[Z/2]), Z-basis (f_n, T f_n) where f_n(e_n) = 1,
// f_n(T e_n) = 0; differential dual to W's with (d phi) = -(-1)^{|phi|} phi d.
struct VComplex {
    int N = 0;
    IntegerChainComplex C;  // Z-ranks: 2 in degrees -N..0

    static VComplex make(int N);
};

// norm map W -> Z -> V ; e_0 and T e_0 go to f_0 + T f_0
GradedChainMap norm_map(const WResolution& W, const VComplex& V);

// A term alpha e_p (x) beta e_q of W (x) W; tpow_* in {0,1}.
struct WWTerm {
    int p = 0, tp = 0, q = 0, tq = 0;
    i64 c = 0;
};

// Equivariant chain map Delta : W -> W (x) W (diagonal action) lifting the
// identity of Z, with strict counit laws (eps (x) 1) Delta = (1 (x) eps) Delta = id.
// Built degreewise by integer solving; representative is canonicalized by
// lattice reduction so the output is deterministic.
struct DiagonalW {
    int N = 0;
    std::vector<std::vector<WWTerm>> delta;  // delta[s] = Delta(e_s)

    static DiagonalW make(int N);
};

// ---- extended Alexander-Whitney family ----------------------------------
// AW_s on the standard simplex [0..k], a degree-s natural map
// C(D^k) -> C(D^k) (x) C(D^k) satisfying the ladder
//   d AW_s - (-1)^s AW_s d = AW_{s-1} + (-1)^s T AW_{s-1}
// with AW_0 the classical front/back diagonal. Simplices are encoded as
// strictly increasing vertex-index lists inside [0..k].
struct AwTerm {
    std::vector<int> a, b;
    i64 c = 0;
};

// memoized; thread-safe
const std::vector<AwTerm>& aw_table(int k, int s);

}  // namespace adt
