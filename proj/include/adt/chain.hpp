#pragma once

#include <map>
#include <memory>
#include <vector>

#include "adt/matrix.hpp"

namespace adt {

// Finitely generated free chain complex over Z. Degrees outside [lo, hi]
// have rank zero. d_n maps C_n -> C_{n-1} and d_{n-1} d_n = 0.
class IntegerChainComplex {
  public:
    IntegerChainComplex() = default;

    static IntegerChainComplex make(const std::map<int, int>& ranks,
                                    const std::map<int, Mat>& diffs);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int rank(int n) const;
    const Mat& diff(int n) const;  // rank(n-1) x rank(n); zero matrix if absent
    int total_rank() const;

    void validate() const;  // d^2 = 0, shapes
    bool operator==(const IntegerChainComplex& o) const = default;

  private:
    int lo_ = 0, hi_ = -1;
    std::vector<int> ranks_;
    std::map<int, Mat> diffs_;  // only nonzero differentials stored
};

using ComplexHomology = std::map<int, GroupType>;

ComplexHomology smith_homology(const IntegerChainComplex& C);
bool is_acyclic(const IntegerChainComplex& C);

// H_n(C) as a subquotient of Z^{rank n}: cycles / boundaries
Subquotient homology_subquotient(const IntegerChainComplex& C, int n);

// Hom(C, Z): degree -m has the basis dual to C_m; (d nu) = -(-1)^{|nu|} nu . d
IntegerChainComplex hom_dual(const IntegerChainComplex& C);

// degree shift with sign twist: C[k]_n = C_{n-k}, d = (-1)^k d_C
IntegerChainComplex shift_complex(const IntegerChainComplex& C, int k);

IntegerChainComplex direct_sum(const IntegerChainComplex& A, const IntegerChainComplex& B);

// Basis layout of a tensor product: degree n splits into blocks (p, q = n-p),
// block (p,q) is rank(A,p) x rank(B,q) in row-major (i, j) order.
struct TensorLayout {
    const IntegerChainComplex* A = nullptr;
    const IntegerChainComplex* B = nullptr;
    int size(int n) const;
    int index(int n, int p, int i, int j) const;  // flat index in degree n
};

// Koszul differential: d(a (x) b) = da (x) b + (-1)^|a| a (x) db
IntegerChainComplex tensor_complex(const IntegerChainComplex& A,
                                   const IntegerChainComplex& B);

// A graded map of chain complexes; comp[n] : src_n -> dst_{n+deg}.
struct GradedChainMap {
    const IntegerChainComplex* src = nullptr;
    const IntegerChainComplex* dst = nullptr;
    int deg = 0;
    std::map<int, Mat> comp;

    const Mat& component(int n) const;
    // Koszul chain-map law: d_dst f = (-1)^deg f d_src
    bool is_chain_map() const;
};

// mapping cone of a Koszul chain map f of any degree j:
// Cone_n = src_{n-1-j} (+) dst_n, d(a,b) = (-(-1)^j d a, f a + d b)
IntegerChainComplex mapping_cone(const GradedChainMap& f);

bool is_quasi_iso(const GradedChainMap& f);

// subcomplex spanned by the kept basis elements (must be d-closed);
// also returns, per degree, the ambient indices of the kept basis
IntegerChainComplex restrict_complex(const IntegerChainComplex& C,
                                     const std::map<int, std::vector<int>>& keep);

// quotient by the span of killed basis elements (complement basis survives)
IntegerChainComplex quotient_complex(const IntegerChainComplex& C,
                                     const std::map<int, std::vector<int>>& kill,
                                     std::map<int, std::vector<int>>* surviving = nullptr);

// Total Hom complex Hom(A, C)_m = (+)_j Hom(A_j, C_{j+m});
// (D nu)(x) = d(nu x) - (-1)^m nu(d x).
struct HomComplex {
    const IntegerChainComplex* A = nullptr;
    const IntegerChainComplex* C = nullptr;
    IntegerChainComplex total;
    int size(int m) const;
    // flat index of the matrix entry (row i in C_{j+m}, col u in A_j)
    int index(int m, int j, int i, int u) const;
};

HomComplex hom_complex(const IntegerChainComplex& A, const IntegerChainComplex& C);

// random f.g. complex assembled from spheres and Z -m-> Z pieces, then
// disguised by integral shears; returns the known homology for oracle checks
struct RandomComplex {
    IntegerChainComplex C;
    ComplexHomology known;
};
RandomComplex random_complex(Rng& rng, int min_deg, int max_deg, int max_pieces);

}  // namespace adt
