#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adt/chain.hpp"

namespace adt {

struct CellRec {
    std::string id;
    int dim = 0;
    std::string label;
};

class BallComplex;
using ComplexPtr = std::shared_ptr<const BallComplex>;

// Chain in the cellular chain group: cell index -> coefficient.
using CellChain = std::map<int, i64>;

// A finite oriented face poset with integer incidence numbers. The reference
// orientation of each cell is the basis choice; boundary lists are the
// incidence numbers against reference orientations.
class BallComplex {
  public:
    static ComplexPtr make(std::vector<CellRec> cells,
                           std::map<std::string, std::vector<std::pair<std::string, i64>>> boundary,
                           std::string name = "");

    const std::string& name() const { return name_; }
    int num_cells() const { return static_cast<int>(cells_.size()); }
    const CellRec& cell(int i) const { return cells_[i]; }
    int dim_of(int i) const { return cells_[i].dim; }
    int top_dim() const { return top_dim_; }
    int index_of(const std::string& id) const;        // -1 if absent
    int require(const std::string& id) const;         // throws if absent
    const std::vector<int>& cells_of_dim(int d) const;
    const std::vector<std::pair<int, i64>>& boundary(int i) const;
    const std::vector<int>& faces(int i) const;    // facets (one dimension down)
    const std::vector<int>& cofaces(int i) const;  // cells having i as a facet
    i64 incidence(int upper, int lower) const;

    // cells of the closure of the given set (downward saturation)
    std::vector<int> closure(const std::vector<int>& cells) const;
    std::vector<int> proper_faces(int i) const;  // closure of facets of i

    // structural checks run by make(); the expensive per-cell ball condition
    // (proper-face subcomplex has the homology of a sphere) is separate
    void validate_ball_condition() const;

    // true when every cell is a simplex on its vertex set; fills, for each
    // cell, the ordered vertex list and the sign of the reference orientation
    // against the vertex-order orientation
    bool is_simplicial() const;
    const std::vector<std::vector<int>>& simplex_vertices() const;  // cell -> vertex cells
    const std::vector<i64>& orientation_vs_vertex_order() const;

  private:
    std::string name_;
    std::vector<CellRec> cells_;  // sorted by (dim, id)
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, i64>>> bnd_;
    std::vector<std::vector<int>> faces_, cofaces_;
    std::vector<std::vector<int>> by_dim_;
    int top_dim_ = -1;
    // simpliciality cache
    mutable int simplicial_ = -1;  // -1 unknown, 0 no, 1 yes
    mutable std::vector<std::vector<int>> simp_verts_;
    mutable std::vector<i64> orient_sign_;
    void compute_simplicial() const;
};

// Downward-closed set of cells of a parent complex.
struct SubcomplexRef {
    ComplexPtr parent;
    std::vector<int> cells;  // sorted indices

    bool contains(int cell) const;
    static SubcomplexRef make(ComplexPtr parent, std::vector<int> cells);  // validates closure
    static SubcomplexRef empty(ComplexPtr parent);
    static SubcomplexRef full(ComplexPtr parent);
    ComplexPtr as_complex(const std::string& name = "") const;
};

struct OrientedCell {
    int cell = 0;
    int sign = 1;  // +1 or -1 against the reference orientation
};

// A subdivision K' of K given by explicit refinement data: a carrier map and
// the induced chain map cl(K) -> cl(K').
struct Subdivision {
    ComplexPtr coarse, fine;
    std::vector<int> carrier;             // fine cell -> coarse cell
    std::vector<CellChain> chain_map;     // coarse cell -> chain of fine cells

    static Subdivision make(ComplexPtr coarse, ComplexPtr fine, std::vector<int> carrier,
                            std::vector<CellChain> chain_map);  // validates
    bool residual(int coarse_cell) const;  // subdivided trivially?
};

// ---- constructors ---------------------------------------------------------

ComplexPtr simplex(int n);  // standard Delta^n, alternating-sum incidences
ComplexPtr point();
ComplexPtr interval();  // 0-cells "0","1"; 1-cell "I" with dI = 1 - 0
ComplexPtr product(const std::vector<ComplexPtr>& factors, std::string name = "");
ComplexPtr product(ComplexPtr a, ComplexPtr b);

// product cell ids are "(a|b|...)"; helpers to build/split them
std::string product_cell_id(const std::vector<std::string>& parts);
std::vector<std::string> split_product_cell_id(const std::string& id);

ComplexPtr model_M();
ComplexPtr model_M_prime();
Subdivision m_refinement();  // M' as a subdivision of M

SubcomplexRef horn(int n, int i);  // inside simplex(n): drop top cell and face i
SubcomplexRef boundary_subcomplex(ComplexPtr K);  // closure of cells of dim < top

struct BarycentricSubdivision {
    ComplexPtr sd;
    Subdivision refinement;
};
BarycentricSubdivision barycentric_subdivision(ComplexPtr K);  // K simplicial

struct StarLinkDual {
    ComplexPtr sd;
    SubcomplexRef star, link, dual, dual_boundary;
};
StarLinkDual star_link_dual(ComplexPtr K, const std::string& cell_id);

// relative cellular chains cl(K)/cl(L); basis = cells not in L ordered by
// (dim, id); returns the complex and the per-degree cell indices of the basis
struct CellularChains {
    IntegerChainComplex C;
    std::map<int, std::vector<int>> basis;        // degree -> parent cell indices
    std::map<int, std::map<int, int>> position;   // degree -> cell -> basis pos
};
CellularChains cellular_chains(ComplexPtr K, const SubcomplexRef& L);
CellularChains cellular_chains(ComplexPtr K);

// ---- fundamental chains ----------------------------------------------------

struct FundamentalChain {
    bool orientable = false;
    CellChain chain;          // empty when no coherent orientation exists
    CellChain boundary;       // boundary of the chain
};

// signs: explicit orientation of the top cells, or empty to auto-propagate
FundamentalChain fundamental_chain(ComplexPtr K, const std::map<std::string, i64>& signs = {});

// chain map of the barycentric-type subdivision for a simplicial complex:
// full-flag expansion with permutation signs (used by Subdivision builders)
CellChain flag_expansion(ComplexPtr K, ComplexPtr sd, int coarse_cell);

}  // namespace adt
