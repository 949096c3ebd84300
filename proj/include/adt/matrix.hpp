#pragma once

#include <optional>
#include <vector>

#include "adt/util.hpp"

namespace adt {

// Dense integer matrix, row-major. All arithmetic is exact and
// overflow-checked; overflow throws adt::error.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    i64& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i64 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    static Mat zero(int r, int c) { return Mat(r, c); }

    bool is_zero() const;
    Mat transposed() const;
    bool operator==(const Mat& o) const = default;
};

Mat mul(const Mat& A, const Mat& B);
Mat add(const Mat& A, const Mat& B, i64 scale_b = 1);
Mat scale(const Mat& A, i64 c);
Mat concat_cols(const Mat& A, const Mat& B);
std::vector<i64> apply(const Mat& A, const std::vector<i64>& x);

// Smith normal form U*A*V = D, U and V unimodular (built from elementary
// row/column operations), D diagonal with d_1 | d_2 | ... >= 0.
struct Snf {
    Mat U, D, V;
    int rank = 0;
    std::vector<i64> diagonal() const;  // nonzero entries, divisibility order
};

// Global switch: when enabled, every smith() call re-checks U*A*V == D and
// the diagonal divisibility. Test binaries turn this on.
void set_snf_verification(bool on);
bool snf_verification();

Snf smith(const Mat& A);

// rank over Q, fraction-free Gaussian elimination (independent of smith())
int rank_bareiss(const Mat& A);

// columns form a basis of { x : A x = 0 } (saturated lattice)
Mat kernel_basis(const Mat& A);

// one integer solution of A x = b, if any
std::optional<std::vector<i64>> solve(const Mat& A, const std::vector<i64>& b);

// solve A X = B columnwise; nullopt if any column unsolvable
std::optional<Mat> solve_cols(const Mat& A, const Mat& B);

// is v in the lattice spanned by the columns of L?
bool lattice_member(const Mat& L, const std::vector<i64>& v);
bool lattice_subset(const Mat& A, const Mat& B);  // span A <= span B
bool lattice_equal(const Mat& A, const Mat& B);

// basis (columns) of { x : M x in span(R) }
Mat preimage_lattice(const Mat& M, const Mat& R);

// Isomorphism type of a finitely generated abelian group.
struct GroupType {
    i64 betti = 0;
    std::vector<i64> torsion;  // in divisibility order, entries > 1
    bool operator==(const GroupType& o) const = default;
    std::string str() const;
};

// A subquotient of Z^n presented by a basis of the cycle lattice and
// relations written in basis coordinates.
struct Subquotient {
    int ambient = 0;
    Mat basis;  // ambient x g, full column rank
    Mat rel;    // g x r
    GroupType invariants() const;
    std::optional<std::vector<i64>> coords(const std::vector<i64>& v) const;
    bool is_zero_class(const std::vector<i64>& v) const;
    bool same_class(const std::vector<i64>& u, const std::vector<i64>& v) const;
};

// gens: ambient x g generating the cycle lattice; bounds: ambient x r with
// span(bounds) <= span(gens) (checked).
Subquotient make_subquotient(const Mat& gens, const Mat& bounds);

// matrix of the induced map between subquotients, in basis coordinates;
// requires f(span S.basis) <= span T.basis (checked) and f(rel) ~ 0 is not
// required here (callers verify well-definedness where it matters).
std::optional<Mat> induced_map(const Mat& f, const Subquotient& S, const Subquotient& T);

// signature of a symmetric integer matrix (exact, rational pivoting)
int signature_of_form(const Mat& G);

}  // namespace adt
