#include "adt/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace adt {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](i64 x) { return x == 0; });
}

Mat Mat::transposed() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat mul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw error("mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            i64 v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = checked_add(C.at(i, j), checked_mul(v, B.at(k, j)));
        }
    return C;
}

Mat add(const Mat& A, const Mat& B, i64 scale_b) {
    if (A.rows != B.rows || A.cols != B.cols) throw error("add: shape mismatch");
    Mat C(A.rows, A.cols);
    for (size_t t = 0; t < A.a.size(); ++t)
        C.a[t] = checked_add(A.a[t], checked_mul(scale_b, B.a[t]));
    return C;
}

Mat scale(const Mat& A, i64 c) {
    Mat C(A.rows, A.cols);
    for (size_t t = 0; t < A.a.size(); ++t) C.a[t] = checked_mul(c, A.a[t]);
    return C;
}

Mat concat_cols(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw error("concat_cols: row mismatch");
    Mat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

std::vector<i64> apply(const Mat& A, const std::vector<i64>& x) {
    if (static_cast<int>(x.size()) != A.cols) throw error("apply: shape mismatch");
    std::vector<i64> y(A.rows, 0);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            y[i] = checked_add(y[i], checked_mul(A.at(i, j), x[j]));
    return y;
}

std::vector<i64> Snf::diagonal() const {
    std::vector<i64> d;
    for (int i = 0; i < rank; ++i) d.push_back(D.at(i, i));
    return d;
}

namespace {
bool g_verify_snf = false;

struct SnfWork {
    Mat D, U, V;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < D.rows; ++r) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    }
    // row_i += q * row_j
    void add_row(int i, int j, i64 q) {
        for (int c = 0; c < D.cols; ++c)
            D.at(i, c) = checked_add(D.at(i, c), checked_mul(q, D.at(j, c)));
        for (int c = 0; c < U.cols; ++c)
            U.at(i, c) = checked_add(U.at(i, c), checked_mul(q, U.at(j, c)));
    }
    void add_col(int i, int j, i64 q) {
        for (int r = 0; r < D.rows; ++r)
            D.at(r, i) = checked_add(D.at(r, i), checked_mul(q, D.at(r, j)));
        for (int r = 0; r < V.rows; ++r)
            V.at(r, i) = checked_add(V.at(r, i), checked_mul(q, V.at(r, j)));
    }
    void negate_row(int i) {
        for (int c = 0; c < D.cols; ++c) D.at(i, c) = -D.at(i, c);
        for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    }
};
}  // namespace

void set_snf_verification(bool on) { g_verify_snf = on; }
bool snf_verification() { return g_verify_snf; }

Snf smith(const Mat& A) {
    SnfWork w;
    w.D = A;
    w.U = Mat::identity(A.rows);
    w.V = Mat::identity(A.cols);
    int n = std::min(A.rows, A.cols);
    int r = 0;
    while (r < n) {
        // smallest nonzero pivot in the trailing submatrix
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = r; i < A.rows; ++i)
            for (int j = r; j < A.cols; ++j) {
                i64 v = w.D.at(i, j);
                if (v != 0 && (pi < 0 || std::abs(v) < best)) {
                    pi = i;
                    pj = j;
                    best = std::abs(v);
                }
            }
        if (pi < 0) break;
        w.swap_rows(r, pi);
        w.swap_cols(r, pj);

        bool clean = true;
        for (int i = r + 1; i < A.rows; ++i) {
            i64 v = w.D.at(i, r);
            if (v == 0) continue;
            i64 q = v / w.D.at(r, r);
            if (q != 0) w.add_row(i, r, -q);
            if (w.D.at(i, r) != 0) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;
        for (int j = r + 1; j < A.cols; ++j) {
            i64 v = w.D.at(r, j);
            if (v == 0) continue;
            i64 q = v / w.D.at(r, r);
            if (q != 0) w.add_col(j, r, -q);
            if (w.D.at(r, j) != 0) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;

        // enforce divisibility against the trailing block
        i64 p = w.D.at(r, r);
        bool fixed = false;
        for (int i = r + 1; i < A.rows && !fixed; ++i)
            for (int j = r + 1; j < A.cols && !fixed; ++j)
                if (w.D.at(i, j) % p != 0) {
                    w.add_row(r, i, 1);
                    fixed = true;
                }
        if (fixed) continue;

        if (w.D.at(r, r) < 0) w.negate_row(r);
        ++r;
    }
    Snf out{std::move(w.U), std::move(w.D), std::move(w.V), r};
    if (g_verify_snf) {
        Mat lhs = mul(mul(out.U, A), out.V);
        if (!(lhs == out.D)) throw error("smith: reconstruction U*A*V != D");
        for (int i = 0; i < out.D.rows; ++i)
            for (int j = 0; j < out.D.cols; ++j)
                if (i != j && out.D.at(i, j) != 0)
                    throw error("smith: D not diagonal");
        for (int i = 0; i + 1 < out.rank; ++i)
            if (out.D.at(i + 1, i + 1) % out.D.at(i, i) != 0)
                throw error("smith: divisibility violated");
    }
    return out;
}

int rank_bareiss(const Mat& A) {
    // fraction-free elimination; works on a copy with row/col pivoting
    Mat M = A;
    int rows = M.rows, cols = M.cols;
    int r = 0;
    i64 prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (M.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(M.at(r, j), M.at(p, j));
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                i64 num = checked_add(checked_mul(M.at(r, c), M.at(i, j)),
                                      -checked_mul(M.at(i, c), M.at(r, j)));
                M.at(i, j) = num / prev;
            }
            M.at(i, c) = 0;
        }
        prev = M.at(r, c);
        ++r;
    }
    return r;
}

Mat kernel_basis(const Mat& A) {
    if (A.cols == 0) return Mat(0, 0);
    if (A.rows == 0) return Mat::identity(A.cols);
    Snf s = smith(A);
    int k = A.cols - s.rank;
    Mat K(A.cols, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < A.cols; ++i) K.at(i, j) = s.V.at(i, s.rank + j);
    return K;
}

std::optional<std::vector<i64>> solve(const Mat& A, const std::vector<i64>& b) {
    if (static_cast<int>(b.size()) != A.rows) throw error("solve: shape mismatch");
    if (A.cols == 0) {
        for (i64 x : b)
            if (x != 0) return std::nullopt;
        return std::vector<i64>{};
    }
    Snf s = smith(A);
    std::vector<i64> ub = apply(s.U, b);
    std::vector<i64> y(A.cols, 0);
    for (int i = 0; i < static_cast<int>(ub.size()); ++i) {
        if (i < s.rank) {
            i64 d = s.D.at(i, i);
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return apply(s.V, y);
}

std::optional<Mat> solve_cols(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw error("solve_cols: shape mismatch");
    Snf s = smith(A);
    Mat X(A.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        std::vector<i64> b(B.rows);
        for (int i = 0; i < B.rows; ++i) b[i] = B.at(i, j);
        std::vector<i64> ub = apply(s.U, b);
        std::vector<i64> y(A.cols, 0);
        for (int i = 0; i < static_cast<int>(ub.size()); ++i) {
            if (i < s.rank) {
                i64 d = s.D.at(i, i);
                if (ub[i] % d != 0) return std::nullopt;
                y[i] = ub[i] / d;
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
        std::vector<i64> x = apply(s.V, y);
        for (int i = 0; i < A.cols; ++i) X.at(i, j) = x[i];
    }
    return X;
}

bool lattice_member(const Mat& L, const std::vector<i64>& v) {
    return solve(L, v).has_value();
}

bool lattice_subset(const Mat& A, const Mat& B) {
    if (A.cols == 0) return true;
    return solve_cols(B, A).has_value();
}

bool lattice_equal(const Mat& A, const Mat& B) {
    return lattice_subset(A, B) && lattice_subset(B, A);
}

Mat preimage_lattice(const Mat& M, const Mat& R) {
    // { x : M x in span(R) } = projection of ker[M | -R] to the x block
    Mat block = concat_cols(M, scale(R, -1));
    Mat K = kernel_basis(block);
    Mat P(M.cols, K.cols);
    for (int j = 0; j < K.cols; ++j)
        for (int i = 0; i < M.cols; ++i) P.at(i, j) = K.at(i, j);
    return P;
}

std::string GroupType::str() const {
    std::ostringstream os;
    bool first = true;
    if (betti > 0) {
        os << "Z";
        if (betti > 1) os << "^" << betti;
        first = false;
    }
    for (i64 t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

GroupType Subquotient::invariants() const {
    Snf s = smith(rel);
    GroupType g;
    g.betti = basis.cols - s.rank;
    for (i64 d : s.diagonal())
        if (d > 1) g.torsion.push_back(d);
    return g;
}

std::optional<std::vector<i64>> Subquotient::coords(const std::vector<i64>& v) const {
    return solve(basis, v);
}

bool Subquotient::is_zero_class(const std::vector<i64>& v) const {
    auto c = coords(v);
    if (!c) return false;
    return lattice_member(rel, *c);
}

bool Subquotient::same_class(const std::vector<i64>& u, const std::vector<i64>& v) const {
    std::vector<i64> d(u.size());
    for (size_t i = 0; i < u.size(); ++i) d[i] = checked_add(u[i], -v[i]);
    return is_zero_class(d);
}

Subquotient make_subquotient(const Mat& gens, const Mat& bounds) {
    Subquotient q;
    q.ambient = gens.rows;
    if (gens.cols == 0) {
        q.basis = Mat(gens.rows, 0);
        q.rel = Mat(0, 0);
        if (!bounds.is_zero() && bounds.cols > 0)
            throw error("make_subquotient: bounds not inside zero lattice");
        return q;
    }
    Snf s = smith(gens);
    // basis = first rank columns of gens*V (= d_i * Uinv e_i)
    Mat GV = mul(gens, s.V);
    q.basis = Mat(gens.rows, s.rank);
    for (int j = 0; j < s.rank; ++j)
        for (int i = 0; i < gens.rows; ++i) q.basis.at(i, j) = GV.at(i, j);
    auto r = solve_cols(q.basis, bounds);
    if (!r) throw error("make_subquotient: bounds not inside cycle lattice");
    q.rel = *r;
    return q;
}

std::optional<Mat> induced_map(const Mat& f, const Subquotient& S, const Subquotient& T) {
    Mat fb = mul(f, S.basis);
    return solve_cols(T.basis, fb);
}

int signature_of_form(const Mat& G0) {
    if (G0.rows != G0.cols) throw error("signature_of_form: not square");
    int n = G0.rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (G0.at(i, j) != G0.at(j, i)) throw error("signature_of_form: not symmetric");
    // rational congruence diagonalization, stored as num/den pairs
    struct Q {
        long double v;  // not used; exact below
    };
    // Work over exact fractions with i64 numerators/denominators via cross
    // multiplication: keep an integer matrix and a positive denominator.
    // Simpler: scale rows/cols to stay integral. Pivot steps:
    //   G' = d*G - (row)(col)   with d = pivot, applied to the complement,
    // multiplies the form by the positive number d^2 on that block, so the
    // signature is unchanged.
    Mat G = G0;
    int sig = 0;
    std::vector<int> live(n);
    std::iota(live.begin(), live.end(), 0);
    while (!live.empty()) {
        int m = static_cast<int>(live.size());
        int p = -1;
        for (int i = 0; i < m; ++i)
            if (G.at(live[i], live[i]) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // all diagonal zero: find offdiagonal pair -> hyperbolic, +1 -1
            int qi = -1, qj = -1;
            for (int i = 0; i < m && qi < 0; ++i)
                for (int j = i + 1; j < m && qi < 0; ++j)
                    if (G.at(live[i], live[j]) != 0) {
                        qi = i;
                        qj = j;
                    }
            if (qi < 0) break;  // zero form on the rest
            // row/col add: e_i += e_j makes diagonal 2*G[i][j] != 0
            int a = live[qi], b = live[qj];
            for (int t = 0; t < n; ++t) G.at(a, t) = checked_add(G.at(a, t), G.at(b, t));
            for (int t = 0; t < n; ++t) G.at(t, a) = checked_add(G.at(t, a), G.at(t, b));
            p = qi;
        }
        int a = live[p];
        i64 d = G.at(a, a);
        sig += (d > 0) ? 1 : -1;
        std::vector<int> rest;
        for (int i = 0; i < m; ++i)
            if (i != p) rest.push_back(live[i]);
        // block update: for i,j in rest: G[i][j] = (d*G[i][j] - G[i][a]*G[a][j]) / g
        // we cannot divide in general; multiply block by d instead (d^2 scaling
        // of the quadratic form on the complement preserves signs). To keep
        // entries small, divide by gcd afterwards.
        i64 sgn = (d > 0) ? 1 : -1;  // scale complement by |d|, not d
        for (int i : rest)
            for (int j : rest)
                G.at(i, j) = checked_mul(
                    sgn, checked_add(checked_mul(d, G.at(i, j)),
                                     -checked_mul(G.at(i, a), G.at(a, j))));
        // normalize by gcd^2-safe common factor (any positive common divisor
        // of the full symmetric block keeps congruence class of signs)
        i64 g = 0;
        for (int i : rest)
            for (int j : rest) g = std::gcd(g, std::abs(G.at(i, j)));
        if (g > 1)
            for (int i : rest)
                for (int j : rest) G.at(i, j) /= g;
        live = std::move(rest);
    }
    return sig;
}

}  // namespace adt
