#include "adt/chain.hpp"

#include <algorithm>

namespace adt {

IntegerChainComplex IntegerChainComplex::make(const std::map<int, int>& ranks,
                                              const std::map<int, Mat>& diffs) {
    IntegerChainComplex c;
    int lo = 0, hi = -1;
    bool any = false;
    for (auto& [n, r] : ranks) {
        if (r < 0) throw error("chain complex: negative rank");
        if (r == 0) continue;
        if (!any) {
            lo = hi = n;
            any = true;
        } else {
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
    }
    if (!any) return c;
    c.lo_ = lo;
    c.hi_ = hi;
    c.ranks_.assign(hi - lo + 1, 0);
    for (auto& [n, r] : ranks)
        if (r > 0) c.ranks_[n - lo] = r;
    for (auto& [n, M] : diffs) {
        if (M.rows == 0 && M.cols == 0) continue;
        if (M.rows != c.rank(n - 1) || M.cols != c.rank(n))
            throw error("chain complex: differential shape mismatch at degree " +
                        std::to_string(n));
        if (!M.is_zero()) c.diffs_[n] = M;
    }
    c.validate();
    return c;
}

int IntegerChainComplex::rank(int n) const {
    if (n < lo_ || n > hi_) return 0;
    return ranks_[n - lo_];
}

const Mat& IntegerChainComplex::diff(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end()) return it->second;
    static thread_local std::map<std::pair<int, int>, Mat> zeros;
    auto key = std::make_pair(rank(n - 1), rank(n));
    auto [it2, _] = zeros.emplace(key, Mat(key.first, key.second));
    return it2->second;
}

int IntegerChainComplex::total_rank() const {
    int t = 0;
    for (int n = lo_; n <= hi_; ++n) t += rank(n);
    return t;
}

void IntegerChainComplex::validate() const {
    for (int n = lo_; n <= hi_ + 1; ++n) {
        if (rank(n) == 0 || rank(n - 2) == 0) continue;
        if (rank(n - 1) == 0) {
            continue;
        }
        if (!mul(diff(n - 1), diff(n)).is_zero())
            throw error("chain complex: d^2 != 0 at degree " + std::to_string(n));
    }
}

ComplexHomology smith_homology(const IntegerChainComplex& C) {
    ComplexHomology H;
    for (int n = C.lo(); n <= C.hi(); ++n) {
        int rn = C.rank(n);
        if (rn == 0) continue;
        int rank_dn = (C.rank(n - 1) > 0) ? smith(C.diff(n)).rank : 0;
        GroupType g;
        std::vector<i64> tors;
        if (C.rank(n + 1) > 0) {
            Snf s = smith(C.diff(n + 1));
            g.betti = rn - rank_dn - s.rank;
            for (i64 d : s.diagonal())
                if (d > 1) tors.push_back(d);
        } else {
            g.betti = rn - rank_dn;
        }
        g.torsion = std::move(tors);
        if (g.betti != 0 || !g.torsion.empty()) H[n] = g;
    }
    return H;
}

bool is_acyclic(const IntegerChainComplex& C) { return smith_homology(C).empty(); }

Subquotient homology_subquotient(const IntegerChainComplex& C, int n) {
    int rn = C.rank(n);
    Mat cycles = (C.rank(n - 1) > 0) ? kernel_basis(C.diff(n)) : Mat::identity(rn);
    Mat bounds = (C.rank(n + 1) > 0) ? C.diff(n + 1) : Mat(rn, 0);
    return make_subquotient(cycles, bounds);
}

IntegerChainComplex hom_dual(const IntegerChainComplex& C) {
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    for (int m = C.lo(); m <= C.hi(); ++m)
        if (C.rank(m) > 0) ranks[-m] = C.rank(m);
    // d : D_{-m} -> D_{-m-1} is -(-1)^{-m} (d_{m+1})^T = (-1)^{m+1} d_{m+1}^T
    for (int m = C.lo(); m <= C.hi(); ++m) {
        if (C.rank(m) == 0 || C.rank(m + 1) == 0) continue;
        diffs[-m] = scale(C.diff(m + 1).transposed(), sign_pow(m + 1));
    }
    return IntegerChainComplex::make(ranks, diffs);
}

IntegerChainComplex shift_complex(const IntegerChainComplex& C, int k) {
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    for (int n = C.lo(); n <= C.hi(); ++n) {
        if (C.rank(n) > 0) ranks[n + k] = C.rank(n);
        if (C.rank(n) > 0 && C.rank(n - 1) > 0)
            diffs[n + k] = scale(C.diff(n), sign_pow(k));
    }
    return IntegerChainComplex::make(ranks, diffs);
}

IntegerChainComplex direct_sum(const IntegerChainComplex& A, const IntegerChainComplex& B) {
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
    for (int n = lo; n <= hi; ++n) {
        int r = A.rank(n) + B.rank(n);
        if (r) ranks[n] = r;
    }
    for (int n = lo; n <= hi + 1; ++n) {
        int r0 = A.rank(n - 1) + B.rank(n - 1), r1 = A.rank(n) + B.rank(n);
        if (!r0 || !r1) continue;
        Mat M(r0, r1);
        for (int i = 0; i < A.rank(n - 1); ++i)
            for (int j = 0; j < A.rank(n); ++j) M.at(i, j) = A.diff(n).at(i, j);
        for (int i = 0; i < B.rank(n - 1); ++i)
            for (int j = 0; j < B.rank(n); ++j)
                M.at(A.rank(n - 1) + i, A.rank(n) + j) = B.diff(n).at(i, j);
        diffs[n] = M;
    }
    return IntegerChainComplex::make(ranks, diffs);
}

int TensorLayout::size(int n) const {
    int s = 0;
    for (int p = A->lo(); p <= A->hi(); ++p) s += A->rank(p) * B->rank(n - p);
    return s;
}

int TensorLayout::index(int n, int p, int i, int j) const {
    int off = 0;
    for (int q = A->lo(); q < p; ++q) off += A->rank(q) * B->rank(n - q);
    return off + i * B->rank(n - p) + j;
}

IntegerChainComplex tensor_complex(const IntegerChainComplex& A,
                                   const IntegerChainComplex& B) {
    TensorLayout L{&A, &B};
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    int lo = A.lo() + B.lo(), hi = A.hi() + B.hi();
    for (int n = lo; n <= hi; ++n)
        if (L.size(n)) ranks[n] = L.size(n);
    for (int n = lo; n <= hi; ++n) {
        if (!L.size(n) || !L.size(n - 1)) continue;
        Mat M(L.size(n - 1), L.size(n));
        for (int p = A.lo(); p <= A.hi(); ++p) {
            int q = n - p;
            if (A.rank(p) == 0 || B.rank(q) == 0) continue;
            for (int i = 0; i < A.rank(p); ++i)
                for (int j = 0; j < B.rank(q); ++j) {
                    int col = L.index(n, p, i, j);
                    if (A.rank(p - 1) > 0) {
                        const Mat& dA = A.diff(p);
                        for (int i2 = 0; i2 < A.rank(p - 1); ++i2)
                            if (dA.at(i2, i) != 0)
                                M.at(L.index(n - 1, p - 1, i2, j), col) += dA.at(i2, i);
                    }
                    if (B.rank(q - 1) > 0) {
                        const Mat& dB = B.diff(q);
                        for (int j2 = 0; j2 < B.rank(q - 1); ++j2)
                            if (dB.at(j2, j) != 0)
                                M.at(L.index(n - 1, p, i, j2), col) +=
                                    sign_pow(p) * dB.at(j2, j);
                    }
                }
        }
        diffs[n] = M;
    }
    return IntegerChainComplex::make(ranks, diffs);
}

const Mat& GradedChainMap::component(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    static thread_local std::map<std::pair<int, int>, Mat> zeros;
    auto key = std::make_pair(dst->rank(n + deg), src->rank(n));
    auto [it2, _] = zeros.emplace(key, Mat(key.first, key.second));
    return it2->second;
}

bool GradedChainMap::is_chain_map() const {
    for (int n = src->lo(); n <= src->hi() + 1; ++n) {
        Mat lhs = mul(dst->diff(n + deg), component(n));
        Mat rhs = scale(mul(component(n - 1), src->diff(n)), sign_pow(deg));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

IntegerChainComplex mapping_cone(const GradedChainMap& f) {
    const IntegerChainComplex &A = *f.src, &B = *f.dst;
    int j = f.deg;
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    int lo = std::min(A.lo() + 1 + j, B.lo()), hi = std::max(A.hi() + 1 + j, B.hi());
    auto arank = [&](int n) { return A.rank(n - 1 - j); };
    for (int n = lo; n <= hi; ++n) {
        int r = arank(n) + B.rank(n);
        if (r) ranks[n] = r;
    }
    for (int n = lo; n <= hi; ++n) {
        int r0 = arank(n - 1) + B.rank(n - 1), r1 = arank(n) + B.rank(n);
        if (!r0 || !r1) continue;
        Mat M(r0, r1);
        int am = n - 1 - j;  // source degree of the A block
        if (arank(n) && arank(n - 1)) {
            const Mat& dA = A.diff(am);
            for (int i = 0; i < dA.rows; ++i)
                for (int c = 0; c < dA.cols; ++c)
                    M.at(i, c) = -sign_pow(j) * dA.at(i, c);
        }
        if (arank(n) && B.rank(n - 1)) {
            const Mat& F = f.component(am);
            for (int i = 0; i < F.rows; ++i)
                for (int c = 0; c < F.cols; ++c) M.at(arank(n - 1) + i, c) = F.at(i, c);
        }
        if (B.rank(n) && B.rank(n - 1)) {
            const Mat& dB = B.diff(n);
            for (int i = 0; i < dB.rows; ++i)
                for (int c = 0; c < dB.cols; ++c)
                    M.at(arank(n - 1) + i, arank(n) + c) = dB.at(i, c);
        }
        diffs[n] = M;
    }
    return IntegerChainComplex::make(ranks, diffs);
}

bool is_quasi_iso(const GradedChainMap& f) {
    if (!f.is_chain_map()) throw error("is_quasi_iso: not a chain map");
    return is_acyclic(mapping_cone(f));
}

IntegerChainComplex restrict_complex(const IntegerChainComplex& C,
                                     const std::map<int, std::vector<int>>& keep) {
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    auto kept = [&](int n) -> const std::vector<int>* {
        auto it = keep.find(n);
        return it == keep.end() ? nullptr : &it->second;
    };
    for (auto& [n, v] : keep)
        if (!v.empty()) ranks[n] = static_cast<int>(v.size());
    for (auto& [n, v] : keep) {
        if (v.empty()) continue;
        auto below = kept(n - 1);
        std::map<int, int> pos;
        if (below)
            for (size_t t = 0; t < below->size(); ++t) pos[(*below)[t]] = static_cast<int>(t);
        if (C.rank(n - 1) == 0) continue;
        const Mat& d = C.diff(n);
        Mat M(below ? static_cast<int>(below->size()) : 0, static_cast<int>(v.size()));
        for (size_t j = 0; j < v.size(); ++j)
            for (int i = 0; i < d.rows; ++i) {
                i64 val = d.at(i, v[j]);
                if (val == 0) continue;
                auto it = pos.find(i);
                if (it == pos.end())
                    throw error("restrict_complex: span not closed under d");
                M.at(it->second, static_cast<int>(j)) = val;
            }
        if (M.rows) diffs[n] = M;
    }
    return IntegerChainComplex::make(ranks, diffs);
}

IntegerChainComplex quotient_complex(const IntegerChainComplex& C,
                                     const std::map<int, std::vector<int>>& kill,
                                     std::map<int, std::vector<int>>* surviving) {
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    std::map<int, std::vector<int>> surv;
    for (int n = C.lo(); n <= C.hi(); ++n) {
        std::vector<char> killed(C.rank(n), 0);
        auto it = kill.find(n);
        if (it != kill.end())
            for (int i : it->second) killed[i] = 1;
        std::vector<int> s;
        for (int i = 0; i < C.rank(n); ++i)
            if (!killed[i]) s.push_back(i);
        surv[n] = std::move(s);
        if (!surv[n].empty()) ranks[n] = static_cast<int>(surv[n].size());
    }
    for (int n = C.lo(); n <= C.hi(); ++n) {
        if (surv[n].empty() || C.rank(n - 1) == 0 || surv[n - 1].empty()) continue;
        const Mat& d = C.diff(n);
        Mat M(static_cast<int>(surv[n - 1].size()), static_cast<int>(surv[n].size()));
        for (size_t j = 0; j < surv[n].size(); ++j)
            for (size_t i = 0; i < surv[n - 1].size(); ++i)
                M.at(static_cast<int>(i), static_cast<int>(j)) = d.at(surv[n - 1][i], surv[n][j]);
        diffs[n] = M;
    }
    if (surviving) *surviving = surv;
    return IntegerChainComplex::make(ranks, diffs);
}

int HomComplex::size(int m) const {
    int s = 0;
    for (int j = A->lo(); j <= A->hi(); ++j) s += A->rank(j) * C->rank(j + m);
    return s;
}

int HomComplex::index(int m, int j, int i, int u) const {
    int off = 0;
    for (int t = A->lo(); t < j; ++t) off += A->rank(t) * C->rank(t + m);
    return off + u * C->rank(j + m) + i;
}

HomComplex hom_complex(const IntegerChainComplex& A, const IntegerChainComplex& C) {
    HomComplex H;
    H.A = &A;
    H.C = &C;
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    int lo = C.lo() - A.hi(), hi = C.hi() - A.lo();
    for (int m = lo; m <= hi; ++m)
        if (H.size(m)) ranks[m] = H.size(m);
    for (int m = lo; m <= hi; ++m) {
        if (!H.size(m) || !H.size(m - 1)) continue;
        Mat M(H.size(m - 1), H.size(m));
        // (D nu)_j = d_C . nu_j - (-1)^m nu_{j-1} . d_A
        for (int j = A.lo(); j <= A.hi(); ++j) {
            if (A.rank(j) == 0 || C.rank(j + m) == 0) continue;
            for (int u = 0; u < A.rank(j); ++u)
                for (int i = 0; i < C.rank(j + m); ++i) {
                    int col = H.index(m, j, i, u);
                    if (C.rank(j + m - 1) > 0) {
                        const Mat& dC = C.diff(j + m);
                        for (int i2 = 0; i2 < C.rank(j + m - 1); ++i2)
                            if (dC.at(i2, i) != 0)
                                M.at(H.index(m - 1, j, i2, u), col) += dC.at(i2, i);
                    }
                    if (A.rank(j + 1) > 0 && C.rank(j + m) > 0) {
                        const Mat& dA = A.diff(j + 1);
                        for (int u2 = 0; u2 < A.rank(j + 1); ++u2)
                            if (dA.at(u, u2) != 0)
                                M.at(H.index(m - 1, j + 1, i, u2), col) -=
                                    sign_pow(m) * dA.at(u, u2);
                    }
                }
        }
        diffs[m] = M;
    }
    H.total = IntegerChainComplex::make(ranks, diffs);
    return H;
}

RandomComplex random_complex(Rng& rng, int min_deg, int max_deg, int max_pieces) {
    // assemble elementary pieces with known homology
    std::map<int, int> ranks;
    ComplexHomology known;
    int pieces = static_cast<int>(rand_range(rng, 1, max_pieces));
    struct Piece {
        int kind;  // 0: sphere Z at n ; 1: Z -m-> Z at degrees n+1 -> n
        int n;
        i64 m;
    };
    std::vector<Piece> ps;
    for (int t = 0; t < pieces; ++t) {
        Piece p;
        p.kind = static_cast<int>(rand_range(rng, 0, 1));
        p.n = static_cast<int>(rand_range(rng, min_deg, max_deg - (p.kind ? 1 : 0)));
        p.m = p.kind ? rand_range(rng, 1, 4) : 0;
        ps.push_back(p);
    }
    for (auto& p : ps) {
        ranks[p.n] += 1;
        if (p.kind == 1) ranks[p.n + 1] += 1;
    }
    std::map<int, Mat> diffs;
    for (auto& [n, r] : ranks)
        diffs[n] = Mat(ranks.count(n - 1) ? ranks[n - 1] : 0, r);
    std::map<int, int> next_slot;
    for (auto& p : ps) {
        if (p.kind == 0) {
            next_slot[p.n]++;
        } else {
            int s_lo = next_slot[p.n]++;
            int s_hi = next_slot[p.n + 1]++;
            diffs[p.n + 1].at(s_lo, s_hi) = p.m;
        }
    }
    // known homology
    std::map<int, std::pair<i64, std::vector<i64>>> acc;
    for (auto& p : ps) {
        if (p.kind == 0)
            acc[p.n].first += 1;
        else if (p.m > 1)
            acc[p.n].second.push_back(p.m);
    }
    for (auto& [n, bt] : acc) {
        if (bt.first == 0 && bt.second.empty()) continue;
        GroupType g;
        g.betti = bt.first;
        // normalize torsion to divisibility order via SNF of diagonal
        if (!bt.second.empty()) {
            Mat D(static_cast<int>(bt.second.size()), static_cast<int>(bt.second.size()));
            for (size_t i = 0; i < bt.second.size(); ++i)
                D.at(static_cast<int>(i), static_cast<int>(i)) = bt.second[i];
            for (i64 d : smith(D).diagonal())
                if (d > 1) g.torsion.push_back(d);
        }
        known[n] = g;
    }
    // shear disguise: random elementary ops on each degree's basis
    IntegerChainComplex C = IntegerChainComplex::make(ranks, diffs);
    std::map<int, Mat> d2;
    for (int n = C.lo(); n <= C.hi(); ++n)
        if (C.rank(n) && C.rank(n - 1)) d2[n] = C.diff(n);
    for (int n = C.lo(); n <= C.hi(); ++n) {
        int r = C.rank(n);
        for (int t = 0; t < 2 * r; ++t) {
            int i = static_cast<int>(rand_range(rng, 0, r - 1));
            int j = static_cast<int>(rand_range(rng, 0, r - 1));
            if (i == j) continue;
            i64 q = rand_range(rng, -2, 2);
            if (!q) continue;
            // basis change e_i += q e_j : columns of d_n, rows of d_{n+1}
            if (d2.count(n)) {
                Mat& d = d2[n];
                for (int rr = 0; rr < d.rows; ++rr)
                    d.at(rr, j) = checked_add(d.at(rr, j), checked_mul(q, d.at(rr, i)));
            }
            if (d2.count(n + 1)) {
                Mat& d = d2[n + 1];
                for (int cc = 0; cc < d.cols; ++cc)
                    d.at(i, cc) = checked_add(d.at(i, cc), checked_mul(-q, d.at(j, cc)));
            }
        }
    }
    std::map<int, int> ranks2;
    for (int n = C.lo(); n <= C.hi(); ++n)
        if (C.rank(n)) ranks2[n] = C.rank(n);
    RandomComplex out{IntegerChainComplex::make(ranks2, d2), known};
    return out;
}

}  // namespace adt
