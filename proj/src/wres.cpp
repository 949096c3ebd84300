#include "adt/wres.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace adt {

WResolution WResolution::make(int N) {
    if (N < 0) throw error("WResolution: N < 0");
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    for (int s = 0; s <= N; ++s) ranks[s] = 2;  // basis (e_s, T e_s)
    for (int s = 1; s <= N; ++s) {
        Mat d(2, 2);
        // d(e_s) = e_{s-1} + (-1)^s T e_{s-1} ; d(T e_s) = T d(e_s)
        d.at(0, 0) = 1;
        d.at(1, 0) = sign_pow(s);
        d.at(1, 1) = 1;
        d.at(0, 1) = sign_pow(s);
        diffs[s] = d;
    }
    return WResolution{N, IntegerChainComplex::make(ranks, diffs)};
}

GradedChainMap WResolution::augmentation(const IntegerChainComplex& z0) const {
    if (z0.rank(0) != 1) throw error("augmentation: target is not Z in degree 0");
    GradedChainMap f;
    f.src = &C;
    f.dst = &z0;
    f.deg = 0;
    Mat m(1, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    f.comp[0] = m;
    return f;
}

VComplex VComplex::make(int N) {
    // dual of W: V_{-n} basis (f_n, T f_n); (d phi) = -(-1)^{-n} phi . d_W
    WResolution W = WResolution::make(N);
    return VComplex{N, hom_dual(W.C)};
}

GradedChainMap norm_map(const WResolution& W, const VComplex& V) {
    GradedChainMap f;
    f.src = &W.C;
    f.dst = &V.C;
    f.deg = 0;
    // degree 0 only: e_0, T e_0 -> f_0 + T f_0 (the norm element); the rest
    // factors through Z so it vanishes in positive degrees
    Mat m(2, 2);
    m.at(0, 0) = 1;
    m.at(1, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 1) = 1;
    f.comp[0] = m;
    return f;
}

namespace {

int ww_size(int s) { return 4 * (s + 1); }

int ww_index(int s, int p, int tp, int tq) {
    // degree-s basis: for p = 0..s, the four terms (tp, tq) in order
    // (0,0),(1,0),(0,1),(1,1)
    (void)s;
    return 4 * p + tp + 2 * tq;
}

struct WWElt {
    // dense coefficients in degree s
    int s;
    std::vector<i64> c;
    explicit WWElt(int s_) : s(s_), c(ww_size(s_), 0) {}
};

WWElt ww_boundary(int s, int p, int tp, int tq, i64 coef) {
    // d(T^tp e_p (x) T^tq e_q), q = s - p
    WWElt out(s - 1);
    int q = s - p;
    if (p >= 1) {
        // d(T^tp e_p) = T^tp e_{p-1} + (-1)^p T^{1-tp} e_{p-1}
        out.c[ww_index(s - 1, p - 1, tp, tq)] += coef;
        out.c[ww_index(s - 1, p - 1, 1 - tp, tq)] += coef * sign_pow(p);
    }
    if (q >= 1) {
        i64 k = coef * sign_pow(p);  // Koszul (-1)^{|e_p|}
        out.c[ww_index(s - 1, p, tp, tq)] += k;
        out.c[ww_index(s - 1, p, tp, 1 - tq)] += k * sign_pow(q);
    }
    return out;
}

std::vector<i64> hnf_reduce(const Mat& K, std::vector<i64> x) {
    // reduce x modulo the lattice spanned by columns of K to a canonical
    // representative (column HNF, pivots positive, entries reduced into
    // [0, pivot) at pivot rows, top-down)
    if (K.cols == 0) return x;
    Mat H = K;
    // column HNF by integer column ops
    int r = 0;
    for (int row = 0; row < H.rows && r < H.cols; ++row) {
        // gcd-reduce columns r.. on this row
        while (true) {
            int p = -1;
            i64 best = 0;
            for (int j = r; j < H.cols; ++j)
                if (H.at(row, j) != 0 && (p < 0 || std::abs(H.at(row, j)) < best)) {
                    p = j;
                    best = std::abs(H.at(row, j));
                }
            if (p < 0) break;
            for (int rr = 0; rr < H.rows; ++rr) std::swap(H.at(rr, r), H.at(rr, p));
            bool clean = true;
            for (int j = r + 1; j < H.cols; ++j) {
                if (H.at(row, j) == 0) continue;
                i64 q = H.at(row, j) / H.at(row, r);
                for (int rr = 0; rr < H.rows; ++rr)
                    H.at(rr, j) = checked_add(H.at(rr, j), -checked_mul(q, H.at(rr, r)));
                if (H.at(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(row, r) != 0) {
            if (H.at(row, r) < 0)
                for (int rr = 0; rr < H.rows; ++rr) H.at(rr, r) = -H.at(rr, r);
            // reduce x at this pivot row
            i64 piv = H.at(row, r);
            i64 q = x[row] >= 0 ? x[row] / piv : -((-x[row] + piv - 1) / piv);
            if (q != 0)
                for (int rr = 0; rr < H.rows; ++rr)
                    x[rr] = checked_add(x[rr], -checked_mul(q, H.at(rr, r)));
            ++r;
        }
    }
    return x;
}

}  // namespace

DiagonalW DiagonalW::make(int N) {
    DiagonalW D;
    D.N = N;
    D.delta.resize(N + 1);
    D.delta[0] = {WWTerm{0, 0, 0, 0, 1}};  // Delta(e_0) = e_0 (x) e_0
    for (int s = 1; s <= N; ++s) {
        // unknowns: coefficients of Delta(e_s) in degree-s basis
        int nvar = ww_size(s);
        // target: Delta(d e_s) = Delta(e_{s-1}) + (-1)^s (T (x) T) Delta(e_{s-1})
        WWElt target(s - 1);
        for (const auto& t : D.delta[s - 1]) {
            target.c[ww_index(s - 1, t.p, t.tp, t.tq)] += t.c;
            target.c[ww_index(s - 1, t.p, 1 - t.tp, 1 - t.tq)] += t.c * sign_pow(s);
        }
        // rows: chain condition (degree s-1 basis) + 4 counit rows
        int neq = ww_size(s - 1) + 4;
        Mat A(neq, nvar);
        std::vector<i64> b(neq, 0);
        for (int p = 0; p <= s; ++p)
            for (int tp = 0; tp < 2; ++tp)
                for (int tq = 0; tq < 2; ++tq) {
                    int col = ww_index(s, p, tp, tq);
                    WWElt bd = ww_boundary(s, p, tp, tq, 1);
                    for (int row = 0; row < ww_size(s - 1); ++row) A.at(row, col) = bd.c[row];
                }
        for (int row = 0; row < ww_size(s - 1); ++row) b[row] = target.c[row];
        // counits: (eps (x) 1) Delta(e_s) = e_s and (1 (x) eps) Delta(e_s) = e_s
        // eps kills positive degrees and sends both e_0, T e_0 to 1.
        int base = ww_size(s - 1);
        for (int tp = 0; tp < 2; ++tp)
            for (int tq = 0; tq < 2; ++tq) {
                int col_left = ww_index(s, 0, tp, tq);   // e_0-part in factor 1
                int col_right = ww_index(s, s, tp, tq);  // e_0-part in factor 2
                A.at(base + tq, col_left) += 1;      // contributes T^tq e_s
                A.at(base + 2 + tp, col_right) += 1; // contributes T^tp e_s
            }
        b[base + 0] = 1;  // coefficient of e_s
        b[base + 1] = 0;  // coefficient of T e_s
        b[base + 2] = 1;
        b[base + 3] = 0;
        auto x = solve(A, b);
        if (!x) throw error("DiagonalW: no equivariant chain-level diagonal at degree " +
                            std::to_string(s));
        Mat K = kernel_basis(A);
        std::vector<i64> xi = hnf_reduce(K, *x);
        for (int p = 0; p <= s; ++p)
            for (int tp = 0; tp < 2; ++tp)
                for (int tq = 0; tq < 2; ++tq) {
                    i64 c = xi[ww_index(s, p, tp, tq)];
                    if (c != 0) D.delta[s].push_back(WWTerm{p, tp, s - p, tq, c});
                }
    }
    return D;
}

// ---- extended Alexander-Whitney ------------------------------------------

namespace {

using Simplex = std::vector<int>;
using TChain = std::map<std::pair<Simplex, Simplex>, i64>;

void tadd(TChain& a, const std::pair<Simplex, Simplex>& k, i64 v) {
    auto it = a.find(k);
    if (it == a.end()) {
        if (v != 0) a.emplace(k, v);
    } else {
        it->second += v;
        if (it->second == 0) a.erase(it);
    }
}

std::map<Simplex, i64> boundary_simplex(const Simplex& f) {
    std::map<Simplex, i64> out;
    if (f.size() <= 1) return out;
    for (size_t k = 0; k < f.size(); ++k) {
        Simplex face;
        for (size_t t = 0; t < f.size(); ++t)
            if (t != k) face.push_back(f[t]);
        out[face] += (k % 2 == 0) ? 1 : -1;
    }
    return out;
}

TChain t_boundary(const TChain& c) {
    TChain out;
    for (auto& [k, v] : c) {
        for (auto& [f2, w] : boundary_simplex(k.first)) tadd(out, {f2, k.second}, v * w);
        i64 sg = sign_pow(static_cast<i64>(k.first.size()) - 1);
        for (auto& [g2, w] : boundary_simplex(k.second)) tadd(out, {k.first, g2}, v * w * sg);
    }
    return out;
}

TChain t_transpose(const TChain& c) {
    TChain out;
    for (auto& [k, v] : c) {
        i64 sg = sign_pow((static_cast<i64>(k.first.size()) - 1) *
                          (static_cast<i64>(k.second.size()) - 1));
        tadd(out, {k.second, k.first}, sg * v);
    }
    return out;
}

TChain h_tensor(const TChain& c) {
    // H = h (x) 1 + (iota eps) (x) h with h = cone off vertex 0
    TChain out;
    for (auto& [k, v] : c) {
        const Simplex &f = k.first, &g = k.second;
        if (f.front() != 0) {
            Simplex cf;
            cf.push_back(0);
            cf.insert(cf.end(), f.begin(), f.end());
            tadd(out, {cf, g}, v);
        }
        if (f.size() == 1) {
            if (g.front() != 0) {
                Simplex cg;
                cg.push_back(0);
                cg.insert(cg.end(), g.begin(), g.end());
                tadd(out, {{0}, cg}, v);
            }
        }
    }
    return out;
}

std::mutex g_aw_mutex;
std::map<std::pair<int, int>, std::vector<AwTerm>> g_aw;

TChain aw_on_simplex(const Simplex& f, int s);

TChain aw_top(int k, int s) {
    Simplex top(k + 1);
    for (int i = 0; i <= k; ++i) top[i] = i;
    if (k == 0) {
        if (s == 0) return TChain{{{top, top}, 1}};
        return {};
    }
    // Y = (-1)^s AW_s(d top) + AW_{s-1}(top) + (-1)^s T AW_{s-1}(top)
    TChain Y;
    for (auto& [face, w] : boundary_simplex(top))
        for (auto& [key, v] : aw_on_simplex(face, s)) tadd(Y, key, sign_pow(s) * w * v);
    if (s >= 1) {
        TChain prev = aw_on_simplex(top, s - 1);
        for (auto& [key, v] : prev) tadd(Y, key, v);
        for (auto& [key, v] : t_transpose(prev)) tadd(Y, key, sign_pow(s) * v);
    }
    if (!t_boundary(Y).empty()) throw error("aw_table: recursion target is not a cycle");
    return h_tensor(Y);
}

TChain aw_on_simplex(const Simplex& f, int s) {
    int k = static_cast<int>(f.size()) - 1;
    TChain out;
    for (const auto& t : aw_table(k, s)) {
        Simplex a, b;
        for (int i : t.a) a.push_back(f[i]);
        for (int i : t.b) b.push_back(f[i]);
        tadd(out, {a, b}, t.c);
    }
    return out;
}

}  // namespace

const std::vector<AwTerm>& aw_table(int k, int s) {
    if (k < 0 || s < 0) throw error("aw_table: bad arguments");
    {
        std::lock_guard<std::mutex> lk(g_aw_mutex);
        auto it = g_aw.find({k, s});
        if (it != g_aw.end()) return it->second;
    }
    // build without holding the lock on recursive calls: compute dependencies
    // first (any order), then this entry
    for (int kk = 0; kk <= k; ++kk)
        for (int ss = 0; ss <= s; ++ss) {
            {
                std::lock_guard<std::mutex> lk(g_aw_mutex);
                if (g_aw.count({kk, ss})) continue;
            }
            TChain c = aw_top(kk, ss);
            std::vector<AwTerm> terms;
            for (auto& [key, v] : c) terms.push_back(AwTerm{key.first, key.second, v});
            std::lock_guard<std::mutex> lk(g_aw_mutex);
            g_aw.emplace(std::make_pair(kk, ss), std::move(terms));
        }
    std::lock_guard<std::mutex> lk(g_aw_mutex);
    return g_aw.at({k, s});
}

}  // namespace adt
