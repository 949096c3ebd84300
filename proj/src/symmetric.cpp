#include "adt/symmetric.hpp"

#include <algorithm>
#include <sstream>

namespace adt {

TensorChain tensor_normalize(TensorChain t) {
    std::sort(t.begin(), t.end(), [](const TensorElt& x, const TensorElt& y) {
        return std::tie(x.da, x.ia, x.db, x.ib) < std::tie(y.da, y.ia, y.db, y.ib);
    });
    TensorChain out;
    for (auto& e : t) {
        if (!out.empty() && out.back().da == e.da && out.back().ia == e.ia &&
            out.back().db == e.db && out.back().ib == e.ib) {
            out.back().c = checked_add(out.back().c, e.c);
        } else {
            out.push_back(e);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const TensorElt& e) { return e.c == 0; }),
              out.end());
    return out;
}

TensorChain tensor_add(const TensorChain& a, const TensorChain& b, i64 scale_b) {
    TensorChain t = a;
    for (auto e : b) {
        e.c = checked_mul(e.c, scale_b);
        t.push_back(e);
    }
    return tensor_normalize(std::move(t));
}

TensorChain tensor_transpose(const TensorChain& t) {
    TensorChain out;
    for (auto& e : t)
        out.push_back({e.db, e.ib, e.da, e.ia,
                       checked_mul(e.c, sign_pow(static_cast<i64>(e.da) * e.db))});
    return tensor_normalize(std::move(out));
}

TensorChain tensor_boundary(const IntegerChainComplex& C, const TensorChain& t) {
    TensorChain out;
    for (auto& e : t) {
        if (C.rank(e.da - 1) > 0) {
            const Mat& d = C.diff(e.da);
            for (int i = 0; i < d.rows; ++i)
                if (d.at(i, e.ia) != 0)
                    out.push_back({e.da - 1, i, e.db, e.ib, checked_mul(e.c, d.at(i, e.ia))});
        }
        if (C.rank(e.db - 1) > 0) {
            const Mat& d = C.diff(e.db);
            i64 sg = sign_pow(e.da);
            for (int i = 0; i < d.rows; ++i)
                if (d.at(i, e.ib) != 0)
                    out.push_back({e.da, e.ia, e.db - 1, i,
                                   checked_mul(e.c, checked_mul(sg, d.at(i, e.ib)))});
        }
    }
    return tensor_normalize(std::move(out));
}

bool SymmetricComplexData::is_symmetric(int smax) const {
    int top = smax;
    for (auto& [s, t] : phi)
        if (!t.empty()) top = std::max(top, s);
    for (int s = 0; s <= top + 1; ++s) {
        TensorChain lhs;
        auto it = phi.find(s);
        if (it != phi.end()) lhs = tensor_boundary(*C, it->second);
        TensorChain rhs;
        auto pv = phi.find(s - 1);
        if (pv != phi.end()) {
            rhs = tensor_add(pv->second, tensor_transpose(pv->second), sign_pow(s));
            for (auto& e : rhs) e.c = checked_mul(e.c, sign_pow(n));
        }
        if (tensor_normalize(lhs) != tensor_normalize(rhs)) return false;
    }
    return true;
}

SymmetricComplexData SymmetricComplexData::involute() const {
    SymmetricComplexData out = *this;
    for (auto& [s, t] : out.phi)
        for (auto& e : t) e.c = -e.c;
    return out;
}

SymmetricComplexData norm(const QuadraticComplexData& q) {
    SymmetricComplexData out;
    out.C = q.C;
    out.n = q.n;
    auto it = q.psi.find(0);
    if (it != q.psi.end()) {
        TensorChain t = tensor_add(it->second, tensor_transpose(it->second));
        if (!t.empty()) out.phi[0] = std::move(t);
    }
    return out;
}

const SymValue* SymAd::value(int cell) const {
    auto it = vals.find(cell);
    return it == vals.end() ? nullptr : &it->second;
}

// ---- SymTheory ---------------------------------------------------------------

namespace {

std::shared_ptr<const IntegerChainComplex> empty_complex() {
    static const auto c = std::make_shared<IntegerChainComplex>();
    return c;
}

const DiagonalW& diagonal_w() {
    static const DiagonalW d = DiagonalW::make(12);
    return d;
}

TensorChain scale_chain(TensorChain t, i64 c) {
    for (auto& e : t) e.c = checked_mul(e.c, c);
    return t;
}

}  // namespace

SymAd SymTheory::trivial(const CellPair& base, int degree) const {
    SymAd F;
    F.degree = degree;
    F.base = base;
    F.ambient = empty_complex();
    return F;
}

SymAd SymTheory::involute(const SymAd& F) const {
    SymAd G = F;
    for (auto& [c, v] : G.vals)
        for (auto& [s, t] : v.phi) t = scale_chain(t, -1);
    return G;
}

SymAd SymTheory::reindex(const CellIso& iso, const SymAd& F) const {
    int k = iso.shift, l = F.degree;
    SymAd G;
    G.degree = l + k;
    G.base = iso.src;
    G.ambient = F.ambient;
    i64 tw = sign_pow(static_cast<i64>(k) * l);
    for (int c = 0; c < iso.src.K->num_cells(); ++c) {
        if (iso.src.in_L(c)) continue;
        auto [d, s] = iso.obj[c];
        const SymValue* v = F.value(d);
        if (!v) continue;
        SymValue nv = *v;
        for (auto& [ss, t] : nv.phi) t = scale_chain(t, tw * s);
        G.vals[c] = std::move(nv);
    }
    return G;
}

SymAd SymTheory::inverse_reindex(const CellIso& iso, const SymAd& F) const {
    int k = iso.shift, l = F.degree - k;
    SymAd G;
    G.degree = l;
    G.base = iso.dst;
    G.ambient = F.ambient;
    i64 tw = sign_pow(static_cast<i64>(k) * l);
    for (int c = 0; c < iso.src.K->num_cells(); ++c) {
        if (iso.src.in_L(c)) continue;
        auto [d, s] = iso.obj[c];
        const SymValue* v = F.value(c);
        if (!v) continue;
        SymValue nv = *v;
        for (auto& [ss, t] : nv.phi) t = scale_chain(t, tw * s);
        G.vals[d] = std::move(nv);
    }
    return G;
}

SymAd SymTheory::restrict_to(const SymAd& F, const SubcomplexRef& sub,
                             ComplexPtr sub_complex) const {
    if (sub.parent.get() != F.base.K.get())
        throw error("restrict_to: subcomplex of a different complex");
    SymAd G;
    G.degree = F.degree;
    std::vector<int> L2;
    for (int c : sub.cells)
        if (F.base.in_L(c)) L2.push_back(sub_complex->require(sub.parent->cell(c).id));
    std::sort(L2.begin(), L2.end());
    G.base = CellPair{sub_complex, L2};
    G.ambient = F.ambient;
    for (int c : sub.cells) {
        const SymValue* v = F.value(c);
        if (v) G.vals[sub_complex->require(sub.parent->cell(c).id)] = *v;
    }
    return G;
}

SymAd SymTheory::transport(const SymAd& F, const CellPair& base,
                           const std::map<std::string, std::string>& src_of) const {
    SymAd G;
    G.degree = F.degree;
    G.base = base;
    G.ambient = F.ambient;
    for (int c = 0; c < base.K->num_cells(); ++c) {
        auto it = src_of.find(base.K->cell(c).id);
        if (it == src_of.end()) continue;
        int s = F.base.K->require(it->second);
        const SymValue* v = F.value(s);
        if (!v) continue;
        if (base.in_L(c)) throw error("transport: nonempty value lands in L");
        G.vals[c] = *v;
    }
    return G;
}

SymAd SymTheory::overlay(SymAd base, const SymAd& part, bool check_consistent) const {
    if (base.degree != part.degree) throw error("overlay: degree mismatch");
    if (part.vals.empty()) return base;
    // merge ambients by direct sum when they differ
    int offset = 0;
    if (base.ambient.get() != part.ambient.get()) {
        auto merged = std::make_shared<IntegerChainComplex>(
            direct_sum(*base.ambient, *part.ambient));
        // base values keep indices; part values shift by base ranks per degree
        std::map<int, int> off;
        for (int n = merged->lo(); n <= merged->hi(); ++n) off[n] = base.ambient->rank(n);
        SymAd nb;
        nb.degree = base.degree;
        nb.base = base.base;
        nb.ambient = merged;
        nb.vals = base.vals;
        base = std::move(nb);
        offset = 1;
        for (auto& [c, v] : part.vals) {
            int bc = base.base.K->require(part.base.K->cell(c).id);
            if (check_consistent && base.vals.count(bc))
                throw error("overlay: conflicting values at " + part.base.K->cell(c).id);
            SymValue nv;
            nv.n = v.n;
            for (auto& [deg, idxs] : v.basis) {
                auto& dst = nv.basis[deg];
                for (int i : idxs) dst.push_back(i + off[deg]);
            }
            for (auto& [s, t] : v.phi) {
                TensorChain nt;
                for (auto e : t) {
                    e.ia += off[e.da];
                    e.ib += off[e.db];
                    nt.push_back(e);
                }
                nv.phi[s] = tensor_normalize(std::move(nt));
            }
            base.vals[bc] = std::move(nv);
        }
    } else {
        for (auto& [c, v] : part.vals) {
            int bc = base.base.K->require(part.base.K->cell(c).id);
            if (check_consistent && base.vals.count(bc))
                throw error("overlay: conflicting values at " + part.base.K->cell(c).id);
            base.vals[bc] = v;
        }
    }
    (void)offset;
    return base;
}

bool SymTheory::equal(const SymAd& a, const SymAd& b) const {
    if (a.degree != b.degree) return false;
    if (a.base.K->num_cells() != b.base.K->num_cells()) return false;
    for (int c = 0; c < a.base.K->num_cells(); ++c) {
        int bc = b.base.K->index_of(a.base.K->cell(c).id);
        if (bc < 0) return false;
        const SymValue* va = a.value(c);
        const SymValue* vb = b.value(bc);
        if (!va != !vb) return false;
        if (!va) continue;
        if (va->n != vb->n || va->basis != vb->basis) return false;
        for (int s = 0; s <= truncation; ++s) {
            TensorChain ta, tb;
            if (va->phi.count(s)) ta = tensor_normalize(va->phi.at(s));
            if (vb->phi.count(s)) tb = tensor_normalize(vb->phi.at(s));
            if (ta != tb) return false;
        }
    }
    return true;
}

bool SymTheory::vanishes_on(const SymAd& F, const std::vector<int>& cells) const {
    for (int c : cells)
        if (F.vals.count(c)) return false;
    return true;
}

bool SymTheory::is_trivial_on(const SymAd& F, int cell) const {
    for (int c : F.base.K->closure({cell}))
        if (F.vals.count(c)) return false;
    return true;
}

bool SymTheory::is_trivial_ad(const SymAd& F) const { return F.vals.empty(); }

// ---- the ad condition ---------------------------------------------------------

DualityReport SymTheory::check(const SymAd& F) const {
    DualityReport rep;
    rep.ok = true;
    const auto& K = *F.base.K;
    const auto& amb = *F.ambient;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.failures.push_back(msg);
    };
    int k = F.degree;
    // structural checks
    for (auto& [c, v] : F.vals) {
        if (F.base.in_L(c)) {
            fail("value on relative cell " + K.cell(c).id);
            continue;
        }
        if (v.n != K.dim_of(c) - k) fail("dimension mismatch at " + K.cell(c).id);
        for (auto& [deg, idxs] : v.basis) {
            for (size_t t = 1; t < idxs.size(); ++t)
                if (idxs[t - 1] >= idxs[t]) fail("basis not sorted at " + K.cell(c).id);
            for (int i : idxs)
                if (i < 0 || i >= amb.rank(deg)) fail("basis out of range at " + K.cell(c).id);
        }
        // span closed under the ambient differential
        for (auto& [deg, idxs] : v.basis) {
            if (amb.rank(deg - 1) == 0) continue;
            const Mat& d = amb.diff(deg);
            const std::vector<int>* below = nullptr;
            auto itb = v.basis.find(deg - 1);
            if (itb != v.basis.end()) below = &itb->second;
            for (int j : idxs)
                for (int i = 0; i < d.rows; ++i)
                    if (d.at(i, j) != 0 &&
                        !(below && std::binary_search(below->begin(), below->end(), i)))
                        fail("span not d-closed at " + K.cell(c).id);
        }
        // phi supported in the span, correct degrees
        for (auto& [s, t] : v.phi) {
            if (s < 0) fail("negative phi index at " + K.cell(c).id);
            for (auto& e : t) {
                if (e.da + e.db != v.n + s) fail("phi degree off at " + K.cell(c).id);
                auto ina = v.basis.find(e.da);
                auto inb = v.basis.find(e.db);
                if (ina == v.basis.end() ||
                    !std::binary_search(ina->second.begin(), ina->second.end(), e.ia) ||
                    inb == v.basis.end() ||
                    !std::binary_search(inb->second.begin(), inb->second.end(), e.ib))
                    fail("phi outside the cell span at " + K.cell(c).id);
            }
        }
    }
    if (!rep.ok) return rep;
    // faces: monotone spans, empty values have empty faces
    for (int c = 0; c < K.num_cells(); ++c) {
        const SymValue* v = F.value(c);
        for (int f : K.faces(c)) {
            if (F.base.in_L(f)) continue;
            const SymValue* vf = F.value(f);
            if (!v && vf) fail("empty cell " + K.cell(c).id + " has nonempty face");
            if (v && vf)
                for (auto& [deg, idxs] : vf->basis) {
                    auto it = v->basis.find(deg);
                    for (int i : idxs)
                        if (it == v->basis.end() ||
                            !std::binary_search(it->second.begin(), it->second.end(), i))
                            fail("face span not contained at " + K.cell(c).id);
                }
        }
    }
    if (!rep.ok) return rep;
    // closed condition
    for (int c = 0; c < K.num_cells(); ++c) {
        if (F.base.in_L(c)) continue;
        const SymValue* v = F.value(c);
        int n = K.dim_of(c) - k;
        for (int s = 0; s <= truncation + 1; ++s) {
            TensorChain faceside;
            for (auto& [f, inc] : K.boundary(c)) {
                if (F.base.in_L(f)) continue;
                const SymValue* vf = F.value(f);
                if (!vf) continue;
                auto it = vf->phi.find(s);
                if (it != vf->phi.end())
                    faceside = tensor_add(faceside, it->second, inc);
            }
            TensorChain cellside;
            if (v) {
                auto it = v->phi.find(s);
                if (it != v->phi.end()) cellside = tensor_boundary(amb, it->second);
                auto ip = v->phi.find(s - 1);
                if (ip != v->phi.end()) {
                    TensorChain h = tensor_add(ip->second, tensor_transpose(ip->second),
                                               sign_pow(s));
                    cellside = tensor_add(cellside, h, -sign_pow(n));
                }
                cellside = scale_chain(std::move(cellside), sign_pow(k));
            }
            if (tensor_normalize(faceside) != tensor_normalize(cellside)) {
                fail("closed condition fails at " + K.cell(c).id + " s=" + std::to_string(s));
                break;
            }
        }
    }
    if (!rep.ok) return rep;
    // duality: Upsilon_sigma is a quasi-isomorphism for every cell
    for (int c = 0; c < K.num_cells(); ++c) {
        if (F.base.in_L(c)) continue;
        const SymValue* v = F.value(c);
        if (!v) continue;
        int n = v->n;
        // local complex of the cell
        IntegerChainComplex Cs = restrict_complex(amb, v->basis);
        // positions of the boundary colimit inside the local basis
        std::map<int, std::vector<int>> kill;
        {
            std::map<int, std::vector<char>> inb;
            for (auto& [deg, idxs] : v->basis) inb[deg].assign(idxs.size(), 0);
            for (int f : K.proper_faces(c)) {
                const SymValue* vf = F.value(f);
                if (!vf) continue;
                for (auto& [deg, idxs] : vf->basis) {
                    auto& loc = v->basis.at(deg);
                    for (int i : idxs) {
                        int p = static_cast<int>(
                            std::lower_bound(loc.begin(), loc.end(), i) - loc.begin());
                        inb[deg][p] = 1;
                    }
                }
            }
            for (auto& [deg, flags] : inb) {
                std::vector<int> ks;
                for (size_t t = 0; t < flags.size(); ++t)
                    if (flags[t]) ks.push_back(static_cast<int>(t));
                if (!ks.empty()) kill[deg] = ks;
            }
        }
        std::map<int, std::vector<int>> surviving;
        IntegerChainComplex Q = quotient_complex(Cs, kill, &surviving);
        IntegerChainComplex D = hom_dual(Cs);
        // Upsilon: D'_j = Hom(C_{n-j}) -> Q_j from phi_0 projected to Q (x) C
        auto localpos = [&](int deg, int ambidx) {
            auto& loc = v->basis.at(deg);
            return static_cast<int>(std::lower_bound(loc.begin(), loc.end(), ambidx) -
                                    loc.begin());
        };
        std::map<int, std::map<int, int>> qpos;  // deg -> local idx -> quotient pos
        for (auto& [deg, surv] : surviving)
            for (size_t t = 0; t < surv.size(); ++t) qpos[deg][surv[t]] = static_cast<int>(t);
        GradedChainMap U;
        IntegerChainComplex Dsh = shift_complex(D, n);
        // shift without sign twist: rebuild with plain ranks
        {
            std::map<int, int> ranks;
            std::map<int, Mat> diffs;
            for (int m = D.lo(); m <= D.hi(); ++m)
                if (D.rank(m) > 0) ranks[m + n] = D.rank(m);
            for (int m = D.lo(); m <= D.hi(); ++m)
                if (D.rank(m) > 0 && D.rank(m - 1) > 0) diffs[m + n] = D.diff(m);
            Dsh = IntegerChainComplex::make(ranks, diffs);
        }
        U.src = &Dsh;
        U.dst = &Q;
        U.deg = 0;
        auto it0 = v->phi.find(0);
        TensorChain phi0 = (it0 == v->phi.end()) ? TensorChain{} : it0->second;
        for (int j = Q.lo(); j <= Q.hi(); ++j) {
            int m = n - j;  // dual slot: Hom(C_m)
            if (Cs.rank(m) == 0 || Q.rank(j) == 0) continue;
            Mat Mu(Q.rank(j), Cs.rank(m));
            for (auto& e : phi0) {
                if (e.da != j || e.db != m) continue;
                int la = localpos(e.da, e.ia);
                auto itq = qpos[e.da].find(la);
                if (itq == qpos[e.da].end()) continue;  // killed by the quotient
                int lb = localpos(e.db, e.ib);
                Mu.at(itq->second, lb) = checked_add(
                    Mu.at(itq->second, lb),
                    checked_mul(e.c, sign_pow(static_cast<i64>(e.da) * e.db)));
            }
            U.comp[j] = Mu;
        }
        if (!U.is_chain_map())
            throw error("symmetric duality: Upsilon is not a chain map at cell " +
                        K.cell(c).id + " (internal convention error)");
        if (!is_acyclic(mapping_cone(U)))
            fail("duality fails at " + K.cell(c).id);
    }
    return rep;
}

// ---- tensor product ------------------------------------------------------------

SymAd SymTheory::tensor_ads(const SymAd& F1, const SymAd& F2) const {
    ComplexPtr KL = product(F1.base.K, F2.base.K);
    std::vector<int> L;
    for (int c = 0; c < KL->num_cells(); ++c) {
        auto parts = split_product_cell_id(KL->cell(c).id);
        int c1 = F1.base.K->require(parts[0]);
        int c2 = F2.base.K->require(parts[1]);
        if (F1.base.in_L(c1) || F2.base.in_L(c2)) L.push_back(c);
    }
    std::sort(L.begin(), L.end());
    SymAd G;
    G.degree = F1.degree + F2.degree;
    G.base = CellPair{KL, L};
    auto amb = std::make_shared<IntegerChainComplex>(tensor_complex(*F1.ambient, *F2.ambient));
    G.ambient = amb;
    TensorLayout lay{F1.ambient.get(), F2.ambient.get()};
    const DiagonalW& DW = diagonal_w();
    for (int c = 0; c < KL->num_cells(); ++c) {
        if (G.base.in_L(c)) continue;
        auto parts = split_product_cell_id(KL->cell(c).id);
        const SymValue* v1 = F1.value(F1.base.K->require(parts[0]));
        const SymValue* v2 = F2.value(F2.base.K->require(parts[1]));
        if (!v1 || !v2) continue;
        SymValue nv;
        nv.n = v1->n + v2->n;
        // basis: products of the factor spans, in layout coordinates
        for (auto& [d1, i1s] : v1->basis)
            for (auto& [d2, i2s] : v2->basis) {
                auto& dst = nv.basis[d1 + d2];
                for (int i1 : i1s)
                    for (int i2 : i2s) dst.push_back(lay.index(d1 + d2, d1, i1, i2));
            }
        for (auto& [deg, idxs] : nv.basis) std::sort(idxs.begin(), idxs.end());
        // phi through the diagonal
        for (int s = 0; s <= truncation; ++s) {
            if (s >= static_cast<int>(DW.delta.size()))
                throw error("tensor_ads: diagonal truncation too small");
            TensorChain acc;
            for (const auto& term : DW.delta[s]) {
                auto it1 = v1->phi.find(term.p);
                auto it2 = v2->phi.find(term.q);
                if (it1 == v1->phi.end() || it2 == v2->phi.end()) continue;
                TensorChain x = it1->second;
                if (term.tp) x = tensor_transpose(x);
                TensorChain y = it2->second;
                if (term.tq) y = tensor_transpose(y);
                // (phi1 (x) phi2)(u (x) v) = (-1)^{n2 p} phi1(u) (x) phi2(v),
                // then the middle interchange with its Koszul sign
                i64 pre = checked_mul(term.c, sign_pow(static_cast<i64>(v2->n) * term.p));
                for (auto& e1 : x)
                    for (auto& e2 : y) {
                        i64 sg = checked_mul(pre,
                                             sign_pow(static_cast<i64>(e1.db) * e2.da));
                        int da = e1.da + e2.da, db = e1.db + e2.db;
                        acc.push_back({da, lay.index(da, e1.da, e1.ia, e2.ia), db,
                                       lay.index(db, e1.db, e1.ib, e2.ib),
                                       checked_mul(sg, checked_mul(e1.c, e2.c))});
                    }
            }
            acc = tensor_normalize(std::move(acc));
            if (!acc.empty()) nv.phi[s] = std::move(acc);
        }
        G.vals[c] = std::move(nv);
    }
    return G;
}

SymAd interval_sym_ad() { return tautological_sym_ad(interval()); }

SymAd SymTheory::cylinder(const SymAd& F) const { return tensor_ads(F, interval_sym_ad()); }

bool SymTheory::cylinder_ends_equal(const SymAd& J, const SymAd& F) const {
    // ends are the canonical copies x -> x (x) [end vertex]
    auto Givl = interval_sym_ad();
    TensorLayout lay{F.ambient.get(), Givl.ambient.get()};
    CellularChains icc = cellular_chains(interval());
    for (const char* end : {"0", "1"}) {
        int vpos = icc.position.at(0).at(interval()->require(end));
        for (int c = 0; c < F.base.K->num_cells(); ++c) {
            int jc = J.base.K->require(product_cell_id({F.base.K->cell(c).id, end}));
            const SymValue* vf = F.value(c);
            const SymValue* vj = J.value(jc);
            if (F.base.in_L(c)) {
                if (vj) return false;
                continue;
            }
            if (!vf != !vj) return false;
            if (!vf) continue;
            if (vj->n != vf->n) return false;
            // compare basis
            std::map<int, std::vector<int>> expect;
            for (auto& [deg, idxs] : vf->basis) {
                auto& dst = expect[deg];
                for (int i : idxs) dst.push_back(lay.index(deg, deg, i, vpos));
                std::sort(dst.begin(), dst.end());
            }
            if (expect != vj->basis) return false;
            for (int s = 0; s <= truncation; ++s) {
                TensorChain want;
                auto it = vf->phi.find(s);
                if (it != vf->phi.end())
                    for (auto& e : it->second)
                        want.push_back({e.da, lay.index(e.da, e.da, e.ia, vpos), e.db,
                                        lay.index(e.db, e.db, e.ib, vpos), e.c});
                TensorChain have;
                auto jt = vj->phi.find(s);
                if (jt != vj->phi.end()) have = jt->second;
                if (tensor_normalize(want) != tensor_normalize(have)) return false;
            }
        }
    }
    return true;
}

// ---- gluing --------------------------------------------------------------------

SymAd SymTheory::glue(const Subdivision& s, const SymAd& fine) const {
    if (s.fine.get() != fine.base.K.get())
        throw error("glue: ad does not live on the fine complex");
    SymAd G;
    G.degree = fine.degree;
    G.base = CellPair::whole(s.coarse);
    G.ambient = fine.ambient;
    for (int c = 0; c < s.coarse->num_cells(); ++c) {
        // colimit region: fine cells whose carrier lies in the closure of c
        auto cl = s.coarse->closure({c});
        SymValue nv;
        nv.n = s.coarse->dim_of(c) - fine.degree;
        bool any = false;
        for (int f = 0; f < s.fine->num_cells(); ++f) {
            if (!std::binary_search(cl.begin(), cl.end(), s.carrier[f])) continue;
            const SymValue* vf = fine.value(f);
            if (!vf) continue;
            any = true;
            for (auto& [deg, idxs] : vf->basis) {
                auto& dst = nv.basis[deg];
                dst.insert(dst.end(), idxs.begin(), idxs.end());
            }
        }
        if (!any) continue;
        for (auto& [deg, idxs] : nv.basis) {
            std::sort(idxs.begin(), idxs.end());
            idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
        }
        // phi: sum over the subdividing top cells with their signs
        std::map<int, TensorChain> acc;
        for (auto& [f, w] : s.chain_map[c]) {
            const SymValue* vf = fine.value(f);
            if (!vf) continue;
            for (auto& [ss, t] : vf->phi) acc[ss] = tensor_add(acc[ss], t, w);
        }
        for (auto& [ss, t] : acc)
            if (!t.empty()) nv.phi[ss] = t;
        G.vals[c] = std::move(nv);
    }
    return G;
}

// ---- samples and probes ----------------------------------------------------------

SymAd SymTheory::isomorphic_variant(const SymAd& F, Rng& rng) const {
    // transport along a sign-flip automorphism of the ambient complex
    if (F.ambient->total_rank() == 0) return F;
    int deg = 0, idx = 0;
    for (int tries = 0; tries < 64; ++tries) {
        deg = static_cast<int>(rand_range(rng, F.ambient->lo(), F.ambient->hi()));
        if (F.ambient->rank(deg) > 0) {
            idx = static_cast<int>(rand_range(rng, 0, F.ambient->rank(deg) - 1));
            break;
        }
    }
    std::map<int, int> ranks;
    std::map<int, Mat> diffs;
    for (int n = F.ambient->lo(); n <= F.ambient->hi(); ++n)
        if (F.ambient->rank(n)) ranks[n] = F.ambient->rank(n);
    for (int n = F.ambient->lo(); n <= F.ambient->hi(); ++n) {
        if (!F.ambient->rank(n) || !F.ambient->rank(n - 1)) continue;
        Mat d = F.ambient->diff(n);
        for (int j = 0; j < d.cols; ++j)
            if (n == deg && j == idx)
                for (int i = 0; i < d.rows; ++i) d.at(i, j) = -d.at(i, j);
        for (int i = 0; i < d.rows; ++i)
            if (n - 1 == deg && i == idx)
                for (int j = 0; j < d.cols; ++j) d.at(i, j) = -d.at(i, j);
        diffs[n] = d;
    }
    SymAd G = F;
    G.ambient = std::make_shared<IntegerChainComplex>(IntegerChainComplex::make(ranks, diffs));
    for (auto& [c, v] : G.vals)
        for (auto& [s, t] : v.phi) {
            for (auto& e : t) {
                if (e.da == deg && e.ia == idx) e.c = -e.c;
                if (e.db == deg && e.ib == idx) e.c = -e.c;
            }
            t = tensor_normalize(t);
        }
    return G;
}

SymAd SymTheory::perturbed(const SymAd& F, Rng& rng) const {
    SymAd G = F;
    for (int tries = 0; tries < 64; ++tries) {
        if (G.vals.empty()) break;
        auto it = G.vals.begin();
        std::advance(it, rand_range(rng, 0, static_cast<i64>(G.vals.size()) - 1));
        SymValue& v = it->second;
        // bump one phi_0 entry inside the span
        std::vector<std::pair<int, std::pair<int, int>>> slots;
        for (auto& [deg, idxs] : v.basis)
            for (int ia : idxs) {
                auto itb = v.basis.find(v.n - deg);
                if (itb == v.basis.end()) continue;
                for (int ib : itb->second) slots.push_back({deg, {ia, ib}});
            }
        if (slots.empty()) continue;
        auto [da, ab] = slots[static_cast<size_t>(rand_range(
            rng, 0, static_cast<i64>(slots.size()) - 1))];
        TensorChain t = v.phi.count(0) ? v.phi[0] : TensorChain{};
        t.push_back({da, ab.first, v.n - da, ab.second, 1});
        v.phi[0] = tensor_normalize(std::move(t));
        return G;
    }
    return G;
}

namespace {
SymmetricComplexData circle_sample_complex() {
    std::vector<CellRec> cells{{"a", 0, ""},  {"b", 0, ""},  {"c", 0, ""},
                               {"ab", 1, ""}, {"bc", 1, ""}, {"ac", 1, ""}};
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    bd["ab"] = {{"b", 1}, {"a", -1}};
    bd["bc"] = {{"c", 1}, {"b", -1}};
    bd["ac"] = {{"c", 1}, {"a", -1}};
    auto K = BallComplex::make(cells, bd, "circle-sample");
    CellChain xi;
    xi[K->require("ab")] = 1;
    xi[K->require("bc")] = 1;
    xi[K->require("ac")] = -1;
    return sig_of(K, xi);
}
}  // namespace

std::vector<SymAd> SymTheory::sample_ads(const CellPair& base, int degree, Rng& rng,
                                         int count) const {
    std::vector<SymAd> pool;
    pool.push_back(trivial(base, degree));
    if (degree == 0 && base.L.empty() && base.K->is_simplicial()) {
        SymAd t = tautological_sym_ad(base.K);
        t.base = base;
        pool.push_back(t);
        pool.push_back(involute(t));
    } else if (!base.L.empty()) {
        // relative samples: a Poincare value on each top cell, empty elsewhere
        int n = base.K->top_dim() - degree;
        SymmetricComplexData S;
        if (n == 1) {
            S = circle_sample_complex();
        } else {
            S.C = std::make_shared<IntegerChainComplex>(
                IntegerChainComplex::make({{0, 1}}, {}));
            S.n = 0;
            S.phi[0] = {TensorElt{0, 0, 0, 0, 1}};
        }
        if (S.n == n) {
            SymAd A = trivial(base, degree);
            A.ambient = S.C;
            bool anytop = false;
            for (int c : base.K->cells_of_dim(base.K->top_dim())) {
                if (base.in_L(c)) continue;
                SymValue v;
                v.n = n;
                for (int d = S.C->lo(); d <= S.C->hi(); ++d) {
                    std::vector<int> all(S.C->rank(d));
                    for (int i = 0; i < S.C->rank(d); ++i) all[static_cast<size_t>(i)] = i;
                    if (!all.empty()) v.basis[d] = all;
                }
                v.phi = S.phi;
                A.vals[c] = v;
                anytop = true;
            }
            if (anytop && is_ad(A)) {
                pool.push_back(A);
                pool.push_back(involute(A));
            }
        }
    }
    std::vector<SymAd> out;
    for (int t = 0; t < count; ++t)
        out.push_back(pool[static_cast<size_t>(rand_range(
            rng, 0, static_cast<i64>(pool.size()) - 1))]);
    return out;
}

}  // namespace adt
