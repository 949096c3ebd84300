#include "adt/cellcat.hpp"

#include <algorithm>
#include <numeric>

namespace adt {

bool CellPair::in_L(int cell) const {
    return std::binary_search(L.begin(), L.end(), cell);
}

CellPair CellPair::make(ComplexPtr K, const SubcomplexRef& Lr) {
    if (Lr.parent.get() != K.get()) throw error("CellPair: L is not a subcomplex of K");
    return CellPair{K, Lr.cells};
}

CellPair CellPair::whole(ComplexPtr K) { return CellPair{K, {}}; }

SubcomplexRef CellPair::l_ref() const { return SubcomplexRef::make(K, L); }

OrientedCell CellIso::map_cell(const OrientedCell& c) const {
    auto& [d, s] = obj[c.cell];
    if (d < 0) throw error("CellIso: cell is in the relative subcomplex");
    return OrientedCell{d, static_cast<int>(c.sign * s)};
}

CellIso CellIso::inverse() const {
    CellIso inv;
    inv.src = dst;
    inv.dst = src;
    inv.shift = -shift;
    inv.obj.assign(dst.K->num_cells(), {-1, 0});
    for (int c = 0; c < src.K->num_cells(); ++c) {
        auto& [d, s] = obj[c];
        if (d >= 0) inv.obj[d] = {c, s};
    }
    return inv;
}

CellIso make_cell_iso(const CellPair& src, const CellPair& dst, int shift,
                      const std::function<std::pair<std::string, i64>(const std::string&)>& f) {
    CellIso iso;
    iso.src = src;
    iso.dst = dst;
    iso.shift = shift;
    iso.obj.assign(src.K->num_cells(), {-1, 0});
    std::vector<char> hit(dst.K->num_cells(), 0);
    for (int c = 0; c < src.K->num_cells(); ++c) {
        if (src.in_L(c)) continue;
        auto [id, s] = f(src.K->cell(c).id);
        if (s != 1 && s != -1) throw error("make_cell_iso: sign must be +-1");
        int d = dst.K->require(id);
        if (dst.in_L(d)) throw error("make_cell_iso: image lies in the relative part");
        if (hit[d]) throw error("make_cell_iso: not injective at " + id);
        hit[d] = 1;
        if (dst.K->dim_of(d) != src.K->dim_of(c) - shift)
            throw error("make_cell_iso: wrong dimension shift at " + src.K->cell(c).id);
        iso.obj[c] = {d, s};
    }
    for (int d = 0; d < dst.K->num_cells(); ++d)
        if (!dst.in_L(d) && !hit[d])
            throw error("make_cell_iso: not surjective onto " + dst.K->cell(d).id);
    return iso;
}

bool check_incidence_compatible(const CellIso& iso) {
    const auto& K = *iso.src.K;
    i64 want = sign_pow(iso.shift);
    for (int c = 0; c < K.num_cells(); ++c) {
        if (iso.src.in_L(c)) continue;
        auto [d, s] = iso.obj[c];
        // collect image incidences of all non-L facets
        std::map<int, i64> img;
        for (auto& [f, inc] : K.boundary(c)) {
            if (iso.src.in_L(f)) continue;
            auto [df, sf] = iso.obj[f];
            img[df] += want * inc;  // expected value of [th c, th f]
            (void)sf;
        }
        // compare against actual incidences in dst
        std::map<int, i64> act;
        for (auto& [g, inc] : iso.dst.K->boundary(d)) {
            if (iso.dst.in_L(g)) continue;
            act[g] += s * inc;  // [th(c,+)] = s * (d, ref)
        }
        // expected incidences carry the face sign too
        std::map<int, i64> expd;
        for (auto& [f, inc] : K.boundary(c)) {
            if (iso.src.in_L(f)) continue;
            auto [df, sf] = iso.obj[f];
            expd[df] += want * inc * sf;
        }
        if (act != expd) return false;
    }
    return true;
}

KappaIso kappa(ComplexPtr K, const SubcomplexRef& L) {
    if (L.parent.get() != K.get()) throw error("kappa: L not a subcomplex of K");
    ComplexPtr IK = product(interval(), K);
    // relative part: ({0,1} x K) u (I x L)
    std::vector<int> rel;
    for (int c = 0; c < IK->num_cells(); ++c) {
        auto parts = split_product_cell_id(IK->cell(c).id);
        int kc = K->require(parts[1]);
        if (parts[0] != "I" || L.contains(kc)) rel.push_back(c);
    }
    CellPair src{IK, rel};
    CellPair dst = CellPair{K, L.cells};
    CellIso iso = make_cell_iso(src, dst, 1, [&](const std::string& id) {
        auto parts = split_product_cell_id(id);
        return std::make_pair(parts[1], static_cast<i64>(1));
    });
    return {IK, iso};
}

KappaIso kappa(ComplexPtr K) { return kappa(K, SubcomplexRef::empty(K)); }

LambdaIso lambda_iso(ComplexPtr K) {
    ComplexPtr DK = product(simplex(1), K);
    std::vector<int> rel;
    for (int c = 0; c < DK->num_cells(); ++c) {
        auto parts = split_product_cell_id(DK->cell(c).id);
        if (parts[0] != "01") rel.push_back(c);
    }
    CellPair src{DK, rel};
    CellPair dst = CellPair::whole(K);
    CellIso iso = make_cell_iso(src, dst, 1, [&](const std::string& id) {
        auto parts = split_product_cell_id(id);
        return std::make_pair(parts[1], static_cast<i64>(1));
    });
    return {DK, iso};
}

CellIso theta_susp(int n) {
    ComplexPtr big = simplex(n + 1);
    ComplexPtr small = simplex(n);
    char last = static_cast<char>('0' + (n + 1));
    std::vector<int> rel;
    for (int c = 0; c < big->num_cells(); ++c) {
        const std::string& id = big->cell(c).id;
        bool has_last = id.find(last) != std::string::npos;
        if (!has_last || id == std::string(1, last)) rel.push_back(c);
    }
    CellPair src{big, rel};
    CellPair dst = CellPair::whole(small);
    return make_cell_iso(src, dst, 1, [&](const std::string& id) {
        std::string out;
        for (char ch : id)
            if (ch != last) out += ch;
        // sign (-1)^{dim sigma - 1}, dim sigma = |id| - 1
        i64 s = sign_pow(static_cast<i64>(id.size()) - 2);
        return std::make_pair(out, s);
    });
}

namespace {
// digit helpers for mu: ids inside simplex complexes are digit strings
std::string drop_vertex_relabel(const std::string& id, int i) {
    // remove vertex i must not occur; relabel d > i to d-1
    std::string out;
    for (char ch : id) {
        int d = ch - '0';
        if (d == i) throw error("mu: unexpected vertex in face relabel");
        out += static_cast<char>('0' + (d > i ? d - 1 : d));
    }
    return out;
}
std::string insert_vertex_relabel(const std::string& id, int i) {
    std::string out;
    for (char ch : id) {
        int d = ch - '0';
        out += static_cast<char>('0' + (d >= i ? d + 1 : d));
    }
    return out;
}
}  // namespace

MuIso mu_iso(int n) {
    if (n < 0) throw error("mu_iso: n < 0");
    ComplexPtr src = product({simplex(1), simplex(0), simplex(n + 1)});
    ComplexPtr dst = product(simplex(n), interval());
    char last = static_cast<char>('0' + (n + 1));
    auto in_L = [&](const std::string& a, const std::string& t) {
        if (a == "1") return true;                         // {1} x D0 x D^{n+1}
        if (t == std::string(1, last)) return true;        // D1 x D0 x {n+1}
        if (a == "0" && t.find(last) == std::string::npos) // {0} x D0 x d_{n+1}
            return true;
        return false;
    };
    std::vector<int> rel;
    for (int c = 0; c < src->num_cells(); ++c) {
        auto parts = split_product_cell_id(src->cell(c).id);
        if (in_L(parts[0], parts[2])) rel.push_back(c);
    }
    CellPair sp{src, rel};
    CellPair dp = CellPair::whole(dst);

    // previous stage for clause (d)
    std::optional<MuIso> prev;
    if (n >= 1) prev = mu_iso(n - 1);

    std::string full;
    for (int v = 0; v <= n + 1; ++v) full += static_cast<char>('0' + v);
    std::string base;
    for (int v = 0; v <= n; ++v) base += static_cast<char>('0' + v);

    auto fmap = [&](const std::string& id) -> std::pair<std::string, i64> {
        auto parts = split_product_cell_id(id);
        const std::string &a = parts[0], &t = parts[2];
        bool has_last = t.find(last) != std::string::npos;
        if (a == "01" && t == full)  // clause (a): top to top
            return {product_cell_id({base, "I"}), 1};
        if (a == "01" && !has_last)  // clause (c): lambda to the 1-end
            return {product_cell_id({t, "1"}), 1};
        if (a == "0") {  // clause (b): theta to the 0-end
            std::string out;
            for (char ch : t)
                if (ch != last) out += ch;
            i64 s = sign_pow(static_cast<i64>(t.size()) - 2);
            return {product_cell_id({out, "0"}), s};
        }
        // clause (d): fall into face i of D^{n+1} for the least absent vertex
        int i = -1;
        for (int v = 0; v <= n; ++v)
            if (t.find(static_cast<char>('0' + v)) == std::string::npos) {
                i = v;
                break;
            }
        if (i < 0) throw error("mu_iso: unclassified cell " + id);
        std::string small_t = drop_vertex_relabel(t, i);
        auto [pid, psign] =
            prev->iso.obj[prev->src_complex->require(product_cell_id({a, "0", small_t}))];
        auto pparts = split_product_cell_id(prev->dst_complex->cell(pid).id);
        std::string lifted = insert_vertex_relabel(pparts[0], i);
        return {product_cell_id({lifted, pparts[1]}), -psign};  // involution twist
    };
    CellIso iso = make_cell_iso(sp, dp, 1, fmap);
    if (!check_incidence_compatible(iso))
        throw error("mu_iso: constructed map is not incidence-compatible at n = " +
                    std::to_string(n));
    // clause (d) consistency for every face, not only the least one
    for (int i = 0; i <= n && n >= 1; ++i) {
        for (int c = 0; c < src->num_cells(); ++c) {
            if (sp.in_L(c)) continue;
            auto parts = split_product_cell_id(src->cell(c).id);
            const std::string &a = parts[0], &t = parts[2];
            if (t.find(static_cast<char>('0' + i)) != std::string::npos) continue;
            if (!t.empty() && t == full) continue;
            // cell lies over face i; compare with i . mu_{n-1}
            std::string small_t = drop_vertex_relabel(t, i);
            int pc = prev->src_complex->index_of(product_cell_id({a, "0", small_t}));
            if (pc < 0 || prev->iso.obj[pc].first < 0) continue;  // in L of the small pair
            auto [pid, psign] = prev->iso.obj[pc];
            auto pparts = split_product_cell_id(prev->dst_complex->cell(pid).id);
            std::string lifted = insert_vertex_relabel(pparts[0], i);
            auto [did, dsign] = iso.obj[c];
            if (dst->cell(did).id != product_cell_id({lifted, pparts[1]}) || dsign != -psign)
                throw error("mu_iso: clause (d) fails at face " + std::to_string(i) +
                            " cell " + src->cell(c).id);
        }
    }
    return {src, dst, iso};
}

EtaSharp eta_sharp(const std::vector<int>& eta, const std::vector<int>& multi_index) {
    int k = static_cast<int>(eta.size());
    if (static_cast<int>(multi_index.size()) != k)
        throw error("eta_sharp: arity mismatch between permutation and multi-index");
    std::vector<int> seen(k, 0);
    for (int v : eta) {
        if (v < 0 || v >= k || seen[v]) throw error("eta_sharp: not a permutation");
        seen[v] = 1;
    }
    std::vector<int> inv(k);
    for (int i = 0; i < k; ++i) inv[eta[i]] = i;
    std::vector<ComplexPtr> src_f, dst_f;
    for (int j = 0; j < k; ++j) src_f.push_back(simplex(multi_index[inv[j]]));
    for (int i = 0; i < k; ++i) dst_f.push_back(simplex(multi_index[i]));
    ComplexPtr src = product(src_f);
    ComplexPtr dst = product(dst_f);
    CellIso iso = make_cell_iso(
        CellPair::whole(src), CellPair::whole(dst), 0,
        [&](const std::string& id) -> std::pair<std::string, i64> {
            auto parts = split_product_cell_id(id);
            // src slot j holds the factor going to dst slot eta(j)... dst slot i
            // receives src slot inv[i]? dst tuple u_i = t_{position of factor i}.
            // src slot j corresponds to dst factor index inv[j]... by
            // construction src factor j is simplex(multi_index[inv[j]]), so it
            // lands in dst slot inv[j].
            std::vector<std::string> out(k);
            std::vector<int> dims(k);
            for (int j = 0; j < k; ++j) {
                out[inv[j]] = parts[j];
                dims[j] = static_cast<int>(parts[j].size()) - 1;
            }
            // Koszul sign of sorting (inv[0], inv[1], ...) with grades dims
            i64 e = 0;
            for (int x = 0; x < k; ++x)
                for (int y = x + 1; y < k; ++y)
                    if (inv[x] > inv[y]) e += static_cast<i64>(dims[x]) * dims[y];
            return {product_cell_id(out), sign_pow(e)};
        });
    return {src, dst, iso};
}

CellIso face_embedding_iso(int n, int i) {
    ComplexPtr small = simplex(n - 1);
    ComplexPtr big = simplex(n);
    // embed into the closed face subcomplex of big as its own complex
    std::vector<int> face_cells;
    for (int c = 0; c < big->num_cells(); ++c) {
        const std::string& id = big->cell(c).id;
        if (id.find(static_cast<char>('0' + i)) == std::string::npos) face_cells.push_back(c);
    }
    ComplexPtr facec = SubcomplexRef::make(big, big->closure(face_cells)).as_complex();
    return make_cell_iso(CellPair::whole(small), CellPair::whole(facec), 0,
                         [&](const std::string& id) {
                             return std::make_pair(insert_vertex_relabel(id, i),
                                                   static_cast<i64>(1));
                         });
}

CellIso ident_iso(ComplexPtr src, ComplexPtr dst,
                  const std::function<std::string(const std::string&)>& rename) {
    return make_cell_iso(CellPair::whole(src), CellPair::whole(dst), 0,
                         [&](const std::string& id) {
                             return std::make_pair(rename(id), static_cast<i64>(1));
                         });
}

}  // namespace adt
