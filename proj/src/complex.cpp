#include "adt/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace adt {

namespace {
bool cell_order(const CellRec& a, const CellRec& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.id < b.id;
}
}  // namespace

ComplexPtr BallComplex::make(
    std::vector<CellRec> cells,
    std::map<std::string, std::vector<std::pair<std::string, i64>>> boundary,
    std::string name) {
    auto K = std::make_shared<BallComplex>();
    K->name_ = std::move(name);
    std::sort(cells.begin(), cells.end(), cell_order);
    K->cells_ = std::move(cells);
    for (int i = 0; i < K->num_cells(); ++i) {
        const auto& c = K->cells_[i];
        if (c.dim < 0) throw error("ball complex: negative dimension cell " + c.id);
        if (K->index_.count(c.id)) throw error("ball complex: duplicate cell id " + c.id);
        K->index_[c.id] = i;
        K->top_dim_ = std::max(K->top_dim_, c.dim);
    }
    K->by_dim_.assign(K->top_dim_ + 1, {});
    for (int i = 0; i < K->num_cells(); ++i) K->by_dim_[K->cells_[i].dim].push_back(i);
    K->bnd_.assign(K->num_cells(), {});
    for (auto& [id, lst] : boundary) {
        int i = K->index_of(id);
        if (i < 0) throw error("ball complex: boundary of unknown cell " + id);
        std::map<int, i64> acc;
        for (auto& [fid, c] : lst) {
            int j = K->index_of(fid);
            if (j < 0) throw error("ball complex: unknown face " + fid);
            if (c != 0) acc[j] += c;
        }
        for (auto& [j, c] : acc) {
            if (c == 0) continue;
            if (K->dim_of(j) != K->dim_of(i) - 1)
                throw error("ball complex: incidence does not drop dimension by 1 (" +
                            id + " -> " + K->cells_[j].id + ")");
            K->bnd_[i].push_back({j, c});
        }
    }
    K->faces_.assign(K->num_cells(), {});
    K->cofaces_.assign(K->num_cells(), {});
    for (int i = 0; i < K->num_cells(); ++i) {
        if (K->dim_of(i) >= 1 && K->bnd_[i].empty())
            throw error("ball complex: cell " + K->cells_[i].id +
                        " of positive dimension has empty boundary");
        for (auto& [j, c] : K->bnd_[i]) {
            K->faces_[i].push_back(j);
            K->cofaces_[j].push_back(i);
        }
    }
    // d . d = 0
    for (int i = 0; i < K->num_cells(); ++i) {
        std::map<int, i64> dd;
        for (auto& [j, c] : K->bnd_[i])
            for (auto& [k2, c2] : K->bnd_[j]) dd[k2] += checked_mul(c, c2);
        for (auto& [k2, v] : dd)
            if (v != 0)
                throw error("ball complex: d^2 != 0 at cell " + K->cells_[i].id);
    }
    return K;
}

int BallComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int BallComplex::require(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw error("unknown cell " + id + " in complex " + name_);
    return i;
}

const std::vector<int>& BallComplex::cells_of_dim(int d) const {
    static const std::vector<int> none;
    if (d < 0 || d > top_dim_) return none;
    return by_dim_[d];
}

const std::vector<std::pair<int, i64>>& BallComplex::boundary(int i) const { return bnd_[i]; }
const std::vector<int>& BallComplex::faces(int i) const { return faces_[i]; }
const std::vector<int>& BallComplex::cofaces(int i) const { return cofaces_[i]; }

i64 BallComplex::incidence(int upper, int lower) const {
    for (auto& [j, c] : bnd_[upper])
        if (j == lower) return c;
    return 0;
}

std::vector<int> BallComplex::closure(const std::vector<int>& cells) const {
    std::set<int> seen(cells.begin(), cells.end());
    std::vector<int> stack(cells.begin(), cells.end());
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j : faces_[i])
            if (seen.insert(j).second) stack.push_back(j);
    }
    return {seen.begin(), seen.end()};
}

std::vector<int> BallComplex::proper_faces(int i) const { return closure(faces_[i]); }

void BallComplex::validate_ball_condition() const {
    auto self = ComplexPtr();  // cellular_chains wants a ComplexPtr; rebuild
    for (int i = 0; i < num_cells(); ++i) {
        int n = dim_of(i);
        if (n == 0) continue;
        auto pf = proper_faces(i);
        // chain complex of the proper-face subcomplex
        std::map<int, std::vector<int>> bydim;
        std::map<int, int> pos;
        for (int c : pf) bydim[dim_of(c)].push_back(c);
        std::map<int, int> ranks;
        std::map<int, Mat> diffs;
        for (auto& [d, v] : bydim) {
            ranks[d] = static_cast<int>(v.size());
            for (size_t t = 0; t < v.size(); ++t) pos[v[t]] = static_cast<int>(t);
        }
        for (auto& [d, v] : bydim) {
            if (!bydim.count(d - 1)) continue;
            Mat M(static_cast<int>(bydim[d - 1].size()), static_cast<int>(v.size()));
            for (size_t j = 0; j < v.size(); ++j)
                for (auto& [f, c] : bnd_[v[j]]) M.at(pos[f], static_cast<int>(j)) = c;
            diffs[d] = M;
        }
        auto H = smith_homology(IntegerChainComplex::make(ranks, diffs));
        ComplexHomology want;
        if (n == 1)
            want[0] = GroupType{2, {}};
        else {
            want[0] = GroupType{1, {}};
            want[n - 1] = GroupType{1, {}};
        }
        if (H != want)
            throw error("ball condition: boundary of cell " + cells_[i].id +
                        " does not have sphere homology");
    }
}

void BallComplex::compute_simplicial() const {
    simplicial_ = 0;
    simp_verts_.assign(num_cells(), {});
    orient_sign_.assign(num_cells(), 0);
    std::map<std::vector<int>, int> by_verts;
    for (int i = 0; i < num_cells(); ++i) {
        auto cl = closure({i});
        std::vector<int> verts;
        for (int c : cl)
            if (dim_of(c) == 0) verts.push_back(c);
        std::sort(verts.begin(), verts.end());
        if (static_cast<int>(verts.size()) != dim_of(i) + 1) return;
        if (dim_of(i) >= 1 && static_cast<int>(faces_[i].size()) != dim_of(i) + 1) return;
        if (by_verts.count(verts)) return;
        by_verts[verts] = i;
        simp_verts_[i] = std::move(verts);
    }
    // orientation signs: reference vs vertex-order orientation
    for (int i = 0; i < num_cells(); ++i) {
        if (dim_of(i) == 0) {
            orient_sign_[i] = 1;
            continue;
        }
        const auto& verts = simp_verts_[i];
        i64 s = 0;
        for (size_t j = 0; j < verts.size(); ++j) {
            std::vector<int> sub;
            for (size_t t = 0; t < verts.size(); ++t)
                if (t != j) sub.push_back(verts[t]);
            auto it = by_verts.find(sub);
            if (it == by_verts.end()) return;
            i64 inc = incidence(i, it->second);
            if (inc != 1 && inc != -1) return;
            // [sigma : tau_j] = s(sigma) (-1)^j s(tau_j)
            i64 sj = inc * sign_pow(static_cast<i64>(j)) * orient_sign_[it->second];
            if (s == 0)
                s = sj;
            else if (s != sj)
                return;
        }
        orient_sign_[i] = s;
    }
    simplicial_ = 1;
}

bool BallComplex::is_simplicial() const {
    if (simplicial_ < 0) compute_simplicial();
    return simplicial_ == 1;
}

const std::vector<std::vector<int>>& BallComplex::simplex_vertices() const {
    if (!is_simplicial()) throw error("complex " + name_ + " is not simplicial");
    return simp_verts_;
}

const std::vector<i64>& BallComplex::orientation_vs_vertex_order() const {
    if (!is_simplicial()) throw error("complex " + name_ + " is not simplicial");
    return orient_sign_;
}

// ---- SubcomplexRef ---------------------------------------------------------

bool SubcomplexRef::contains(int cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
}

SubcomplexRef SubcomplexRef::make(ComplexPtr parent, std::vector<int> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    SubcomplexRef r{parent, std::move(cells)};
    for (int i : r.cells)
        for (int f : parent->faces(i))
            if (!r.contains(f))
                throw error("subcomplex not downward closed at cell " + parent->cell(i).id);
    return r;
}

SubcomplexRef SubcomplexRef::empty(ComplexPtr parent) { return {parent, {}}; }

SubcomplexRef SubcomplexRef::full(ComplexPtr parent) {
    std::vector<int> all(parent->num_cells());
    std::iota(all.begin(), all.end(), 0);
    return {parent, all};
}

ComplexPtr SubcomplexRef::as_complex(const std::string& name) const {
    std::vector<CellRec> cs;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    for (int i : cells) {
        cs.push_back(parent->cell(i));
        auto& lst = bd[parent->cell(i).id];
        for (auto& [j, c] : parent->boundary(i)) lst.push_back({parent->cell(j).id, c});
    }
    return BallComplex::make(std::move(cs), std::move(bd),
                             name.empty() ? parent->name() + "|sub" : name);
}

// ---- Subdivision ------------------------------------------------------------

Subdivision Subdivision::make(ComplexPtr coarse, ComplexPtr fine, std::vector<int> carrier,
                              std::vector<CellChain> chain_map) {
    Subdivision s{coarse, fine, std::move(carrier), std::move(chain_map)};
    if (static_cast<int>(s.carrier.size()) != fine->num_cells())
        throw error("subdivision: carrier size mismatch");
    if (static_cast<int>(s.chain_map.size()) != coarse->num_cells())
        throw error("subdivision: chain map size mismatch");
    for (int i = 0; i < fine->num_cells(); ++i) {
        int c = s.carrier[i];
        if (c < 0 || c >= coarse->num_cells()) throw error("subdivision: carrier out of range");
        if (fine->dim_of(i) > coarse->dim_of(c))
            throw error("subdivision: carrier dimension too small");
        // carriers of faces are faces of (or equal to) the carrier
        auto cf = coarse->closure({c});
        for (int f : fine->faces(i))
            if (!std::binary_search(cf.begin(), cf.end(), s.carrier[f]))
                throw error("subdivision: carrier not monotone");
    }
    for (int c = 0; c < coarse->num_cells(); ++c) {
        for (auto& [f, v] : s.chain_map[c]) {
            (void)v;
            if (fine->dim_of(f) != coarse->dim_of(c))
                throw error("subdivision: chain map not dimension preserving");
            if (s.carrier[f] != c) throw error("subdivision: chain map leaves carrier");
        }
        // chain-map law: subdiv(d c) = d subdiv(c)
        CellChain lhs;
        for (auto& [fc, cc] : coarse->boundary(c))
            for (auto& [f, v] : s.chain_map[fc]) {
                lhs[f] += checked_mul(cc, v);
                if (lhs[f] == 0) lhs.erase(f);
            }
        CellChain rhs;
        for (auto& [f, v] : s.chain_map[c])
            for (auto& [g, w] : fine->boundary(f)) {
                rhs[g] += checked_mul(v, w);
                if (rhs[g] == 0) rhs.erase(g);
            }
        if (lhs != rhs)
            throw error("subdivision: chain map does not commute with d at cell " +
                        coarse->cell(c).id);
    }
    return s;
}

bool Subdivision::residual(int coarse_cell) const {
    const auto& ch = chain_map[coarse_cell];
    if (ch.size() != 1) return false;
    auto& [f, v] = *ch.begin();
    return v == 1 && fine->cell(f).id == coarse->cell(coarse_cell).id;
}

// ---- constructors -----------------------------------------------------------

namespace {
std::string subset_id(const std::vector<int>& vs) {
    std::string s;
    for (int v : vs) {
        if (v > 9) throw error("simplex: dimension too large for digit ids");
        s += static_cast<char>('0' + v);
    }
    return s;
}
}  // namespace

ComplexPtr simplex(int n) {
    if (n < 0) throw error("simplex: n < 0");
    std::vector<CellRec> cells;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    int m = n + 1;
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> vs;
        for (int v = 0; v < m; ++v)
            if (mask & (1 << v)) vs.push_back(v);
        std::string id = subset_id(vs);
        cells.push_back({id, static_cast<int>(vs.size()) - 1, ""});
        if (vs.size() > 1) {
            auto& lst = bd[id];
            for (size_t j = 0; j < vs.size(); ++j) {
                std::vector<int> sub;
                for (size_t t = 0; t < vs.size(); ++t)
                    if (t != j) sub.push_back(vs[t]);
                lst.push_back({subset_id(sub), sign_pow(static_cast<i64>(j))});
            }
        }
    }
    return BallComplex::make(std::move(cells), std::move(bd), "simplex" + std::to_string(n));
}

ComplexPtr point() { return simplex(0); }

ComplexPtr interval() {
    std::vector<CellRec> cells{{"0", 0, ""}, {"1", 0, ""}, {"I", 1, ""}};
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    bd["I"] = {{"1", 1}, {"0", -1}};
    return BallComplex::make(std::move(cells), std::move(bd), "I");
}

std::string product_cell_id(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += "|";
        s += parts[i];
    }
    return s + ")";
}

std::vector<std::string> split_product_cell_id(const std::string& id) {
    if (id.size() < 2 || id.front() != '(' || id.back() != ')')
        throw error("not a product cell id: " + id);
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (size_t i = 1; i + 1 < id.size(); ++i) {
        char ch = id[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '|' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

ComplexPtr product(const std::vector<ComplexPtr>& factors, std::string name) {
    if (factors.empty()) throw error("product: no factors");
    std::vector<CellRec> cells;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    // enumerate tuples
    std::vector<int> idx(factors.size(), 0);
    auto tuple_id = [&](const std::vector<int>& t) {
        std::vector<std::string> parts;
        for (size_t i = 0; i < t.size(); ++i) parts.push_back(factors[i]->cell(t[i]).id);
        return product_cell_id(parts);
    };
    while (true) {
        int dim = 0;
        for (size_t i = 0; i < factors.size(); ++i) dim += factors[i]->dim_of(idx[i]);
        std::string id = tuple_id(idx);
        cells.push_back({id, dim, ""});
        auto& lst = bd[id];
        int presign = 1;
        for (size_t i = 0; i < factors.size(); ++i) {
            for (auto& [f, c] : factors[i]->boundary(idx[i])) {
                std::vector<int> t = idx;
                t[i] = f;
                lst.push_back({tuple_id(t), presign * c});
            }
            presign *= sign_pow(factors[i]->dim_of(idx[i]));
        }
        if (lst.empty()) bd.erase(id);
        // next tuple
        size_t i = 0;
        for (; i < factors.size(); ++i) {
            if (++idx[i] < factors[i]->num_cells()) break;
            idx[i] = 0;
        }
        if (i == factors.size()) break;
    }
    if (name.empty()) {
        name = factors[0]->name();
        for (size_t i = 1; i < factors.size(); ++i) name += "x" + factors[i]->name();
    }
    return BallComplex::make(std::move(cells), std::move(bd), std::move(name));
}

ComplexPtr product(ComplexPtr a, ComplexPtr b) { return product(std::vector<ComplexPtr>{a, b}); }

ComplexPtr model_M_prime() {
    std::vector<CellRec> cells{
        {"A", 2, ""},  {"B", 2, ""},  {"a0", 1, ""}, {"a1", 1, ""}, {"b0", 1, ""},
        {"b1", 1, ""}, {"l3", 1, ""}, {"l4", 1, ""}, {"m", 1, ""},  {"p", 0, ""},
        {"q", 0, ""},  {"r", 0, ""},  {"s", 0, ""},  {"t", 0, ""},  {"u", 0, ""}};
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    bd["A"] = {{"m", 1}, {"l3", -1}, {"a1", -1}, {"a0", 1}};
    bd["B"] = {{"l4", 1}, {"m", -1}, {"b1", -1}, {"b0", 1}};
    bd["a0"] = {{"q", 1}, {"p", -1}};
    bd["a1"] = {{"t", 1}, {"s", -1}};
    bd["b0"] = {{"r", 1}, {"q", -1}};
    bd["b1"] = {{"u", 1}, {"t", -1}};
    bd["l3"] = {{"s", 1}, {"p", -1}};
    bd["l4"] = {{"u", 1}, {"r", -1}};
    bd["m"] = {{"t", 1}, {"q", -1}};
    return BallComplex::make(std::move(cells), std::move(bd), "M'");
}

ComplexPtr model_M() {
    std::vector<CellRec> cells{{"U", 2, ""},  {"l1", 1, ""}, {"l2", 1, ""}, {"l3", 1, ""},
                               {"l4", 1, ""}, {"l5", 1, ""}, {"p", 0, ""},  {"q", 0, ""},
                               {"r", 0, ""},  {"s", 0, ""},  {"u", 0, ""}};
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    bd["U"] = {{"l1", 1}, {"l2", 1}, {"l3", -1}, {"l4", 1}, {"l5", -1}};
    bd["l1"] = {{"q", 1}, {"p", -1}};
    bd["l2"] = {{"r", 1}, {"q", -1}};
    bd["l3"] = {{"s", 1}, {"p", -1}};
    bd["l4"] = {{"u", 1}, {"r", -1}};
    bd["l5"] = {{"u", 1}, {"s", -1}};
    return BallComplex::make(std::move(cells), std::move(bd), "M");
}

Subdivision m_refinement() {
    ComplexPtr M = model_M();
    ComplexPtr Mp = model_M_prime();
    std::vector<int> carrier(Mp->num_cells(), -1);
    auto car = [&](const std::string& fine, const std::string& coarse) {
        carrier[Mp->require(fine)] = M->require(coarse);
    };
    car("A", "U");
    car("B", "U");
    car("m", "U");
    car("a0", "l1");
    car("b0", "l2");
    car("l3", "l3");
    car("l4", "l4");
    car("a1", "l5");
    car("b1", "l5");
    car("t", "l5");
    for (const char* v : {"p", "q", "r", "s", "u"}) car(v, v);
    std::vector<CellChain> cm(M->num_cells());
    auto one = [&](const std::string& coarse, std::vector<std::pair<std::string, i64>> terms) {
        CellChain ch;
        for (auto& [id, c] : terms) ch[Mp->require(id)] = c;
        cm[M->require(coarse)] = ch;
    };
    one("U", {{"A", 1}, {"B", 1}});
    one("l1", {{"a0", 1}});
    one("l2", {{"b0", 1}});
    one("l3", {{"l3", 1}});
    one("l4", {{"l4", 1}});
    one("l5", {{"a1", 1}, {"b1", 1}});
    for (const char* v : {"p", "q", "r", "s", "u"}) one(v, {{v, 1}});
    return Subdivision::make(M, Mp, std::move(carrier), std::move(cm));
}

SubcomplexRef horn(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw error("horn: index out of range");
    ComplexPtr D = simplex(n);
    std::vector<int> keep;
    std::vector<int> all(n + 1);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> face_i;
    for (int v = 0; v <= n; ++v)
        if (v != i) face_i.push_back(v);
    int top = D->require(subset_id(all));
    int fi = D->require(subset_id(face_i));
    for (int c = 0; c < D->num_cells(); ++c)
        if (c != top && c != fi) keep.push_back(c);
    return SubcomplexRef::make(D, std::move(keep));
}

SubcomplexRef boundary_subcomplex(ComplexPtr K) {
    int n = K->top_dim();
    std::vector<int> fac;
    for (int c : K->cells_of_dim(n - 1))
        if (K->cofaces(c).size() == 1) fac.push_back(c);
    return SubcomplexRef::make(K, K->closure(fac));
}

CellularChains cellular_chains(ComplexPtr K, const SubcomplexRef& L) {
    if (L.parent.get() != K.get()) throw error("cellular_chains: subcomplex of another complex");
    CellularChains out;
    std::map<int, int> ranks;
    for (int d = 0; d <= K->top_dim(); ++d) {
        std::vector<int> basis;
        for (int c : K->cells_of_dim(d))
            if (!L.contains(c)) basis.push_back(c);
        if (basis.empty()) continue;
        ranks[d] = static_cast<int>(basis.size());
        auto& pos = out.position[d];
        for (size_t t = 0; t < basis.size(); ++t) pos[basis[t]] = static_cast<int>(t);
        out.basis[d] = std::move(basis);
    }
    std::map<int, Mat> diffs;
    for (auto& [d, basis] : out.basis) {
        if (!out.basis.count(d - 1)) continue;
        Mat M(static_cast<int>(out.basis[d - 1].size()), static_cast<int>(basis.size()));
        auto& pos = out.position[d - 1];
        for (size_t j = 0; j < basis.size(); ++j)
            for (auto& [f, c] : K->boundary(basis[j])) {
                auto it = pos.find(f);
                if (it != pos.end()) M.at(it->second, static_cast<int>(j)) = c;
            }
        diffs[d] = M;
    }
    out.C = IntegerChainComplex::make(ranks, diffs);
    return out;
}

CellularChains cellular_chains(ComplexPtr K) {
    return cellular_chains(K, SubcomplexRef::empty(K));
}

// ---- barycentric subdivision -------------------------------------------------

namespace {
std::string chain_id(ComplexPtr K, const std::vector<int>& chain) {
    std::string s;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) s += "<";
        s += K->cell(chain[i]).id;
    }
    return s;
}
}  // namespace

BarycentricSubdivision barycentric_subdivision(ComplexPtr K) {
    if (!K->is_simplicial()) throw error("barycentric_subdivision: complex is not simplicial");
    // cells of sd(K) = chains in the face poset of K
    std::vector<std::vector<int>> chains;
    std::vector<std::vector<int>> stack;
    for (int c = 0; c < K->num_cells(); ++c) stack.push_back({c});
    while (!stack.empty()) {
        auto ch = stack.back();
        stack.pop_back();
        chains.push_back(ch);
        int last = ch.back();
        for (int up = 0; up < K->num_cells(); ++up) {
            // extend by any strictly larger cell: last must be a face of up
            if (K->dim_of(up) <= K->dim_of(last)) continue;
            auto cl = K->closure({up});
            if (std::binary_search(cl.begin(), cl.end(), last)) {
                auto ext = ch;
                ext.push_back(up);
                stack.push_back(ext);
            }
        }
    }
    std::vector<CellRec> cells;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    for (auto& ch : chains) {
        std::string id = chain_id(K, ch);
        cells.push_back({id, static_cast<int>(ch.size()) - 1, ""});
        if (ch.size() > 1) {
            auto& lst = bd[id];
            for (size_t j = 0; j < ch.size(); ++j) {
                std::vector<int> sub;
                for (size_t t = 0; t < ch.size(); ++t)
                    if (t != j) sub.push_back(ch[t]);
                lst.push_back({chain_id(K, sub), sign_pow(static_cast<i64>(j))});
            }
        }
    }
    ComplexPtr sd = BallComplex::make(std::move(cells), std::move(bd), "sd(" + K->name() + ")");
    // carrier: a chain's carrier is its largest element
    std::vector<int> carrier(sd->num_cells(), -1);
    for (int i = 0; i < sd->num_cells(); ++i) {
        auto parts = sd->cell(i).id;
        size_t p = parts.rfind('<');
        std::string last = (p == std::string::npos) ? parts : parts.substr(p + 1);
        carrier[i] = K->require(last);
    }
    std::vector<CellChain> cm(K->num_cells());
    for (int c = 0; c < K->num_cells(); ++c) cm[c] = flag_expansion(K, sd, c);
    return {sd, Subdivision::make(K, sd, std::move(carrier), std::move(cm))};
}

CellChain flag_expansion(ComplexPtr K, ComplexPtr sd, int coarse_cell) {
    // sd(sigma) = s(sigma) * sum_{permutations pi of the vertices}
    //             sgn(pi) * (flag sigma_0^pi < ... < sigma_d^pi)
    const auto& verts = K->simplex_vertices()[coarse_cell];
    const auto& sgn = K->orientation_vs_vertex_order();
    // vertex-subset -> cell lookup
    std::map<std::vector<int>, int> by_verts;
    for (int c : K->closure({coarse_cell})) {
        auto v = K->simplex_vertices()[c];
        by_verts[v] = c;
    }
    CellChain out;
    std::vector<int> perm(verts.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // sign of perm
        int inv = 0;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        std::vector<int> chain;
        std::vector<int> acc;
        for (size_t i = 0; i < perm.size(); ++i) {
            acc.push_back(verts[perm[i]]);
            std::vector<int> sorted = acc;
            std::sort(sorted.begin(), sorted.end());
            chain.push_back(by_verts.at(sorted));
        }
        int idx = sd->require(chain_id(K, chain));
        out[idx] += sgn[coarse_cell] * sign_pow(inv);
        if (out[idx] == 0) out.erase(idx);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

StarLinkDual star_link_dual(ComplexPtr K, const std::string& cell_id) {
    int c0 = K->require(cell_id);
    auto bs = barycentric_subdivision(K);
    ComplexPtr sd = bs.sd;
    auto contains_elt = [&](int sdcell) {
        // does the chain contain c0 as an element?
        std::string id = sd->cell(sdcell).id;
        std::string target = K->cell(c0).id;
        size_t pos = 0;
        while (pos <= id.size()) {
            size_t e = id.find('<', pos);
            std::string part = id.substr(pos, e == std::string::npos ? std::string::npos : e - pos);
            if (part == target) return true;
            if (e == std::string::npos) break;
            pos = e + 1;
        }
        return false;
    };
    auto chain_elems = [&](int sdcell) {
        std::vector<int> out;
        std::string id = sd->cell(sdcell).id;
        size_t pos = 0;
        while (pos <= id.size()) {
            size_t e = id.find('<', pos);
            std::string part = id.substr(pos, e == std::string::npos ? std::string::npos : e - pos);
            out.push_back(K->require(part));
            if (e == std::string::npos) break;
            pos = e + 1;
        }
        return out;
    };
    std::vector<int> star_cells, dual_cells, dualb_cells;
    for (int i = 0; i < sd->num_cells(); ++i) {
        if (contains_elt(i)) star_cells.push_back(i);
        auto elems = chain_elems(i);
        bool all_ge = true, all_gt = true;
        for (int e : elems) {
            auto cl = K->closure({e});
            bool ge = std::binary_search(cl.begin(), cl.end(), c0);
            all_ge = all_ge && ge;
            all_gt = all_gt && ge && e != c0;
        }
        if (all_ge) dual_cells.push_back(i);
        if (all_gt) dualb_cells.push_back(i);
    }
    auto star = SubcomplexRef::make(sd, sd->closure(star_cells));
    std::vector<int> link_cells;
    for (int i : star.cells)
        if (!contains_elt(i)) link_cells.push_back(i);
    auto link = SubcomplexRef::make(sd, link_cells);
    auto dual = SubcomplexRef::make(sd, dual_cells);
    auto dualb = SubcomplexRef::make(sd, dualb_cells);
    return {sd, star, link, dual, dualb};
}

// ---- fundamental chains -------------------------------------------------------

FundamentalChain fundamental_chain(ComplexPtr K, const std::map<std::string, i64>& signs) {
    int n = K->top_dim();
    // pure check: every maximal cell has top dimension
    for (int i = 0; i < K->num_cells(); ++i)
        if (K->cofaces(i).empty() && K->dim_of(i) != n)
            throw error("fundamental_chain: complex is not pure");
    const auto& tops = K->cells_of_dim(n);
    std::map<int, i64> sg;
    if (!signs.empty()) {
        for (auto& [id, s] : signs) {
            if (s != 1 && s != -1) throw error("fundamental_chain: signs must be +-1");
            sg[K->require(id)] = s;
        }
        for (int t : tops)
            if (!sg.count(t)) throw error("fundamental_chain: missing sign for " + K->cell(t).id);
    } else {
        // greedy propagation over shared facets; components seeded in id order
        for (int seed : tops) {
            if (sg.count(seed)) continue;
            sg[seed] = 1;
            std::vector<int> stack{seed};
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (auto& [f, cinc] : K->boundary(cur)) {
                    const auto& cof = K->cofaces(f);
                    if (cof.size() != 2) continue;
                    int other = cof[0] == cur ? cof[1] : cof[0];
                    i64 oinc = K->incidence(other, f);
                    if ((cinc != 1 && cinc != -1) || (oinc != 1 && oinc != -1)) continue;
                    i64 want = -sg[cur] * cinc * oinc;
                    auto it = sg.find(other);
                    if (it == sg.end()) {
                        sg[other] = want;
                        stack.push_back(other);
                    } else if (it->second != want) {
                        return {false, {}, {}};
                    }
                }
            }
        }
    }
    CellChain chain, bnd;
    for (auto& [t, s] : sg) chain[t] = s;
    for (auto& [t, s] : sg)
        for (auto& [f, c] : K->boundary(t)) {
            bnd[f] += checked_mul(s, c);
            if (bnd[f] == 0) bnd.erase(f);
        }
    // coherence: the boundary must be supported on facets of multiplicity one
    for (auto& [f, c] : bnd) {
        (void)c;
        if (K->cofaces(f).size() != 1) return {false, {}, {}};
    }
    return {true, std::move(chain), std::move(bnd)};
}

}  // namespace adt
