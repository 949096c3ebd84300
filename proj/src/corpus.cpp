#include "adt/corpus.hpp"

#include <algorithm>
#include <set>

namespace adt {

namespace {
std::string vid(int v) {
    if (v < 0 || v > 9) throw error("simplicial_from_facets: vertex out of range");
    return std::string(1, static_cast<char>('0' + v));
}

std::string face_id(const std::vector<int>& vs) {
    std::string s;
    for (int v : vs) s += vid(v);
    return s;
}
}  // namespace

ComplexPtr simplicial_from_facets(const std::vector<std::vector<int>>& facets,
                                  const std::string& name) {
    std::set<std::vector<int>> faces;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (std::unique(f.begin(), f.end()) != f.end())
            throw error("simplicial_from_facets: repeated vertex");
        int m = static_cast<int>(f.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<int> sub;
            for (int t = 0; t < m; ++t)
                if (mask & (1 << t)) sub.push_back(f[t]);
            faces.insert(sub);
        }
    }
    std::vector<CellRec> cells;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    for (auto& f : faces) {
        std::string id = face_id(f);
        cells.push_back({id, static_cast<int>(f.size()) - 1, ""});
        if (f.size() > 1) {
            auto& lst = bd[id];
            for (size_t j = 0; j < f.size(); ++j) {
                std::vector<int> sub;
                for (size_t t = 0; t < f.size(); ++t)
                    if (t != j) sub.push_back(f[t]);
                lst.push_back({face_id(sub), sign_pow(static_cast<i64>(j))});
            }
        }
    }
    return BallComplex::make(std::move(cells), std::move(bd), name);
}

ComplexPtr boundary_of_simplex(int n) {
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(f);
    }
    return simplicial_from_facets(facets, "boundary-delta" + std::to_string(n));
}

ComplexPtr circle3() { return boundary_of_simplex(2); }

ComplexPtr torus7() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return simplicial_from_facets(facets, "torus-7");
}

ComplexPtr rp2_6() {
    std::vector<std::vector<int>> facets = {{1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 6},
                                            {1, 5, 6}, {2, 3, 5}, {2, 3, 6}, {2, 4, 6},
                                            {3, 4, 5}, {4, 5, 6}};
    return simplicial_from_facets(facets, "rp2-6");
}

ComplexPtr cp2_9() {
    std::vector<std::vector<int>> facets = {
        {0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 4, 5}, {0, 1, 3, 4, 6}, {0, 1, 3, 5, 7},
        {0, 1, 3, 6, 7}, {0, 1, 4, 5, 6}, {0, 1, 5, 6, 8}, {0, 1, 5, 7, 8}, {0, 1, 6, 7, 8},
        {0, 2, 3, 4, 8}, {0, 2, 3, 5, 8}, {0, 2, 4, 5, 6}, {0, 2, 4, 6, 7}, {0, 2, 4, 7, 8},
        {0, 2, 5, 6, 8}, {0, 2, 6, 7, 8}, {0, 3, 4, 6, 7}, {0, 3, 4, 7, 8}, {0, 3, 5, 7, 8},
        {1, 2, 3, 4, 8}, {1, 2, 3, 5, 7}, {1, 2, 3, 6, 7}, {1, 2, 3, 6, 8}, {1, 2, 4, 5, 7},
        {1, 2, 4, 7, 8}, {1, 2, 6, 7, 8}, {1, 3, 4, 6, 8}, {1, 4, 5, 6, 8}, {1, 4, 5, 7, 8},
        {2, 3, 5, 6, 7}, {2, 3, 5, 6, 8}, {2, 4, 5, 6, 7}, {3, 4, 5, 6, 7}, {3, 4, 5, 6, 8},
        {3, 4, 5, 7, 8}};
    return simplicial_from_facets(facets, "cp2-9");
}

ComplexPtr wedge_circles() {
    std::vector<std::vector<int>> facets = {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}};
    return simplicial_from_facets(facets, "wedge-circles");
}

ComplexPtr two_points() {
    return simplicial_from_facets({{0}, {1}}, "two-points");
}

ComplexPtr disjoint_union(ComplexPtr a, ComplexPtr b, const std::string& name) {
    std::vector<CellRec> cells;
    std::map<std::string, std::vector<std::pair<std::string, i64>>> bd;
    auto addall = [&](ComplexPtr K, const std::string& prefix) {
        for (int i = 0; i < K->num_cells(); ++i) {
            auto c = K->cell(i);
            c.id = prefix + c.id;
            cells.push_back(c);
            auto& lst = bd[c.id];
            for (auto& [j, v] : K->boundary(i)) lst.push_back({prefix + K->cell(j).id, v});
            if (lst.empty()) bd.erase(c.id);
        }
    };
    addall(a, "L.");
    addall(b, "R.");
    return BallComplex::make(std::move(cells), std::move(bd),
                             name.empty() ? a->name() + "+" + b->name() : name);
}

ComplexPtr builtin_complex(const std::string& name) {
    if (name == "point") return point();
    if (name == "interval") return interval();
    if (name == "m") return model_M();
    if (name == "m-prime") return model_M_prime();
    if (name == "circle") return circle3();
    if (name == "torus-7") return torus7();
    if (name == "rp2-6") return rp2_6();
    if (name == "cp2-9") return cp2_9();
    if (name == "wedge-circles") return wedge_circles();
    if (name == "two-points") return two_points();
    if (name.rfind("delta", 0) == 0 && name.size() == 6 && isdigit(name[5]))
        return simplex(name[5] - '0');
    if (name.rfind("boundary-delta", 0) == 0 && name.size() == 15 && isdigit(name[14]))
        return boundary_of_simplex(name[14] - '0');
    return nullptr;
}

std::vector<std::string> builtin_complex_names() {
    return {"point",      "interval",  "m",         "m-prime",       "circle",
            "torus-7",    "rp2-6",     "cp2-9",     "wedge-circles", "two-points",
            "delta<n>",   "boundary-delta<n>"};
}

}  // namespace adt
