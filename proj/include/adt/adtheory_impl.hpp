#pragma once

// template implementations for adtheory.hpp (included at the end of it)

#include "adt/corpus.hpp"

namespace adt {

namespace detail {

inline CellIso kappa_point_iso() {
    // Cell(I, {0,1}) -> Cell(*) sending the standard-oriented 1-cell to the point
    ComplexPtr I = interval();
    ComplexPtr pt = point();
    std::vector<int> ends{I->require("0"), I->require("1")};
    std::sort(ends.begin(), ends.end());
    CellPair src{I, ends};
    return make_cell_iso(src, CellPair::whole(pt), 1, [](const std::string&) {
        return std::make_pair(std::string("0"), static_cast<i64>(1));
    });
}

// the two squares of M' as images of I x I under gamma and delta
inline std::map<std::string, std::string> m_prime_square_map(bool first) {
    if (first)
        return {{"(I|I)", "A"},  {"(I|0)", "a0"}, {"(I|1)", "a1"}, {"(0|I)", "l3"},
                {"(1|I)", "m"},  {"(0|0)", "p"},  {"(1|0)", "q"},  {"(0|1)", "s"},
                {"(1|1)", "t"}};
    return {{"(I|I)", "B"},  {"(I|0)", "b0"}, {"(I|1)", "b1"}, {"(0|I)", "m"},
            {"(1|I)", "l4"}, {"(0|0)", "q"},  {"(1|0)", "r"},  {"(0|1)", "t"},
            {"(1|1)", "u"}};
}

}  // namespace detail

template <class Theory>
typename Theory::Ad bordism_add(const Theory& th, const typename Theory::Ad& F,
                                const typename Theory::Ad& G) {
    if (F.degree != G.degree) throw error("bordism_add: degree mismatch");
    CellIso kp = detail::kappa_point_iso();
    auto kF = th.reindex(kp, F);
    auto kG = th.reindex(kp, G);
    auto JF = th.cylinder(kF);  // on product(I, interval())
    auto JG = th.cylinder(kG);
    ComplexPtr Mp = model_M_prime();
    auto Hp = th.trivial(CellPair::whole(Mp), F.degree + 1);
    auto mapA = detail::m_prime_square_map(true);
    auto mapB = detail::m_prime_square_map(false);
    Hp = th.overlay(Hp, th.transport(JF, CellPair::whole(Mp), mapA), true);
    Hp = th.overlay(Hp, th.transport(JG, CellPair::whole(Mp), mapB), true);
    if (!th.is_ad(Hp)) throw error("bordism_add: assembled M'-ad fails the ad check");
    Subdivision ref = m_refinement();
    auto H = th.glue(ref, Hp);
    ComplexPtr M = ref.coarse;
    // l3* and l4* must be trivial by construction
    for (const char* id : {"l3", "l4"})
        if (!th.is_trivial_on(H, M->require(id)))
            throw error("bordism_add: H is not trivial on " + std::string(id));
    // l5 restriction, transported to (I, {0,1})
    std::vector<int> l5cells = M->closure({M->require("l5")});
    auto sub = SubcomplexRef::make(M, l5cells);
    ComplexPtr subc = sub.as_complex("l5-arc");
    auto Hl5 = th.restrict_to(H, sub, subc);
    std::map<std::string, std::string> to_I{{"I", "l5"}, {"0", "s"}, {"1", "u"}};
    ComplexPtr I = interval();
    std::vector<int> ends{I->require("0"), I->require("1")};
    std::sort(ends.begin(), ends.end());
    auto on_I = th.transport(Hl5, CellPair{I, ends}, to_I);
    return th.inverse_reindex(kp, on_I);
}

inline bool AxiomReport::all() const {
    for (auto& [c, ok] : passed)
        if (!ok) return false;
    return !passed.empty();
}

template <class Theory>
AxiomReport check_axioms(const Theory& th, Rng& rng) {
    AxiomReport rep;
    auto note = [&](char ax, const std::string& s) {
        rep.notes.push_back(std::string(1, ax) + ": " + s);
    };
    ComplexPtr d1 = simplex(1), d2 = simplex(2);
    ComplexPtr M = model_M();
    auto bd2 = boundary_subcomplex(d2);

    // (a) restriction functoriality and the relative-ad identity
    try {
        bool ok = true;
        for (auto& F : th.sample_ads(CellPair::whole(d2), 0, rng, 3)) {
            for (int c = 0; c < d2->num_cells() && ok; ++c) {
                auto cl = SubcomplexRef::make(d2, d2->closure({c}));
                auto R = th.restrict_to(F, cl, cl.as_complex());
                if (!th.is_ad(R)) ok = false;
            }
        }
        for (auto& F : th.sample_ads(CellPair::make(d2, bd2), 1, rng, 3)) {
            // a relative ad is an absolute ad vanishing on L
            auto Fabs = F;
            Fabs.base = CellPair::whole(d2);
            if (!th.is_ad(Fabs) || !th.vanishes_on(F, bd2.cells)) ok = false;
        }
        rep.passed['a'] = ok;
    } catch (const std::exception& e) {
        rep.passed['a'] = false;
        note('a', e.what());
    }

    // (b) trivial pre-ads are ads
    try {
        bool ok = true;
        for (ComplexPtr K : {simplex(0), d1, d2, simplex(3), interval(), M, model_M_prime(),
                             product(interval(), d1)})
            for (int k : {-1, 0, 2})
                ok = ok && th.is_ad(th.trivial(CellPair::whole(K), k));
        rep.passed['b'] = ok;
    } catch (const std::exception& e) {
        rep.passed['b'] = false;
        note('b', e.what());
    }

    // (c) involution closure
    try {
        bool ok = true;
        for (auto& F : th.sample_ads(CellPair::whole(d2), 0, rng, 4))
            ok = ok && th.is_ad(th.involute(F));
        rep.passed['c'] = ok;
    } catch (const std::exception& e) {
        rep.passed['c'] = false;
        note('c', e.what());
    }

    // (d) isomorphism closure
    try {
        bool ok = true;
        for (auto& F : th.sample_ads(CellPair::whole(d2), 0, rng, 4))
            ok = ok && th.is_ad(th.isomorphic_variant(F, rng));
        rep.passed['d'] = ok;
    } catch (const std::exception& e) {
        rep.passed['d'] = false;
        note('d', e.what());
    }

    // (e) locality: global ad-hood agrees with cellwise ad-hood
    try {
        bool ok = true;
        auto cellwise = [&](const typename Theory::Ad& F) {
            for (int c = 0; c < d2->num_cells(); ++c) {
                auto cl = SubcomplexRef::make(d2, d2->closure({c}));
                if (!th.is_ad(th.restrict_to(F, cl, cl.as_complex()))) return false;
            }
            return true;
        };
        for (auto& F : th.sample_ads(CellPair::whole(d2), 0, rng, 3)) {
            if (th.is_ad(F) != cellwise(F)) ok = false;
            auto P = th.perturbed(F, rng);
            if (th.is_ad(P) != cellwise(P)) ok = false;
        }
        rep.passed['e'] = ok;
    } catch (const std::exception& e) {
        rep.passed['e'] = false;
        note('e', e.what());
    }

    // (f) reindexing along kappa, lambda, theta
    try {
        bool ok = true;
        auto kp = kappa(d1);
        auto lm = lambda_iso(d1);
        auto th1 = theta_susp(1);
        ok = ok && check_incidence_compatible(kp.iso) && check_incidence_compatible(lm.iso) &&
             check_incidence_compatible(th1);
        for (auto& F : th.sample_ads(CellPair::whole(d1), 0, rng, 3)) {
            for (const CellIso* iso : {&kp.iso, &lm.iso, &th1}) {
                auto RF = th.reindex(*iso, F);
                ok = ok && th.is_ad(RF);
                ok = ok && th.equal(th.inverse_reindex(*iso, RF), F);
            }
        }
        rep.passed['f'] = ok;
    } catch (const std::exception& e) {
        rep.passed['f'] = false;
        note('f', e.what());
    }

    // (g) gluing along M' -> M and the barycentric subdivision of D^1
    try {
        bool ok = true;
        std::vector<Subdivision> subs;
        subs.push_back(m_refinement());
        subs.push_back(barycentric_subdivision(d1).refinement);
        for (auto& s : subs) {
            for (auto& F : th.sample_ads(CellPair::whole(s.fine), 0, rng, 3)) {
                auto Gd = th.glue(s, F);
                ok = ok && th.is_ad(Gd);
                // residual agreement
                std::vector<int> res;
                for (int c = 0; c < s.coarse->num_cells(); ++c)
                    if (s.residual(c)) res.push_back(c);
                res = s.coarse->closure(res);
                auto subr = SubcomplexRef::make(s.coarse, res);
                auto subrc = subr.as_complex();
                std::vector<int> resf;
                for (int c : res) resf.push_back(s.fine->require(s.coarse->cell(c).id));
                auto subf = SubcomplexRef::make(s.fine, resf);
                ok = ok && th.equal(th.restrict_to(Gd, subr, subrc),
                                    th.restrict_to(F, subf, subrc));
            }
        }
        rep.passed['g'] = ok;
    } catch (const std::exception& e) {
        rep.passed['g'] = false;
        note('g', e.what());
    }

    // (h) cylinder: both ends equal F; trivial goes to trivial
    try {
        bool ok = true;
        for (auto& F : th.sample_ads(CellPair::whole(d1), 0, rng, 3)) {
            auto J = th.cylinder(F);
            ok = ok && th.is_ad(J);
            ok = ok && th.cylinder_ends_equal(J, F);
        }
        auto Jt = th.cylinder(th.trivial(CellPair::whole(d1), 0));
        ok = ok && th.is_trivial_ad(Jt);
        rep.passed['h'] = ok;
    } catch (const std::exception& e) {
        rep.passed['h'] = false;
        note('h', e.what());
    }
    return rep;
}

}  // namespace adt
