#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <numeric>
#include <random>

#include "adt/matrix.hpp"

using namespace adt;

int main(int argc, char** argv) {
    set_snf_verification(true);
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}

namespace {
Mat random_mat(Rng& rng, int r, int c, i64 lo = -4, i64 hi = 4) {
    Mat m(r, c);
    for (auto& x : m.a) x = rand_range(rng, lo, hi);
    return m;
}

i64 det_small(const Mat& A) {
    // expansion by minors; only for tests on small matrices
    int n = A.rows;
    if (n == 0) return 1;
    if (n == 1) return A.at(0, 0);
    i64 s = 0;
    for (int j = 0; j < n; ++j) {
        if (A.at(0, j) == 0) continue;
        Mat M(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                M.at(i - 1, cc++) = A.at(i, c);
            }
        }
        s += ((j % 2 == 0) ? 1 : -1) * A.at(0, j) * det_small(M);
    }
    return s;
}
}  // namespace

TEST_CASE("smith normal form: reconstruction and unimodularity") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int r = static_cast<int>(rand_range(rng, 0, 6));
        int c = static_cast<int>(rand_range(rng, 0, 6));
        Mat A = random_mat(rng, r, c);
        Snf s = smith(A);  // verification on: checks U*A*V == D internally
        CHECK(std::abs(det_small(s.U)) == 1);
        CHECK(std::abs(det_small(s.V)) == 1);
        CHECK(s.rank == rank_bareiss(A));
    }
}

TEST_CASE("kernel basis really spans the kernel") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Mat A = random_mat(rng, static_cast<int>(rand_range(rng, 1, 5)),
                           static_cast<int>(rand_range(rng, 1, 6)));
        Mat K = kernel_basis(A);
        if (K.cols > 0) CHECK(mul(A, K).is_zero());
        CHECK(K.cols == A.cols - rank_bareiss(A));
    }
}

TEST_CASE("solve finds integer solutions exactly when they exist") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        Mat A = random_mat(rng, static_cast<int>(rand_range(rng, 1, 5)),
                           static_cast<int>(rand_range(rng, 1, 5)));
        std::vector<i64> x(A.cols);
        for (auto& v : x) v = rand_range(rng, -3, 3);
        auto b = apply(A, x);
        auto sol = solve(A, b);
        REQUIRE(sol.has_value());
        CHECK(apply(A, *sol) == b);
    }
    // 2x = 1 has no integer solution
    Mat A(1, 1);
    A.at(0, 0) = 2;
    CHECK(!solve(A, {1}).has_value());
    CHECK(solve(A, {6}).value() == std::vector<i64>{3});
}

TEST_CASE("subquotient invariants") {
    // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
    Mat gens = Mat::identity(2);
    Mat rel(2, 2);
    rel.at(0, 0) = 2;
    rel.at(1, 1) = 3;
    auto q = make_subquotient(gens, rel);
    auto g = q.invariants();
    CHECK(g.betti == 0);
    CHECK(g.torsion == std::vector<i64>{6});

    // lattice <(2,4)> inside Z^2, no relations: Z
    Mat gens2(2, 1);
    gens2.at(0, 0) = 2;
    gens2.at(1, 0) = 4;
    auto q2 = make_subquotient(gens2, Mat(2, 0));
    CHECK(q2.invariants() == GroupType{1, {}});
    CHECK(q2.coords({2, 4}).has_value());
    CHECK(!q2.coords({1, 2}).has_value());
}

TEST_CASE("same_class and lattice ops") {
    Mat gens = Mat::identity(2);
    Mat rel(2, 1);
    rel.at(0, 0) = 5;
    rel.at(1, 0) = 0;
    auto q = make_subquotient(gens, rel);
    CHECK(q.same_class({7, 1}, {2, 1}));
    CHECK(!q.same_class({7, 1}, {2, 2}));
    Mat L(2, 1);
    L.at(0, 0) = 2;
    L.at(1, 0) = 2;
    CHECK(lattice_member(L, {4, 4}));
    CHECK(!lattice_member(L, {2, 4}));
}

TEST_CASE("preimage lattice") {
    // M = (1 1), R = <2>: {x : x1 + x2 in 2Z}
    Mat M(1, 2);
    M.at(0, 0) = 1;
    M.at(0, 1) = 1;
    Mat R(1, 1);
    R.at(0, 0) = 2;
    Mat P = preimage_lattice(M, R);
    CHECK(P.cols == 2);
    for (int j = 0; j < P.cols; ++j)
        CHECK((P.at(0, j) + P.at(1, j)) % 2 == 0);
    CHECK(lattice_member(P, {1, 1}));
    CHECK(!lattice_member(P, {1, 0}));
}

TEST_CASE("signature of symmetric forms") {
    Mat G = Mat::identity(3);
    CHECK(signature_of_form(G) == 3);
    G.at(2, 2) = -5;
    CHECK(signature_of_form(G) == 1);
    // hyperbolic plane
    Mat H(2, 2);
    H.at(0, 1) = 1;
    H.at(1, 0) = 1;
    CHECK(signature_of_form(H) == 0);
    // negative definite with coupling
    Mat N(2, 2);
    N.at(0, 0) = -2;
    N.at(1, 1) = -3;
    N.at(0, 1) = N.at(1, 0) = 1;
    CHECK(signature_of_form(N) == -2);
    // E8-like check on a small known form: diag(1) ++ hyperbolic = sig 1
    Mat M(3, 3);
    M.at(0, 0) = 1;
    M.at(1, 2) = M.at(2, 1) = 1;
    CHECK(signature_of_form(M) == 1);
}

TEST_CASE("signature is invariant under congruence") {
    Rng rng(101);
    for (int t = 0; t < 30; ++t) {
        int n = static_cast<int>(rand_range(rng, 1, 5));
        Mat G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                i64 v = rand_range(rng, -3, 3);
                G.at(i, j) = v;
                G.at(j, i) = v;
            }
        int s1 = signature_of_form(G);
        // random unimodular P from elementary ops
        Mat P = Mat::identity(n);
        for (int k = 0; k < 6; ++k) {
            int i = static_cast<int>(rand_range(rng, 0, n - 1));
            int j = static_cast<int>(rand_range(rng, 0, n - 1));
            if (i == j) continue;
            i64 q = rand_range(rng, -2, 2);
            for (int c = 0; c < n; ++c) P.at(i, c) += q * P.at(j, c);
        }
        Mat G2 = mul(mul(P, G), P.transposed());
        CHECK(signature_of_form(G2) == s1);
    }
}
