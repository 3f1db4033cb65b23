#include "qdecouple/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qd;

TEST_CASE("index schemes and weights") {
    auto so5 = IndexScheme::make(CaseTag::so, 5);
    CHECK(so5.indices == std::vector<int>{-2, -1, 0, 1, 2});
    CHECK(so5.rho2(-2) == 3);
    CHECK(so5.rho2(0) == 0);
    CHECK(so5.rho2(2) == -3);
    auto so4 = IndexScheme::make(CaseTag::so, 4);
    CHECK(so4.indices == std::vector<int>{-2, -1, 1, 2});
    CHECK(so4.rho2(-2) == 2);
    CHECK(so4.rho2(1) == 0);
    CHECK_THROWS_AS(IndexScheme::make(CaseTag::so, 2), std::invalid_argument);
    CHECK(IndexScheme::eta(1) == 1);
    CHECK(IndexScheme::eta(-1) == -1);
    CHECK(IndexScheme::eta(2) == 0);
}

TEST_CASE("braid matrix entries") {
    auto so3 = IndexScheme::make(CaseTag::so, 3);
    Mat4 R = build_rhat(so3);
    CHECK(R.get(1, 1, 1, 1) == Scalar::q());
    CHECK(R.get(0, 0, 0, 0) == Scalar::one());
    CHECK(R.get(1, -1, -1, 1) == Scalar::q_pow(-1));
    auto sl2 = IndexScheme::make(CaseTag::sl, 2);
    Mat4 Rsl = build_rhat(sl2);
    CHECK(Rsl.get(1, 2, 2, 1) == Scalar::one());
    CHECK(Rsl.get(1, 2, 1, 2) == Scalar::k());
}

TEST_CASE("metric") {
    auto so3 = IndexScheme::make(CaseTag::so, 3);
    Metric g = build_metric(so3);
    CHECK(g.g(0, 0) == Scalar::one());
    // rho_{-1} = 1/2, rho_1 = -1/2 under the descending weight list
    CHECK(g.g(1, -1) == Scalar::q_half_pow(1));
    CHECK(g.g(-1, 1) == Scalar::q_half_pow(-1));
    CHECK(g.g(1, 1).is_zero());
    CHECK_THROWS_AS(build_metric(IndexScheme::make(CaseTag::sl, 3)), std::invalid_argument);
    // g^{ih} g_{hj} = delta^i_j
    for (int N = 3; N <= 6; ++N) {
        auto s = IndexScheme::make(CaseTag::so, N);
        Metric m = build_metric(s);
        for (int i : s.indices)
            for (int j : s.indices) {
                Scalar acc;
                for (int h : s.indices) acc += m.g(i, h) * m.g(h, j);
                CHECK(acc == (i == j ? Scalar::one() : Scalar::zero()));
            }
    }
}

TEST_CASE("braid and projector batteries") {
    for (auto [c, N] : std::vector<std::pair<CaseTag, int>>{
             {CaseTag::sl, 2}, {CaseTag::sl, 3}, {CaseTag::so, 3}, {CaseTag::so, 4}, {CaseTag::so, 5}}) {
        auto s = IndexScheme::make(c, N);
        INFO(s.name());
        CHECK(verify_braid(s).all_pass());
        CHECK(verify_projectors(s).all_pass());
    }
}

TEST_CASE("so3 minimal polynomial factors") {
    auto s = IndexScheme::make(CaseTag::so, 3);
    Mat4 R = build_rhat(s);
    Mat4 id = Mat4::identity(s);
    Mat4 m = (R - id.scaled(Scalar::q()))
                 .compose(R + id.scaled(Scalar::q_pow(-1)))
                 .compose(R - id.scaled(Scalar::q_pow(1 - 3)));
    CHECK(m.is_zero());
}

TEST_CASE("antisymmetric projector rank") {
    for (int N = 3; N <= 5; ++N) {
        auto s = IndexScheme::make(CaseTag::so, N);
        auto ps = build_projectors(s, build_rhat(s));
        CHECK(mat4_rank(projector_by_label(ps, "P_a")) ==
              static_cast<std::size_t>(N * (N - 1) / 2));
    }
}

TEST_CASE("tampered matrix fails the braid relation") {
    auto s = IndexScheme::make(CaseTag::so, 3);
    Mat4 R = build_rhat(s);
    R.add(1, 1, 1, 1, Scalar::one());  // corrupt one entry
    CHECK_FALSE(braid_relation_holds(R, s));
}

TEST_CASE("fundamental representation of the FRT generators") {
    auto s = IndexScheme::make(CaseTag::so, 3);
    FrtRep rep = build_frt_rep(s);
    const auto& idx = s.indices;

    // zero patterns: rho(L+^i_k) = 0 for i > k, rho(L-^i_k) = 0 for i < k
    for (int i : idx)
        for (int k : idx)
            for (int j : idx)
                for (int h : idx) {
                    if (i > k) CHECK(rep.rho_plus(i, k, j, h).is_zero());
                    if (i < k) CHECK(rep.rho_minus(i, k, j, h).is_zero());
                }

    // antipode solve: sum_h rho(S L^i_h) rho(L^h_j) = delta^i_j
    auto rho_p = [&](int u, int l, int r, int c) { return rep.rho_plus(u, l, r, c); };
    auto S = solve_antipode_rep(s, rho_p);
    auto pos = [&](int i) {
        for (std::size_t p = 0; p < idx.size(); ++p)
            if (idx[p] == i) return p;
        FAIL("bad index");
        return std::size_t(0);
    };
    for (int i : idx)
        for (int j : idx)
            for (int a : idx)
                for (int b : idx) {
                    Scalar acc;
                    for (int h : idx)
                        for (int c : idx)
                            acc += S[pos(i)][pos(h)].at(pos(a), pos(c)) * rep.rho_plus(h, j, c, b);
                    CHECK(acc == ((i == j && a == b) ? Scalar::one() : Scalar::zero()));
                }

    // metric compatibility: rho(S L-^j_i) = g_{ih} rho(L-^h_k) g^{kj}
    Metric g = build_metric(s);
    auto rho_m = [&](int u, int l, int r, int c) { return rep.rho_minus(u, l, r, c); };
    auto Sm = solve_antipode_rep(s, rho_m);
    for (int j : idx)
        for (int i : idx)
            for (int a : idx)
                for (int b : idx) {
                    Scalar direct = Sm[pos(j)][pos(i)].at(pos(a), pos(b));
                    Scalar via = g.g(i, -i) * rep.rho_minus(-i, -j, a, b) * g.g(-j, j);
                    CHECK(direct == via);
                }

    // inverse antipode solve
    auto Sinv = solve_antipode_inv_rep(s, rho_p);
    for (int c : idx)
        for (int b : idx)
            for (int a : idx)
                for (int d : idx) {
                    Scalar acc;
                    for (int e : idx)
                        for (int h : idx)
                            acc += Sinv[pos(e)][pos(b)].at(pos(a), pos(h)) * rep.rho_plus(c, e, h, d);
                    CHECK(acc == ((c == b && a == d) ? Scalar::one() : Scalar::zero()));
                }
}

TEST_CASE("rep-level FRT substitution reproduces the braid relation") {
    auto s = IndexScheme::make(CaseTag::so, 3);
    Mat4 R = build_rhat(s);
    CHECK(frt_relation_holds(R, R, s));
}
