#include "qdecouple/presets.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qd;

TEST_CASE("euclid:so3 alphabet and defining relations") {
    auto E = build_euclid(3);
    const Alphabet& a = E.rules->alphabet();
    CHECK(a.size() == 6);  // p[-1], p[0], p[1], sqrt(p0), P1, sqrt(P1)
    CHECK(a.contains("sqrt(p0)"));
    CHECK(a.contains("sqrt(P1)"));
    CHECK(a.info(E.sqrt_p0).invertible);
    CHECK(a.info(E.sqrtP.at(1)).invertible);
    // NF(P_1^2 - sum g_{hk} p^h p^k) = 0, with P_1 = sqrt(P1)^2
    NCPoly diff = NCPoly(Word::of(E.Plen.at(1), 2)) - E.pa_squared(1);
    CHECK(E.rules->normal_form(diff).poly.is_zero());
    NCPoly diff_root = NCPoly(Word::of(E.sqrtP.at(1), 2)) - NCPoly(Word::of(E.Plen.at(1)));
    CHECK(E.rules->normal_form(diff_root).poly.is_zero());
    // sqrt(p0)^2 carries p^0
    NCPoly diff2 = NCPoly(Word::of(E.sqrt_p0, 2)) - NCPoly(Word::of(E.p[0]));
    CHECK(E.rules->normal_form(diff2).poly.is_zero());
}

TEST_CASE("euclid:so4 includes the Cartan corner with (xkapparel) rules") {
    auto E = build_euclid(4);
    const Alphabet& a = E.rules->alphabet();
    REQUIRE(E.cartan >= 0);
    CHECK(a.info(E.cartan).invertible);
    CHECK(a.info(E.p[1]).invertible);
    CHECK(a.info(E.p[-1]).invertible);
    // K p^{+-1} = q^{+-1} p^{+-1} K, K p^{+-2} = p^{+-2} K
    auto check_k = [&](int i, const Scalar& want) {
        NCPoly lhs = NCPoly(Word::of(E.cartan)) * NCPoly(Word::of(E.p[i]));
        NCPoly rhs = NCPoly(Word::of(E.p[i]) * Word::of(E.cartan)).scaled(want);
        CHECK(E.rules->normal_form(lhs - rhs).poly.is_zero());
    };
    check_k(1, Scalar::q());
    check_k(-1, Scalar::q_pow(-1));
    check_k(2, Scalar::one());
    check_k(-2, Scalar::one());
}

TEST_CASE("euclid presets are locally confluent") {
    for (int N = 3; N <= 6; ++N) {
        auto E = build_euclid(N);
        INFO(E.name);
        CHECK(check_local_confluence(*E.rules, E.name).all_pass());
    }
}

TEST_CASE("preset construction is deterministic") {
    auto a = build_euclid(4);
    auto b = build_euclid(4);
    REQUIRE(a.rules->rules().size() == b.rules->rules().size());
    for (std::size_t r = 0; r < a.rules->rules().size(); ++r) {
        CHECK(a.rules->rules()[r].lhs == b.rules->rules()[r].lhs);
        CHECK(a.rules->rules()[r].rhs == b.rules->rules()[r].rhs);
    }
    CHECK(a.rules->scalings() == b.rules->scalings());
}

TEST_CASE("cross presets: (gio) contract holds verbatim") {
    for (int N = 3; N <= 4; ++N) {
        auto C = build_cross(N);
        const auto& s = C.A.scheme;
        for (int sign : {+1, -1}) {
            const Mat4& rm = sign > 0 ? C.A.rhat : C.A.rhat_inv;
            for (int i : s.indices)
                for (int a : s.indices)
                    for (int b : s.indices) {
                        NCPoly L = C.l_image(sign, a, b);
                        if (L.is_zero()) continue;
                        NCPoly lhs = NCPoly(Word::of(C.A.p[i])) * L;
                        NCPoly rhs;
                        for (const auto& [k, v] : rm.entries()) {
                            if (k[1] != i || k[3] != b) continue;
                            NCPoly li = C.l_image(sign, a, k[0]);
                            if (li.is_zero()) continue;
                            rhs += li * NCPoly(Word::of(C.A.p[k[2]])).scaled(v);
                        }
                        auto nf = C.rules->normal_form(lhs - rhs);
                        INFO(C.name << " sign=" << sign << " i=" << i << " a=" << a << " b=" << b);
                        CHECK(nf.poly.is_zero());
                        CHECK_FALSE(nf.stuck);
                    }
        }
    }
}

TEST_CASE("cross normal forms are layered L+ / K / L- / A") {
    auto C = build_cross(3);
    const Alphabet& a = C.rules->alphabet();
    // every degree-2 word over letters reduces to sorted layered form
    for (std::size_t l1 = 0; l1 < a.size(); ++l1)
        for (std::size_t l2 = 0; l2 < a.size(); ++l2) {
            Word w = Word::of(static_cast<int>(l1)) * Word::of(static_cast<int>(l2));
            auto nf = C.rules->normal_form(w);
            if (nf.stuck) continue;
            // layering is by family; same-family L pairs keep their order
            for (const auto& [word, c] : nf.poly.terms())
                for (std::size_t t = 0; t + 1 < word.run_count(); ++t)
                    CHECK(static_cast<int>(a.info(word.runs[t].first).family) <=
                          static_cast<int>(a.info(word.runs[t + 1].first).family));
        }
}

TEST_CASE("cross mixed overlaps are confluent; corrupted swap fails") {
    for (int N = 3; N <= 4; ++N) {
        auto C = build_cross(N);
        INFO(C.name);
        CHECK_FALSE(check_cross_confluence(C).any_fail());
    }
    auto bad = build_cross(3, 1'000'000, /*corrupt_swap=*/true);
    CHECK(check_cross_confluence(bad).any_fail());
}

TEST_CASE("P_n^2 commutes with all letters at degree 2 (center scan core)") {
    for (int N = 3; N <= 4; ++N) {
        auto C = build_cross(N);
        NCPoly P2 = C.A.pa_squared(C.A.scheme.rank);
        const Alphabet& a = C.rules->alphabet();
        for (std::size_t l = 0; l < a.size(); ++l) {
            NCPoly u(Word::of(static_cast<int>(l)));
            auto nf = C.rules->normal_form(P2 * u - u * P2);
            INFO(C.name << " letter " << a.info(static_cast<int>(l)).name);
            CHECK(nf.poly.is_zero());
            CHECK_FALSE(nf.stuck);
        }
    }
}
