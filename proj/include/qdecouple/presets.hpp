#pragma once

// Rule-set presets: the extended quantum Euclidean space R_q^N and its cross
// product with the U_q so(N) Borel subalgebras.
//
// Extended Euclidean alphabet: coordinates p^i, the roots sqrt(P_a) with
// P_a^2 = sum_{h,k=-a..a} g_{hk} p^h p^k, sqrt(p^0) for odd N, and for even N
// the Cartan corner K = L-^1_1 = L+^{-1}_{-1} together with inverses of
// p^{+-1}.  The cross preset adds the remaining FRT letters with the (gio)
// crossing rules and the mixed L-L+ swap solved from (L+L-rel).

#include "rules.hpp"

#include <functional>

namespace qd {

struct EuclidPreset {
    IndexScheme scheme;
    Metric metric;
    Mat4 rhat, rhat_inv;
    std::vector<std::pair<std::string, Mat4>> projectors;
    std::shared_ptr<RuleSet> rules;
    std::map<int, int> p;       // coordinate index -> letter
    std::map<int, int> Plen;    // 1..n -> the length letter P_a (P_a^2 = sum g p p)
    std::map<int, int> sqrtP;   // 1..n -> the adjoined square root of P_a
    int sqrt_p0 = -1;           // odd N
    int cartan = -1;            // even N
    std::size_t quadratic_rules = 0;  // rank of the P_a relation space
    std::string name;

    NCPoly p_word(int i) const { return NCPoly(Word::of(p.at(i))); }

    // sum_{h,k=-a..a} g_{hk} p^h p^k
    NCPoly pa_squared(int a) const {
        NCPoly out;
        for (int h = -a; h <= a; ++h) {
            if (h == 0 && !scheme.odd()) continue;
            Scalar ghk = metric.g(h, -h);
            Word w = Word::of(p.at(h)) * Word::of(p.at(-h));
            out.add_term(w, ghk);
        }
        return out;
    }

    // P_a^{-1} as a word in the adjoined letters; P_0 = p^0 for odd N
    Word pa_inverse_word(int a) const {
        if (a == 0) {
            if (!scheme.odd()) throw std::invalid_argument("P_0 exists for odd N only");
            return Word::of(sqrt_p0, -2);
        }
        return Word::of(Plen.at(a), -1);
    }
};

inline EuclidPreset build_euclid(int N, long fuel = 1'000'000) {
    EuclidPreset E;
    E.scheme = IndexScheme::make(CaseTag::so, N);
    E.metric = build_metric(E.scheme);
    E.rhat = build_rhat(E.scheme);
    E.rhat_inv = rhat_inverse(E.scheme, E.rhat);
    E.projectors = build_projectors(E.scheme, E.rhat);
    E.name = "euclid:so" + std::to_string(N);

    auto alph = std::make_shared<Alphabet>();
    E.rules = std::make_shared<RuleSet>(alph, fuel);

    // inner-to-outer shell order 0, -1, 1, -2, 2, ... keeps each metric-dual
    // pair adjacent in sorted words, so the P_a^2 localization rules stay
    // local under the q-commutation sorting
    std::vector<int> coord_order;
    if (E.scheme.odd()) coord_order.push_back(0);
    for (int a = 1; a <= E.scheme.rank; ++a) {
        coord_order.push_back(-a);
        coord_order.push_back(a);
    }
    int pos = 0;
    for (int i : coord_order) {
        LetterInfo info;
        info.name = "p[" + std::to_string(i) + "]";
        info.family = Family::Coord;
        info.i = i;
        info.weight = 2;
        info.subkey = pos++;
        E.p[i] = alph->add(info);
    }

    if (!E.scheme.odd()) {
        LetterInfo info;
        info.name = "K";
        info.family = Family::Cartan;
        info.invertible = true;
        info.weight = 2;
        info.subkey = 0;
        E.cartan = alph->add(info);
        // K = L-^1_1; its commutation with the coordinates comes from the
        // (gio) instance with (a,b) = (1,1), which must collapse to a
        // q-commutation for the extension to make sense
        for (int i : E.scheme.indices) {
            Scalar diag = E.rhat_inv.get(1, i, i, 1);
            for (const auto& [k, v] : E.rhat_inv.entries()) {
                if (k[1] != i || k[3] != 1) continue;
                if (k[0] == 1 && k[2] == i) continue;
                if (k[0] > 1) continue;  // L-^1_c vanishes for c > 1
                throw std::domain_error("Cartan crossing does not close for p[" +
                                        std::to_string(i) + "]");
            }
            if (diag.is_zero() || !diag.as_monomial())
                throw std::domain_error("Cartan crossing is not monomial");
            // p^i K = diag * K p^i
            E.rules->add_scaling(E.p[i], E.cartan, diag);
        }
    }

    // quadratic coordinate relations from the antisymmetric projector
    Mat4 Pa = projector_by_label(E.projectors, "P_a");
    std::vector<NCPoly> rows;
    for (int i : E.scheme.indices)
        for (int j : E.scheme.indices) {
            NCPoly row;
            for (const auto& [k, v] : Pa.entries()) {
                if (k[0] != i || k[1] != j) continue;
                row.add_term(Word::of(E.p[k[2]]) * Word::of(E.p[k[3]]), v);
            }
            if (!row.is_zero()) rows.push_back(std::move(row));
        }
    E.quadratic_rules = install_relation_rules(*E.rules, rows);

    if (!E.scheme.odd()) {
        make_invertible(*E.rules, E.p[1]);
        make_invertible(*E.rules, E.p[-1]);
    }

    if (E.scheme.odd()) E.sqrt_p0 = adjoin_root(*E.rules, NCPoly(Word::of(E.p[0])), "sqrt(p0)");
    for (int a = 1; a <= E.scheme.rank; ++a) {
        // P_a first (square root of the quadratic form), then sqrt(P_a)
        E.Plen[a] = adjoin_root(*E.rules, E.pa_squared(a), "P" + std::to_string(a));
        E.sqrtP[a] =
            adjoin_root(*E.rules, NCPoly(Word::of(E.Plen[a])), "sqrt(P" + std::to_string(a) + ")");
    }

    return E;
}

struct CrossPreset {
    EuclidPreset A;
    std::shared_ptr<RuleSet> rules;  // same object as A.rules, extended
    std::map<std::pair<int, int>, int> lplus, lminus;  // non-corner letters
    std::size_t corner_swap_residuals = 0;  // nonzero corner (L+L-rel) instances
    std::string name;

    bool lplus_zero(int i, int j) const { return i > j; }
    bool lminus_zero(int i, int j) const { return i < j; }
    bool corner(int i, int j) const { return !A.scheme.odd() && i == j && (i == 1 || i == -1); }

    // letter image of L^{+-}^i_j: a letter word, a Cartan power, or zero
    NCPoly l_image(int sign, int i, int j) const {
        if (sign > 0 ? lplus_zero(i, j) : lminus_zero(i, j)) return NCPoly::zero();
        if (corner(i, j)) {
            int e = (sign > 0) == (i == -1) ? 1 : -1;  // L+^{-1}_{-1} = L-^1_1 = K
            return NCPoly(Word::of(A.cartan, e));
        }
        const auto& tab = sign > 0 ? lplus : lminus;
        return NCPoly(Word::of(tab.at({i, j})));
    }

    // rho-weighted antipode image: S L^{+-}^i_j = q^{rho_i - rho_j} L^{+-}^{-j}_{-i}
    NCPoly sl_image(int sign, int i, int j) const {
        Scalar c = Scalar::q_half_pow(A.scheme.rho2(i) - A.scheme.rho2(j));
        return l_image(sign, -j, -i).scaled(c);
    }
};

inline CrossPreset build_cross(int N, long fuel = 1'000'000, bool corrupt_swap = false) {
    CrossPreset C;
    C.A = build_euclid(N, fuel);
    C.rules = C.A.rules;
    C.name = "cross:so" + std::to_string(N);
    Alphabet& alph = C.rules->alphabet_mutable();
    const IndexScheme& s = C.A.scheme;
    int n_idx = static_cast<int>(s.indices.size());

    auto pos_of = [&](int i) {
        for (int t = 0; t < n_idx; ++t)
            if (s.indices[static_cast<std::size_t>(t)] == i) return t;
        throw std::logic_error("bad index");
    };

    for (int i : s.indices)
        for (int j : s.indices) {
            if (i <= j && !C.corner(i, j)) {
                LetterInfo info;
                info.name = "L+[" + std::to_string(i) + "," + std::to_string(j) + "]";
                info.family = Family::Lplus;
                info.i = i;
                info.j = j;
                info.weight = 2;
                info.subkey = pos_of(i) * n_idx + pos_of(j);
                C.lplus[{i, j}] = alph.add(info);
            }
            if (i >= j && !C.corner(i, j)) {
                LetterInfo info;
                info.name = "L-[" + std::to_string(i) + "," + std::to_string(j) + "]";
                info.family = Family::Lminus;
                info.i = i;
                info.j = j;
                info.weight = 2;
                info.subkey = pos_of(i) * n_idx + pos_of(j);
                C.lminus[{i, j}] = alph.add(info);
            }
        }

    // (gio) crossing rules: p^i L^{+-}^a_b -> sum Rhat^{+-1}{}^{ci}_{jb} L^{+-}^a_c p^j
    auto install_crossings = [&](int sign, const Mat4& rmat) {
        for (const auto& [ij, letter] : (sign > 0 ? C.lplus : C.lminus)) {
            auto [a, b] = ij;
            for (int i : s.indices) {
                NCPoly rhs;
                for (const auto& [k, v] : rmat.entries()) {
                    if (k[1] != i || k[3] != b) continue;
                    NCPoly limg = C.l_image(sign, a, k[0]);
                    if (limg.is_zero()) continue;
                    rhs += limg * NCPoly(Word::of(C.A.p[k[2]])).scaled(v);
                }
                Word lhs = Word::of(C.A.p[i]) * Word::of(letter);
                // single-term swaps become scalings so they also cover
                // inverse coordinates
                if (rhs.term_count() == 1) {
                    const auto& [rw, rc] = *rhs.terms().begin();
                    Word swapped = Word::of(letter) * Word::of(C.A.p[i]);
                    if (rw == swapped && rc.as_monomial()) {
                        C.rules->add_scaling(C.A.p[i], letter, rc);
                        continue;
                    }
                }
                C.rules->add_rule(lhs, rhs, 1);
            }
        }
    };
    install_crossings(+1, C.A.rhat);
    install_crossings(-1, C.A.rhat_inv);

    // The Cartan corner is grouplike, so conjugation by it is the eta
    // grading: K L^{+-}^i_j = q^{eta_i - eta_j} L^{+-}^i_j K.  Installed as
    // scalings after a representation-level check, so corner instances of
    // (L+L-rel) become consistency checks below rather than rules.
    if (!s.odd()) {
        auto rho_K = [&](int r, int c) { return C.A.rhat_inv.get(1, r, c, 1); };
        for (int sign : {+1, -1}) {
            const Mat4& rm = sign > 0 ? C.A.rhat : C.A.rhat_inv;
            for (const auto& [ij, letter] : (sign > 0 ? C.lplus : C.lminus)) {
                auto [i, j] = ij;
                Scalar want = Scalar::q_pow(IndexScheme::eta(i) - IndexScheme::eta(j));
                // rho(K) rho(L^i_j) rho(K)^{-1} must equal want * rho(L^i_j)
                for (int r : s.indices)
                    for (int c : s.indices) {
                        Scalar lhs = rho_K(r, r) * rm.get(i, r, c, j);
                        Scalar rhs = want * rm.get(i, r, c, j) * rho_K(c, c);
                        if (lhs != rhs)
                            throw std::domain_error("Cartan grading fails at representation level");
                    }
                // K . L = want * L . K, stored per the family order
                C.rules->add_scaling(C.A.cartan, letter, want);
            }
        }
    }

    // mixed swap solved from (L+L-rel):
    //   L-^B_Y L+^A_X -> sum_{c,d,e,f} Rhat^{AB}_{cd} (Rhat^{-1})^{ef}_{XY}
    //                    L+^d_f L-^c_e
    const Mat4& R = C.A.rhat;
    const Mat4& Rinv = corrupt_swap ? C.A.rhat : C.A.rhat_inv;
    std::vector<std::pair<Word, NCPoly>> corner_checks;
    for (int B : s.indices)
        for (int Y : s.indices) {
            if (C.lminus_zero(B, Y)) continue;
            for (int A_ : s.indices)
                for (int X : s.indices) {
                    if (C.lplus_zero(A_, X)) continue;
                    NCPoly lm = C.l_image(-1, B, Y), lp = C.l_image(+1, A_, X);
                    NCPoly lhs_poly = lm * lp;
                    if (lhs_poly.term_count() != 1) throw std::logic_error("swap lhs not a word");
                    Word lhs = lhs_poly.terms().begin()->first;
                    if (lhs.run_count() < 2) continue;  // corner pair collapsed
                    NCPoly rhs;
                    for (const auto& [rk, rv] : R.entries()) {
                        if (rk[0] != A_ || rk[1] != B) continue;
                        for (const auto& [ik, iv] : Rinv.entries()) {
                            if (ik[2] != X || ik[3] != Y) continue;
                            NCPoly t1 = C.l_image(+1, rk[3], ik[1]);
                            if (t1.is_zero()) continue;
                            NCPoly t2 = C.l_image(-1, rk[2], ik[0]);
                            if (t2.is_zero()) continue;
                            rhs += (t1 * t2).scaled(rv * iv);
                        }
                    }
                    bool corner_pair = C.corner(B, Y) || C.corner(A_, X);
                    if (corner_pair) {
                        corner_checks.push_back({lhs, rhs});
                        continue;
                    }
                    if (rhs.term_count() == 1) {
                        const auto& [rw, rc] = *rhs.terms().begin();
                        if (lhs.run_count() == 2 && lhs.runs[0].second == 1 &&
                            lhs.runs[1].second == 1 && rc.as_monomial()) {
                            Word swapped = Word::of(lhs.runs[1].first) * Word::of(lhs.runs[0].first);
                            if (rw == swapped) {
                                C.rules->add_scaling(lhs.runs[0].first, lhs.runs[1].first, rc);
                                continue;
                            }
                        }
                    }
                    C.rules->add_rule(lhs, rhs, 0);
                }
        }
    for (const auto& [lhs, rhs] : corner_checks) {
        NFResult nf = C.rules->normal_form(NCPoly(lhs) - rhs);
        if (!nf.poly.is_zero() || nf.stuck) ++C.corner_swap_residuals;
    }

    // opaque-or-not: try to derive scalings of each root past each L letter
    std::vector<std::pair<int, NCPoly>> roots;
    if (s.odd()) roots.push_back({C.A.sqrt_p0, NCPoly(Word::of(C.A.p[0]))});
    for (int a = 1; a <= s.rank; ++a) {
        roots.push_back({C.A.Plen.at(a), C.A.pa_squared(a)});
        roots.push_back({C.A.sqrtP.at(a), NCPoly(Word::of(C.A.Plen.at(a)))});
    }
    std::vector<int> l_letters;
    for (const auto& [ij, l] : C.lplus) l_letters.push_back(l);
    for (const auto& [ij, l] : C.lminus) l_letters.push_back(l);
    for (const auto& [r, b] : roots)
        for (int l : l_letters) {
            auto c = derive_scaling(*C.rules, b, l);
            if (!c) continue;  // opaque to this letter; reported when it matters
            auto mono = c->as_monomial();
            if (mono->second % 2 != 0 || !(mono->first.is_one() || mono->first == GaussQ(-1L)))
                continue;
            Scalar d = Scalar::s_pow(mono->second / 2);
            if (mono->first == GaussQ(-1L)) d *= Scalar::imaginary();
            C.rules->add_scaling(r, l, d);
        }
    C.rules->renormalize();
    return C;
}

// mixed-overlap spot check for the cross preset: p.p.L and p.L-.L+ words
inline CheckReport check_cross_confluence(const CrossPreset& C) {
    auto filter = [](Family f1, Family f2, Family f3) {
        bool ppl = f1 == Family::Coord && f2 == Family::Coord &&
                   (f3 == Family::Lplus || f3 == Family::Lminus || f3 == Family::Cartan);
        bool pll = f1 == Family::Coord &&
                   (f2 == Family::Lminus || f2 == Family::Cartan) &&
                   (f3 == Family::Lplus || f3 == Family::Cartan);
        return ppl || pll;
    };
    return check_local_confluence(*C.rules, C.name, filter);
}

}  // namespace qd
