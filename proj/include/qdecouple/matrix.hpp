#pragma once

// Finite matrix data of the braid calculus: the N^2 x N^2 braid matrices of
// U_q sl(N) / U_q so(N), the so metric, the projector decomposition, and the
// fundamental-representation images of the FRT generators.
//
// Conventions.  e^i_j maps the basis vector e_i to e_j.  A Mat4 entry keyed
// (a,b,c,d) is the coefficient R^{ab}_{cd} in R(e_c (x) e_d) = sum R^{ab}_{cd}
// e_a (x) e_b.  For sl(N) the stored matrix is the normalized one,
// q^(1/N) * Rhat, so every entry stays inside Q(i)(s).

#include "index_scheme.hpp"
#include "report.hpp"
#include "scalar.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

class Mat4 {
public:
    using Key = std::array<int, 4>;  // {a, b, c, d}

    Mat4() = default;
    explicit Mat4(IndexScheme scheme) : scheme_(std::move(scheme)) {}

    const IndexScheme& scheme() const { return scheme_; }
    const std::map<Key, Scalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void add(int a, int b, int c, int d, const Scalar& v) {
        if (v.is_zero()) return;
        Key k{a, b, c, d};
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    Scalar get(int a, int b, int c, int d) const {
        auto it = entries_.find(Key{a, b, c, d});
        return it == entries_.end() ? Scalar::zero() : it->second;
    }

    static Mat4 identity(const IndexScheme& s) {
        Mat4 m(s);
        for (int a : s.indices)
            for (int b : s.indices) m.add(a, b, a, b, Scalar::one());
        return m;
    }

    Mat4 operator+(const Mat4& o) const {
        Mat4 r(*this);
        for (const auto& [k, v] : o.entries_) r.add(k[0], k[1], k[2], k[3], v);
        return r;
    }
    Mat4 operator-(const Mat4& o) const {
        Mat4 r(*this);
        for (const auto& [k, v] : o.entries_) r.add(k[0], k[1], k[2], k[3], -v);
        return r;
    }
    Mat4 scaled(const Scalar& c) const {
        Mat4 r(scheme_);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : entries_) r.entries_.emplace(k, v * c);
        return r;
    }

    // matrix product on the pair space
    Mat4 compose(const Mat4& o) const {
        Mat4 r(scheme_);
        std::map<std::pair<int, int>, std::vector<std::pair<Key, const Scalar*>>> by_out;
        for (const auto& [k, v] : o.entries_) by_out[{k[0], k[1]}].push_back({k, &v});
        for (const auto& [k, v] : entries_) {
            auto it = by_out.find({k[2], k[3]});
            if (it == by_out.end()) continue;
            for (const auto& [k2, v2] : it->second) r.add(k[0], k[1], k2[2], k2[3], v * (*v2));
        }
        return r;
    }

    bool operator==(const Mat4& o) const { return entries_ == o.entries_; }
    bool operator!=(const Mat4& o) const { return !(*this == o); }

private:
    IndexScheme scheme_;
    std::map<Key, Scalar> entries_;
};

struct Metric {
    IndexScheme scheme;

    // g_{ij} = g^{ij} = q^{-rho_i} delta_{i,-j}
    Scalar g(int i, int j) const {
        if (i != -j || !scheme.valid_index(i)) return Scalar::zero();
        return Scalar::q_half_pow(-scheme.rho2(i));
    }
    std::size_t nonzero_count() const { return scheme.indices.size(); }
};

// Dense matrix over Q(i)(s) for the elimination work: ranks, inverses,
// linear solves and the relation-space RREF behind rule derivation.
class DenseMat {
public:
    DenseMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // in-place reduced row echelon form; returns pivot column per row
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t r = row; r < rows_; ++r) {
                if (!at(r, col).is_zero()) {
                    sel = r;
                    break;
                }
            }
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t c = 0; c < cols_; ++c) std::swap(at(row, c), at(sel, c));
            Scalar inv = at(row, col).inv();
            for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col).is_zero()) continue;
                Scalar f = at(r, col);
                for (std::size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        DenseMat copy(*this);
        return copy.rref().size();
    }

    DenseMat inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("DenseMat: inverse of non-square matrix");
        DenseMat aug(rows_, 2 * cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_ + r) = Scalar::one();
        }
        auto pivots = aug.rref();
        if (pivots.size() != rows_) throw std::domain_error("DenseMat: singular matrix");
        for (std::size_t r = 0; r < rows_; ++r)
            if (pivots[r] != r) throw std::domain_error("DenseMat: singular matrix");
        DenseMat inv(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
        return inv;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

// --- braid matrix construction -------------------------------------------

inline Mat4 build_rhat(const IndexScheme& s) {
    Mat4 R(s);
    Scalar q = Scalar::q();
    Scalar kk = Scalar::k();
    if (s.case_tag == CaseTag::sl) {
        // normalized matrix q^(1/N) * Rhat
        for (int i : s.indices) R.add(i, i, i, i, q);
        for (int i : s.indices)
            for (int j : s.indices)
                if (i != j) R.add(i, j, j, i, Scalar::one());
        for (int i : s.indices)
            for (int j : s.indices)
                if (i < j) R.add(i, j, i, j, kk);
        return R;
    }
    for (int i : s.indices)
        if (i != 0) R.add(i, i, i, i, q);
    for (int i : s.indices)
        for (int j : s.indices)
            if ((i != j && i != -j) || (i == 0 && j == 0)) R.add(i, j, j, i, Scalar::one());
    for (int i : s.indices)
        if (i != 0) R.add(i, -i, -i, i, Scalar::q_pow(-1));
    for (int i : s.indices)
        for (int j : s.indices) {
            if (i >= j) continue;
            R.add(i, j, i, j, kk);
            R.add(i, -i, -j, j, -kk * Scalar::q_half_pow(-s.rho2(i) + s.rho2(j)));
        }
    return R;
}

// eigenvalues of the (normalized) braid matrix in the projector order
inline std::vector<std::pair<std::string, Scalar>> rhat_eigenvalues(const IndexScheme& s) {
    if (s.case_tag == CaseTag::sl)
        return {{"P_S", Scalar::q()}, {"P_a", -Scalar::q_pow(-1)}};
    return {{"P_s", Scalar::q()},
            {"P_a", -Scalar::q_pow(-1)},
            {"P_t", Scalar::q_pow(1 - s.N)}};
}

// inverse through the minimal polynomial: prod (R - lambda_i) = 0
inline Mat4 rhat_inverse(const IndexScheme& s, const Mat4& R) {
    auto eigs = rhat_eigenvalues(s);
    Mat4 id = Mat4::identity(s);
    // R * prod_{i>0} (R - lambda_i) = lambda_0 * ... hold the elementary symmetric route:
    // expand prod_i (R - lambda_i) = 0 and isolate R^{-1}.
    if (eigs.size() == 2) {
        Scalar l0 = eigs[0].second, l1 = eigs[1].second;
        // R^2 - (l0+l1) R + l0 l1 = 0  =>  R^{-1} = (R - (l0+l1)) / (-l0 l1)
        Mat4 inv = (R - id.scaled(l0 + l1)).scaled(-(l0 * l1).inv());
        return inv;
    }
    Scalar l0 = eigs[0].second, l1 = eigs[1].second, l2 = eigs[2].second;
    Scalar e1 = l0 + l1 + l2;
    Scalar e2 = l0 * l1 + l0 * l2 + l1 * l2;
    Scalar e3 = l0 * l1 * l2;
    // R^3 - e1 R^2 + e2 R - e3 = 0  =>  R^{-1} = (R^2 - e1 R + e2) / e3
    Mat4 R2 = R.compose(R);
    Mat4 inv = (R2 - R.scaled(e1) + id.scaled(e2)).scaled(e3.inv());
    return inv;
}

inline Metric build_metric(const IndexScheme& s) {
    if (s.case_tag != CaseTag::so)
        throw std::invalid_argument("metric is defined for the so case only");
    return Metric{s};
}

// Lagrange interpolation at the known eigenvalues
inline std::vector<std::pair<std::string, Mat4>> build_projectors(const IndexScheme& s,
                                                                  const Mat4& R) {
    auto eigs = rhat_eigenvalues(s);
    for (std::size_t a = 0; a < eigs.size(); ++a)
        for (std::size_t b = a + 1; b < eigs.size(); ++b)
            if (eigs[a].second == eigs[b].second)
                throw std::domain_error("projector eigenvalue collision");
    Mat4 id = Mat4::identity(s);
    std::vector<std::pair<std::string, Mat4>> out;
    for (std::size_t a = 0; a < eigs.size(); ++a) {
        Mat4 p = id;
        for (std::size_t b = 0; b < eigs.size(); ++b) {
            if (a == b) continue;
            p = p.compose(R - id.scaled(eigs[b].second));
            p = p.scaled((eigs[a].second - eigs[b].second).inv());
        }
        out.emplace_back(eigs[a].first, std::move(p));
    }
    return out;
}

inline Mat4 projector_by_label(const std::vector<std::pair<std::string, Mat4>>& ps,
                               const std::string& label) {
    for (const auto& [name, m] : ps)
        if (name == label) return m;
    throw std::invalid_argument("no projector labeled " + label);
}

// rank of the pair-space matrix over Q(i)(s)
inline std::size_t mat4_rank(const Mat4& m) {
    const auto& idx = m.scheme().indices;
    std::size_t n = idx.size();
    auto pos = [&](int i) {
        for (std::size_t p = 0; p < n; ++p)
            if (idx[p] == i) return p;
        throw std::logic_error("index not in scheme");
    };
    DenseMat d(n * n, n * n);
    for (const auto& [k, v] : m.entries())
        d.at(pos(k[0]) * n + pos(k[1]), pos(k[2]) * n + pos(k[3])) = v;
    return d.rank();
}

// --- fundamental representation of the FRT generators ---------------------

// rho(L+^i_k)^j_h = Rhat^{ij}_{hk},  rho(L-^i_k)^j_h = (Rhat^{-1})^{ij}_{hk};
// antipode images are solved from sum_h rho(S L^i_h) rho(L^h_j) = delta^i_j.
struct FrtRep {
    IndexScheme scheme;
    Mat4 rhat;      // for sl: the normalized matrix
    Mat4 rhat_inv;  // inverse of the stored matrix

    // entry of rho(L^{+/-}^i_k): row j, column h
    Scalar rho_plus(int i, int k, int j, int h) const { return rhat.get(i, j, h, k); }
    Scalar rho_minus(int i, int k, int j, int h) const { return rhat_inv.get(i, j, h, k); }
};

inline FrtRep build_frt_rep(const IndexScheme& s) {
    Mat4 R = build_rhat(s);
    Mat4 Rinv = rhat_inverse(s, R);
    return FrtRep{s, std::move(R), std::move(Rinv)};
}

// Solve for the N^2 matrices X^i_h with sum_h X^i_h * rho(L^h_j) = delta^i_j Id.
// `rho` maps (upper, lower, row, col) to the representation entry.
template <typename RhoFn>
std::vector<std::vector<DenseMat>> solve_antipode_rep(const IndexScheme& s, RhoFn rho) {
    const auto& idx = s.indices;
    std::size_t n = idx.size();
    auto pos = [&](int i) {
        for (std::size_t p = 0; p < n; ++p)
            if (idx[p] == i) return p;
        throw std::logic_error("index not in scheme");
    };
    // big matrix rows (h, c), cols (j, b):  L[(h,c)][(j,b)] = rho(L^h_j)^c_b
    DenseMat L(n * n, n * n);
    for (int h : idx)
        for (int c : idx)
            for (int j : idx)
                for (int b : idx) L.at(pos(h) * n + pos(c), pos(j) * n + pos(b)) = rho(h, j, c, b);
    DenseMat X = L.inverse();
    std::vector<std::vector<DenseMat>> out(n, std::vector<DenseMat>(n, DenseMat(n, n)));
    for (int i : idx)
        for (int h : idx)
            for (int a : idx)
                for (int c : idx)
                    out[pos(i)][pos(h)].at(pos(a), pos(c)) = X.at(pos(i) * n + pos(a), pos(h) * n + pos(c));
    return out;
}

// Solve for Y^e_b with sum_e Y^e_b * rho(L^c_e) = delta^c_b Id  (inverse antipode).
template <typename RhoFn>
std::vector<std::vector<DenseMat>> solve_antipode_inv_rep(const IndexScheme& s, RhoFn rho) {
    const auto& idx = s.indices;
    std::size_t n = idx.size();
    auto pos = [&](int i) {
        for (std::size_t p = 0; p < n; ++p)
            if (idx[p] == i) return p;
        throw std::logic_error("index not in scheme");
    };
    // rows (e, h), cols (c, d):  M[(e,h)][(c,d)] = rho(L^c_e)^h_d
    DenseMat M(n * n, n * n);
    for (int e : idx)
        for (int h : idx)
            for (int c : idx)
                for (int d : idx) M.at(pos(e) * n + pos(h), pos(c) * n + pos(d)) = rho(c, e, h, d);
    DenseMat Y = M.inverse();
    std::vector<std::vector<DenseMat>> out(n, std::vector<DenseMat>(n, DenseMat(n, n)));
    for (int e : idx)
        for (int b : idx)
            for (int a : idx)
                for (int h : idx)
                    out[pos(e)][pos(b)].at(pos(a), pos(h)) = Y.at(pos(b) * n + pos(a), pos(e) * n + pos(h));
    return out;
}

// --- braid relation --------------------------------------------------------

namespace detail {

using Key6 = std::array<int, 6>;
using SparseTriple = std::map<Key6, Scalar>;

inline SparseTriple tensor_left(const Mat4& R, const IndexScheme& s) {
    SparseTriple out;
    for (const auto& [k, v] : R.entries())
        for (int c : s.indices) out[{k[0], k[1], c, k[2], k[3], c}] = v;
    return out;
}

inline SparseTriple tensor_right(const Mat4& R, const IndexScheme& s) {
    SparseTriple out;
    for (const auto& [k, v] : R.entries())
        for (int a : s.indices) out[{a, k[0], k[1], a, k[2], k[3]}] = v;
    return out;
}

inline SparseTriple compose6(const SparseTriple& A, const SparseTriple& B) {
    std::map<std::array<int, 3>, std::vector<std::pair<const Key6*, const Scalar*>>> by_out;
    for (const auto& [k, v] : B) by_out[{k[0], k[1], k[2]}].push_back({&k, &v});
    SparseTriple out;
    for (const auto& [k, v] : A) {
        auto it = by_out.find({k[3], k[4], k[5]});
        if (it == by_out.end()) continue;
        for (const auto& [k2, v2] : it->second) {
            Key6 key{k[0], k[1], k[2], (*k2)[3], (*k2)[4], (*k2)[5]};
            auto [slot, fresh] = out.emplace(key, v * (*v2));
            if (!fresh) {
                slot->second += v * (*v2);
                if (slot->second.is_zero()) out.erase(slot);
            }
        }
    }
    return out;
}

}  // namespace detail

// exact check of (M x I)(I x M)(M x I) = (I x M)(M x I)(I x M)
inline bool braid_relation_holds(const Mat4& M, const IndexScheme& s) {
    auto M12 = detail::tensor_left(M, s);
    auto M23 = detail::tensor_right(M, s);
    auto lhs = detail::compose6(detail::compose6(M12, M23), M12);
    auto rhs = detail::compose6(detail::compose6(M23, M12), M23);
    return lhs == rhs;
}

// The FRT relation with Rhat replaced by a polynomial function F of it,
// checked in the fundamental representation: for all (a,b,e,f,j,k)
//   sum_{c,d,h} F^{ab}_{cd} rho(L^d_f)^j_h rho(L^c_e)^h_k
//     = sum_{c,d,h} rho(L^b_c)^j_h rho(L^a_d)^h_k F^{dc}_{ef}.
inline bool frt_relation_holds(const Mat4& F, const Mat4& rep_src, const IndexScheme&) {
    // rho(L^i_k)^j_h = rep_src^{ij}_{hk}
    detail::SparseTriple lhs, rhs;
    auto fold = [](detail::SparseTriple& acc, const detail::Key6& key, const Scalar& v) {
        auto [slot, fresh] = acc.emplace(key, v);
        if (!fresh) {
            slot->second += v;
            if (slot->second.is_zero()) acc.erase(slot);
        }
    };
    std::map<int, std::vector<std::pair<Mat4::Key, const Scalar*>>> by_upper;
    for (const auto& [k, v] : rep_src.entries()) by_upper[k[0]].push_back({k, &v});
    // lhs: F^{ab}_{cd} * rep^{dj}_{hf} * rep^{ch}_{ke}, key (a,b,j,e,f,k)
    for (const auto& [fk, fv] : F.entries())
        for (const auto& [r1, v1] : by_upper[fk[3]])
            for (const auto& [r2, v2] : by_upper[fk[2]]) {
                if (r2[1] != r1[2]) continue;
                fold(lhs, {fk[0], fk[1], r1[1], r2[3], r1[3], r2[2]}, fv * (*v1) * (*v2));
            }
    // rhs: rep^{bj}_{hc} * rep^{ah}_{kd} * F^{dc}_{ef}
    std::map<std::pair<int, int>, std::vector<std::pair<Mat4::Key, const Scalar*>>> f_by_upper;
    for (const auto& [k, v] : F.entries()) f_by_upper[{k[0], k[1]}].push_back({k, &v});
    for (const auto& [r1, v1] : rep_src.entries())          // rep^{bj}_{hc}
        for (const auto& [r2, v2] : rep_src.entries()) {    // rep^{ah}_{kd}
            if (r2[1] != r1[2]) continue;
            auto it = f_by_upper.find({r2[3], r1[3]});      // F^{dc}_{ef}
            if (it == f_by_upper.end()) continue;
            for (const auto& [fk, fv] : it->second)
                fold(rhs, {r2[0], r1[0], r1[1], fk[2], fk[3], r2[2]}, v1 * v2 * (*fv));
        }
    return lhs == rhs;
}

inline CheckReport verify_braid(const IndexScheme& s) {
    CheckReport rep;
    rep.suite = "braid";
    rep.preset = s.name();
    Mat4 R = build_rhat(s);
    Mat4 Rinv = rhat_inverse(s, R);
    auto projectors = build_projectors(s, R);
    Mat4 Pa = projector_by_label(projectors, "P_a");
    rep.add("ybe[rhat]", braid_relation_holds(R, s) ? CheckStatus::PASS : CheckStatus::FAIL);
    rep.add("ybe[rhat_inv]", braid_relation_holds(Rinv, s) ? CheckStatus::PASS : CheckStatus::FAIL);
    rep.add("inverse[rhat*rhat_inv=id]",
            R.compose(Rinv) == Mat4::identity(s) ? CheckStatus::PASS : CheckStatus::FAIL);
    // f(Rhat)-substituted FRT relations, for both Borel representations
    for (auto [fname, F] : {std::pair<std::string, const Mat4*>{"rhat_inv", &Rinv},
                            std::pair<std::string, const Mat4*>{"P_a", &Pa}}) {
        rep.add("frt_subst[" + fname + ",L+]",
                frt_relation_holds(*F, R, s) ? CheckStatus::PASS : CheckStatus::FAIL);
        rep.add("frt_subst[" + fname + ",L-]",
                frt_relation_holds(*F, Rinv, s) ? CheckStatus::PASS : CheckStatus::FAIL);
    }
    return rep;
}

inline CheckReport verify_projectors(const IndexScheme& s) {
    CheckReport rep;
    rep.suite = "projectors";
    rep.preset = s.name();
    Mat4 R = build_rhat(s);
    Mat4 id = Mat4::identity(s);
    auto projectors = build_projectors(s, R);
    Mat4 sum(s);
    Mat4 recon(s);
    for (const auto& [name, P] : projectors) {
        rep.add("idempotent[" + name + "]",
                P.compose(P) == P ? CheckStatus::PASS : CheckStatus::FAIL);
        sum = sum + P;
    }
    for (std::size_t a = 0; a < projectors.size(); ++a)
        for (std::size_t b = 0; b < projectors.size(); ++b) {
            if (a == b) continue;
            rep.add("orthogonal[" + projectors[a].first + "," + projectors[b].first + "]",
                    projectors[a].second.compose(projectors[b].second).is_zero()
                        ? CheckStatus::PASS
                        : CheckStatus::FAIL);
        }
    rep.add("completeness[sum=id]", sum == id ? CheckStatus::PASS : CheckStatus::FAIL);
    auto eigs = rhat_eigenvalues(s);
    for (std::size_t a = 0; a < eigs.size(); ++a)
        recon = recon + projectors[a].second.scaled(eigs[a].second);
    rep.add("decomposition[rhat=sum lambda P]", recon == R ? CheckStatus::PASS : CheckStatus::FAIL);
    // minimal polynomial annihilates the braid matrix
    Mat4 minpoly = id;
    for (const auto& [name, lambda] : eigs) minpoly = minpoly.compose(R - id.scaled(lambda));
    rep.add("minimal_polynomial", minpoly.is_zero() ? CheckStatus::PASS : CheckStatus::FAIL);
    if (s.case_tag == CaseTag::so) {
        std::size_t want = static_cast<std::size_t>(s.N * (s.N - 1) / 2);
        rep.add("rank[P_a]=" + std::to_string(want),
                mat4_rank(projector_by_label(projectors, "P_a")) == want ? CheckStatus::PASS
                                                                         : CheckStatus::FAIL);
    }
    return rep;
}

}  // namespace qd
