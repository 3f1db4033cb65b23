#pragma once

// The rewriting core: oriented rule sets over an Alphabet, normal forms,
// rule derivation from quadratic relation spaces, local-confluence checks,
// quasi-scaling detection and root adjunction.
//
// Rule classes order the reduction strategy: class 0 rules reorder letters
// inside the Hopf-algebra part (the mixed L-L+ swap), class 1 rules move
// module-algebra letters past L letters (the crossing rules), class 2 rules
// are internal to the extended module algebra.  Lower class fires first,
// leftmost position first; this keeps reductions from parking opaque Aux
// letters next to L letters when a crossing route exists.

#include "matrix.hpp"
#include "word.hpp"

#include <functional>
#include <optional>
#include <unordered_map>

namespace qd {

class fuel_exhausted : public std::runtime_error {
public:
    explicit fuel_exhausted(const std::string& word_text)
        : std::runtime_error("non-termination suspected while reducing " + word_text) {}
};

struct NFResult {
    NCPoly poly;
    bool stuck = false;  // an irreducible word still has an A-letter left of an L letter
};

struct Rule {
    Word lhs;
    NCPoly rhs;
    int klass = 2;
};

class RuleSet {
public:
    explicit RuleSet(std::shared_ptr<Alphabet> alphabet, long fuel = 1'000'000)
        : alph_(std::move(alphabet)), fuel_(fuel) {}

    const Alphabet& alphabet() const { return *alph_; }
    Alphabet& alphabet_mutable() { return *alph_; }
    std::shared_ptr<Alphabet> alphabet_ptr() const { return alph_; }

    const std::vector<Rule>& rules() const { return rules_; }
    const std::map<std::pair<int, int>, Scalar>& scalings() const { return scale_; }
    long fuel() const { return fuel_; }
    void set_fuel(long f) { fuel_ = f; }

    void add_rule(Word lhs, NCPoly rhs, int klass = 2) {
        Rule r{std::move(lhs), std::move(rhs), klass};
        if (r.lhs.is_unit()) throw std::invalid_argument("rule with unit left side");
        rule_index_[r.lhs.runs.front().first].push_back(rules_.size());
        rules_.push_back(std::move(r));
        memo_.clear();
    }

    // a.b = c * b.a, stored under the out-of-order pair (a before b)
    void add_scaling(int a, int b, Scalar c) {
        if (alph_->key(a) < alph_->key(b)) {
            // store in the orientation that rewrites toward sorted words
            add_scaling(b, a, c.inv());
            return;
        }
        scale_[{a, b}] = std::move(c);
        memo_.clear();
    }
    bool has_scaling(int a, int b) const { return scale_.count({a, b}) != 0; }
    std::optional<Scalar> scaling_factor(int a, int b) const {
        // factor c with a.b = c * b.a for arbitrary letters a != b
        auto it = scale_.find({a, b});
        if (it != scale_.end()) return it->second;
        it = scale_.find({b, a});
        if (it != scale_.end()) return it->second.inv();
        return std::nullopt;
    }

    // re-reduce every rule's right side against the full current system
    void renormalize() {
        for (auto& r : rules_) {
            NFResult nf = normal_form(r.rhs);
            r.rhs = std::move(nf.poly);
        }
        memo_.clear();
    }

    NFResult normal_form(const NCPoly& p) const {
        steps_ = 0;
        NFResult out;
        for (const auto& [w, c] : p.terms()) {
            NFResult part = nf_word(w, 0);
            out.poly += part.poly.scaled(c);
            out.stuck |= part.stuck;
        }
        return out;
    }
    NFResult normal_form(const Word& w) const { return normal_form(NCPoly(w)); }

    // --- redex structure, exposed for the confluence check ----------------

    struct Redex {
        int klass;
        std::size_t pos;
        bool is_scaling;
        std::size_t rule;  // index when !is_scaling
    };

    std::optional<Redex> find_redex(const Word& w) const {
        std::optional<Redex> best;
        for (int klass = 0; klass <= 2 && !best; ++klass) {
            for (std::size_t pos = 0; pos < w.runs.size() && !best; ++pos) {
                if (auto r = redex_at(w, pos, klass)) best = r;
            }
        }
        return best;
    }

    std::vector<Redex> all_redexes(const Word& w) const {
        std::vector<Redex> out;
        for (std::size_t pos = 0; pos < w.runs.size(); ++pos)
            for (int klass = 0; klass <= 2; ++klass) {
                if (auto s = scaling_redex(w, pos, klass)) out.push_back(*s);
                auto it = rule_index_.find(w.runs[pos].first);
                if (it == rule_index_.end()) continue;
                for (std::size_t ri : it->second)
                    if (rules_[ri].klass == klass && rule_matches(rules_[ri], w, pos))
                        out.push_back(Redex{klass, pos, false, ri});
            }
        return out;
    }

    NCPoly apply_redex(const Word& w, const Redex& r) const {
        if (r.is_scaling) {
            auto [a, e] = w.runs[r.pos];
            auto [b, f] = w.runs[r.pos + 1];
            Scalar c = scale_.at({a, b}).pow(static_cast<long>(e) * f);
            Word pre, post;
            pre.runs.assign(w.runs.begin(), w.runs.begin() + static_cast<long>(r.pos));
            post.runs.assign(w.runs.begin() + static_cast<long>(r.pos) + 2, w.runs.end());
            Word mid = Word::of(b, f) * Word::of(a, e);
            NCPoly out;
            out.add_term(pre * mid * post, c);
            return out;
        }
        const Rule& rule = rules_[r.rule];
        const auto& lruns = rule.lhs.runs;
        std::size_t k = lruns.size();
        Word pre, post;
        pre.runs.assign(w.runs.begin(), w.runs.begin() + static_cast<long>(r.pos));
        post.runs.assign(w.runs.begin() + static_cast<long>(r.pos + k), w.runs.end());
        // leftover exponents at the matched boundary runs; a single-run
        // pattern keeps its remainder on the left
        int head = w.runs[r.pos].second - lruns.front().second;
        int tail = k > 1 ? w.runs[r.pos + k - 1].second - lruns.back().second : 0;
        Word head_w = head != 0 ? Word::of(w.runs[r.pos].first, head) : Word::unit();
        Word tail_w = (k > 1 && tail != 0) ? Word::of(w.runs[r.pos + k - 1].first, tail) : Word::unit();
        NCPoly out;
        for (const auto& [rw, rc] : rule.rhs.terms())
            out.add_term(pre * head_w * rw * tail_w * post, rc);
        return out;
    }

    // letters with no way past an L letter on their right
    bool word_is_stuck(const Word& w) const {
        for (std::size_t pos = 0; pos + 1 < w.runs.size(); ++pos) {
            Family fa = alph_->info(w.runs[pos].first).family;
            Family fb = alph_->info(w.runs[pos + 1].first).family;
            bool a_is_module = fa == Family::Cartan || fa == Family::Aux || fa == Family::Coord ||
                               fa == Family::Deriv;
            bool b_is_L = fb == Family::Lplus || fb == Family::Lminus;
            if (a_is_module && b_is_L) return true;
        }
        return false;
    }

private:
    std::optional<Redex> scaling_redex(const Word& w, std::size_t pos, int klass) const {
        if (pos + 1 >= w.runs.size()) return std::nullopt;
        int a = w.runs[pos].first, b = w.runs[pos + 1].first;
        if (!scale_.count({a, b})) return std::nullopt;
        if (swap_class(a, b) != klass) return std::nullopt;
        return Redex{klass, pos, true, 0};
    }

    std::optional<Redex> redex_at(const Word& w, std::size_t pos, int klass) const {
        if (auto s = scaling_redex(w, pos, klass)) return s;
        auto it = rule_index_.find(w.runs[pos].first);
        if (it != rule_index_.end())
            for (std::size_t ri : it->second)
                if (rules_[ri].klass == klass && rule_matches(rules_[ri], w, pos))
                    return Redex{klass, pos, false, ri};
        return std::nullopt;
    }

    int swap_class(int a, int b) const {
        Family fa = alph_->info(a).family, fb = alph_->info(b).family;
        bool b_is_L = fb == Family::Lplus || fb == Family::Lminus;
        if (b_is_L)
            return (fa == Family::Lplus || fa == Family::Lminus || fa == Family::Cartan) ? 0 : 1;
        return 2;
    }

    bool rule_matches(const Rule& rule, const Word& w, std::size_t pos) const {
        const auto& lr = rule.lhs.runs;
        if (pos + lr.size() > w.runs.size()) return false;
        for (std::size_t t = 0; t < lr.size(); ++t) {
            auto [wl, we] = w.runs[pos + t];
            auto [ll, le] = lr[t];
            if (wl != ll) return false;
            bool flexible = (t == 0 || t + 1 == lr.size());
            if (flexible) {
                if ((we >= 0) != (le >= 0) || std::abs(we) < std::abs(le)) return false;
            } else if (we != le) {
                return false;
            }
        }
        return true;
    }

    NFResult nf_word(const Word& w, int depth) const {
        auto hit = memo_.find(w);
        if (hit != memo_.end()) return hit->second;
        if (depth > max_depth_) throw fuel_exhausted(w.text(*alph_));
        auto r = find_redex(w);
        if (!r) {
            NFResult res{NCPoly(w), word_is_stuck(w)};
            memo_.emplace(w, res);
            return res;
        }
        if (++steps_ > fuel_) throw fuel_exhausted(w.text(*alph_));
        NCPoly stepped = apply_redex(w, *r);
        NFResult res;
        for (const auto& [w2, c2] : stepped.terms()) {
            NFResult part = nf_word(w2, depth + 1);
            res.poly += part.poly.scaled(c2);
            res.stuck |= part.stuck;
        }
        memo_.emplace(w, res);
        return res;
    }

    std::shared_ptr<Alphabet> alph_;
    std::vector<Rule> rules_;
    std::map<int, std::vector<std::size_t>> rule_index_;
    std::map<std::pair<int, int>, Scalar> scale_;
    long fuel_;
    int max_depth_ = 4000;
    mutable std::unordered_map<Word, NFResult, WordHash> memo_;
    mutable long steps_ = 0;
};

// --- rule derivation from a relation space ---------------------------------

// Reduced row echelon form of the span of `rows` with columns sorted in
// decreasing monomial order; each pivot row becomes one oriented rule.
// Returns the number of rules installed.
inline std::size_t install_relation_rules(RuleSet& rs, const std::vector<NCPoly>& rows,
                                          int klass = 2) {
    const Alphabet& a = rs.alphabet();
    std::vector<Word> words;
    for (const auto& row : rows)
        for (const auto& [w, c] : row.terms()) {
            bool seen = false;
            for (const auto& x : words)
                if (x == w) {
                    seen = true;
                    break;
                }
            if (!seen) words.push_back(w);
        }
    std::sort(words.begin(), words.end(),
              [&](const Word& x, const Word& y) { return word_compare(a, x, y) > 0; });
    DenseMat m(rows.size(), words.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < words.size(); ++c) m.at(r, c) = rows[r].coeff(words[c]);
    auto pivots = m.rref();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::size_t pc = pivots[r];
        NCPoly rhs;
        for (std::size_t c = pc + 1; c < words.size(); ++c)
            rhs.add_term(words[c], -m.at(r, c));
        for (const auto& [w, cf] : rhs.terms())
            if (word_compare(a, w, words[pc]) >= 0)
                throw std::logic_error("relation pivot not maximal under the order");
        // a two-letter pivot with a pure swap on the right becomes a scaling
        const Word& lhs = words[pc];
        if (lhs.run_count() == 2 && lhs.runs[0].second == 1 && lhs.runs[1].second == 1 &&
            rhs.term_count() == 1) {
            const auto& [rw, rc] = *rhs.terms().begin();
            Word swapped;
            swapped.push(lhs.runs[1].first, 1);
            swapped.push(lhs.runs[0].first, 1);
            if (rw == swapped && rc.as_monomial()) {
                rs.add_scaling(lhs.runs[0].first, lhs.runs[1].first, rc);
                continue;
            }
        }
        rs.add_rule(lhs, std::move(rhs), klass);
    }
    return pivots.size();
}

// --- local confluence -------------------------------------------------------

// Every 3-unit word with at least two distinct redexes must reach a single
// normal form along both reduction orders.  An optional family filter
// restricts the enumeration (used for the mixed-overlap spot checks of the
// cross presets, where the full alphabet cube is too large).
inline CheckReport check_local_confluence(
    const RuleSet& rs, const std::string& preset_name,
    const std::function<bool(Family, Family, Family)>& family_filter = {}) {
    CheckReport rep;
    rep.suite = "confluence";
    rep.preset = preset_name;
    const Alphabet& a = rs.alphabet();
    std::vector<std::pair<int, int>> units;
    for (std::size_t l = 0; l < a.size(); ++l) {
        units.push_back({static_cast<int>(l), 1});
        if (a.info(static_cast<int>(l)).invertible) units.push_back({static_cast<int>(l), -1});
    }
    std::size_t checked = 0, failures = 0, stuck_paths = 0;
    for (auto [l1, e1] : units)
        for (auto [l2, e2] : units)
            for (auto [l3, e3] : units) {
                if (family_filter && !family_filter(a.info(l1).family, a.info(l2).family,
                                                    a.info(l3).family))
                    continue;
                Word w = Word::of(l1, e1) * Word::of(l2, e2) * Word::of(l3, e3);
                auto redexes = rs.all_redexes(w);
                if (redexes.size() < 2) continue;
                ++checked;
                // compare the completed reductions; a path that strands an
                // opaque letter next to an L letter is outside the strategy's
                // reach and only counted
                std::optional<NCPoly> first;
                bool agree = true, any_stuck = false;
                for (const auto& rx : redexes) {
                    NFResult nf = rs.normal_form(rs.apply_redex(w, rx));
                    if (nf.stuck) {
                        any_stuck = true;
                        continue;
                    }
                    if (!first)
                        first = nf.poly;
                    else if (!(*first == nf.poly))
                        agree = false;
                }
                if (any_stuck) ++stuck_paths;
                if (!agree) {
                    ++failures;
                    rep.add("overlap[" + w.text(a) + "]", CheckStatus::FAIL);
                }
            }
    std::string summary = "overlaps[" + std::to_string(checked) + " checked";
    if (stuck_paths) summary += ", " + std::to_string(stuck_paths) + " with opaque paths";
    summary += "]";
    rep.add(summary, failures ? CheckStatus::FAIL : CheckStatus::PASS);
    return rep;
}

// --- quasi-scaling detection and localization -------------------------------

// factor c with NF(b.u) = c * NF(u.b), c a Gaussian-unit monomial in s
inline std::optional<Scalar> derive_scaling(const RuleSet& rs, const NCPoly& b, int u,
                                            std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) -> std::optional<Scalar> {
        if (why) *why = msg;
        return std::nullopt;
    };
    NCPoly bu = b * NCPoly(Word::of(u));
    NCPoly ub = NCPoly(Word::of(u)) * b;
    NFResult A = rs.normal_form(bu);
    NFResult B = rs.normal_form(ub);
    if (A.stuck || B.stuck) return fail("reduction stuck on an opaque adjacency");
    if (A.poly.is_zero() || B.poly.is_zero()) return fail("zero product");
    if (A.poly.term_count() != B.poly.term_count()) return fail("support mismatch");
    auto ita = A.poly.terms().begin();
    auto itb = B.poly.terms().begin();
    Scalar c = ita->second / itb->second;
    for (; ita != A.poly.terms().end(); ++ita, ++itb) {
        if (!(ita->first == itb->first)) return fail("support mismatch");
        if (ita->second != c * itb->second) return fail("coefficient ratio not constant");
    }
    auto mono = c.as_monomial();
    if (!mono || !mono->first.is_unit()) return fail("ratio is not a unit monomial");
    if (why) why->clear();
    return c;
}

inline NCPoly invert_single_word(const NCPoly& p, const Alphabet& a) {
    if (p.term_count() != 1) throw std::domain_error("cannot invert a sum");
    const auto& [w, c] = *p.terms().begin();
    Word inv;
    for (auto it = w.runs.rbegin(); it != w.runs.rend(); ++it) {
        if (!a.info(it->first).invertible)
            throw std::domain_error("cannot invert non-invertible letter " + a.info(it->first).name);
        inv.push(it->first, -it->second);
    }
    return NCPoly(inv, c.inv());
}

class not_adjoinable : public std::runtime_error {
public:
    explicit not_adjoinable(const std::string& msg) : std::runtime_error(msg) {}
};

// Adjoin an invertible square root r of b: r.u = d_u u.r with d_u^2 the
// derived scaling of b, and the leading word of NF(b) rewrites to
// r^2 - (rest).  Returns the new letter.
inline int adjoin_root(RuleSet& rs, const NCPoly& b, const std::string& name) {
    Alphabet& a = rs.alphabet_mutable();
    NFResult bnf_r = rs.normal_form(b);
    if (bnf_r.stuck) throw not_adjoinable(name + ": defining element does not reduce");
    NCPoly bnf = bnf_r.poly;
    if (bnf.is_zero()) throw not_adjoinable(name + ": defining element is zero");

    struct Pending {
        int letter;
        Scalar factor;  // r.u = factor * u.r
    };
    std::vector<Pending> pend;
    for (std::size_t l = 0; l < a.size(); ++l) {
        int u = static_cast<int>(l);
        std::string why;
        auto c = derive_scaling(rs, bnf, u, &why);
        if (!c) throw not_adjoinable(name + " vs " + a.info(u).name + ": " + why);
        auto mono = c->as_monomial();
        long m = mono->second;
        GaussQ unit = mono->first;
        if (m % 2 != 0) throw not_adjoinable(name + " vs " + a.info(u).name + ": odd s-exponent");
        Scalar d = Scalar::s_pow(m / 2);
        if (unit == GaussQ(-1L))
            d *= Scalar::imaginary();
        else if (!unit.is_one())
            throw not_adjoinable(name + " vs " + a.info(u).name + ": unit has no square root in Q(i)");
        pend.push_back({u, d});
    }

    Word lead = bnf.leading_word(a);
    long lead_deg = lead.weighted_degree(a);

    // when the defining element is a single word in invertible letters, the
    // word itself stays in the basis and the root's even powers collapse onto
    // it; otherwise the leading word is rewritten into r^2 minus the rest
    bool invertible_word = bnf.term_count() == 1;
    if (invertible_word)
        for (const auto& [l, e] : lead.runs)
            if (!a.info(l).invertible) invertible_word = false;
    if (!invertible_word && lead_deg % 2 != 0)
        throw not_adjoinable(name + ": leading degree is odd");

    bool letter_power = invertible_word && lead.run_count() == 1;
    LetterInfo info;
    info.name = name;
    info.family = Family::Aux;
    info.invertible = true;
    info.weight = static_cast<int>(std::max(1L, letter_power ? lead_deg / 2 + 1 : lead_deg / 2));
    info.subkey = a.next_aux_subkey();
    int r = a.add(info);

    for (const auto& p : pend) {
        // r.u = d u.r ; store under whichever side is out of order
        if (a.key(r) > a.key(p.letter))
            rs.add_scaling(r, p.letter, p.factor);
        else
            rs.add_scaling(p.letter, r, p.factor.inv());
    }

    if (letter_power) {
        // b is a power of a single invertible letter: even r-powers collapse
        // onto it and mixed opposite-sign adjacencies cancel
        const auto& [bw, bc] = *bnf.terms().begin();
        NCPoly binv = invert_single_word(bnf, a);
        const auto& [bwi, bci] = *binv.terms().begin();
        rs.add_rule(Word::of(r, 2), bnf, 2);
        rs.add_rule(Word::of(r, -2), binv, 2);
        rs.add_rule(Word::of(r, -1) * bw, NCPoly(Word::of(r, 1), bc.inv()), 2);
        rs.add_rule(Word::of(r, 1) * bwi, NCPoly(Word::of(r, -1), bci.inv()), 2);
        // chain awareness: if the base letter's negative powers expand, the
        // expansion must also cancel against r
        if (bw.run_count() == 1 && bw.runs[0].second == 1) {
            int x = bw.runs[0].first;
            for (const auto& rule : rs.rules()) {
                if (!(rule.lhs == Word::of(x, -2)) || rule.rhs.term_count() != 1) continue;
                // r . (x^{-2} expansion) = r^{-1} x^{-1}
                const auto& [ew, ec] = *rule.rhs.terms().begin();
                rs.add_rule(Word::of(r, 1) * ew,
                            NCPoly(Word::of(r, -1) * Word::of(x, -1), ec.inv()), 2);
                break;
            }
        }
    } else {
        // the leading word rewrites into r^2 minus the rest
        Scalar cw = bnf.coeff(lead);
        NCPoly rhs;
        rhs.add_term(Word::of(r, 2), Scalar::one());
        for (const auto& [w, c] : bnf.terms())
            if (!(w == lead)) rhs.add_term(w, -c);
        rs.add_rule(lead, rhs.scaled(cw.inv()), 2);
        if (invertible_word) {
            // the whole defining word is invertible: eliminate the inverse
            // letters of the word in favor of r^{-2}, so the only negative
            // sector is carried by r itself
            if (lead.run_count() != 2)
                throw not_adjoinable(name + ": unsupported invertible defining word shape");
            auto [x1, e1] = lead.runs[0];
            auto [x2, e2] = lead.runs[1];
            Scalar cb = bnf.coeff(lead);
            // x2^{-e2} = c_b r^{-2} x1^{e1}
            rs.add_rule(Word::of(x2, -e2), NCPoly(Word::of(r, -2) * Word::of(x1, e1), cb), 2);
            // x1^{-e1} = c_b g r^{-2} x2^{e2}  with  x2^{e2} r^{-2} = g r^{-2} x2^{e2}
            auto sf = rs.scaling_factor(x2, r);
            if (!sf) throw not_adjoinable(name + ": defining word letters do not q-commute with the root");
            Scalar g = sf->pow(static_cast<long>(e2) * (-2));
            rs.add_rule(Word::of(x1, -e1), NCPoly(Word::of(r, -2) * Word::of(x2, e2), cb * g), 2);
        }
    }
    rs.renormalize();
    return r;
}

// Verify a single letter q-commutes with the whole alphabet and mark it
// invertible, registering any missing scaling pairs.
inline void make_invertible(RuleSet& rs, int u) {
    Alphabet& a = rs.alphabet_mutable();
    NCPoly b(Word::of(u));
    for (std::size_t l = 0; l < a.size(); ++l) {
        int v = static_cast<int>(l);
        if (v == u) continue;
        if (rs.scaling_factor(u, v)) continue;
        std::string why;
        auto c = derive_scaling(rs, b, v, &why);
        if (!c)
            throw not_adjoinable(a.info(u).name + " cannot be localized vs " + a.info(v).name +
                                 ": " + why);
        // u.v = c v.u
        if (a.key(u) > a.key(v))
            rs.add_scaling(u, v, *c);
        else
            rs.add_scaling(v, u, c->inv());
    }
    const_cast<LetterInfo&>(a.info(u)).invertible = true;
}

// --- generator-assignment maps ----------------------------------------------

struct GenMap {
    std::map<int, NCPoly> images;
    bool antihom = false;
    std::optional<ConjMode> conj;
};

inline NFResult apply_map(const GenMap& m, const NCPoly& p, const RuleSet& target) {
    NFResult out;
    const Alphabet& a = target.alphabet();
    for (const auto& [w, c] : p.terms()) {
        Scalar coef = m.conj ? c.conjugate(*m.conj) : c;
        NCPoly acc = NCPoly::one();
        bool stuck = false;
        auto run_image = [&](int letter, int exp) {
            auto it = m.images.find(letter);
            if (it == m.images.end())
                throw std::invalid_argument("apply_map: unmapped letter id " + std::to_string(letter));
            NCPoly img = it->second;
            if (exp < 0) img = invert_single_word(img, a);
            int n = std::abs(exp);
            for (int t = 0; t < n; ++t) {
                NFResult step = target.normal_form(acc * img);
                acc = std::move(step.poly);
                stuck |= step.stuck;
            }
        };
        if (!m.antihom) {
            for (const auto& [l, e] : w.runs) run_image(l, e);
        } else {
            for (auto it = w.runs.rbegin(); it != w.runs.rend(); ++it) run_image(it->first, it->second);
        }
        out.poly += acc.scaled(coef);
        out.stuck |= stuck;
    }
    NFResult fin = target.normal_form(out.poly);
    fin.stuck |= out.stuck;
    return fin;
}

}  // namespace qd
