#pragma once

// Words in generator letters and finitely supported formal sums of them.
// A Letter carries its family (which fixes the normal-form layering
// L+ < L- < Cartan < Aux < Coord < Deriv), an order weight, and an
// invertibility flag; only invertible letters may carry negative exponents.

#include "scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

enum class Family : std::uint8_t { Lplus = 0, Lminus, Cartan, Aux, Coord, Deriv };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::Lplus: return "L+";
        case Family::Lminus: return "L-";
        case Family::Cartan: return "Cartan";
        case Family::Aux: return "Aux";
        case Family::Coord: return "Coord";
        case Family::Deriv: return "Deriv";
    }
    return "?";
}

struct LetterInfo {
    std::string name;
    Family family = Family::Coord;
    int i = 0, j = 0;  // index or index pair
    bool invertible = false;
    int weight = 2;    // contribution to the order degree, per unit exponent
    int subkey = 0;    // within-family order position
};

class Alphabet {
public:
    int add(LetterInfo info) {
        if (by_name_.count(info.name))
            throw std::invalid_argument("duplicate letter name: " + info.name);
        if (info.weight <= 0) throw std::invalid_argument("letter weight must be positive");
        int id = static_cast<int>(letters_.size());
        by_name_.emplace(info.name, id);
        letters_.push_back(std::move(info));
        return id;
    }

    const LetterInfo& info(int id) const { return letters_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return letters_.size(); }

    int find(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) throw std::invalid_argument("unknown letter: " + name);
        return it->second;
    }
    bool contains(const std::string& name) const { return by_name_.count(name) != 0; }

    // total-order position: family-major, then subkey
    std::pair<int, int> key(int id) const {
        const auto& L = info(id);
        return {static_cast<int>(L.family), L.subkey};
    }

    // descending subkeys for adjoined Aux letters (later roots sort earlier)
    int next_aux_subkey() { return aux_subkey_--; }

private:
    std::vector<LetterInfo> letters_;
    std::map<std::string, int> by_name_;
    int aux_subkey_ = 1 << 20;
};

// A word: sequence of (letter, exponent) runs; exponents nonzero, adjacent
// runs carry distinct letters, negative exponents only on invertible letters.
struct Word {
    std::vector<std::pair<int, int>> runs;

    static Word unit() { return Word{}; }
    static Word of(int letter, int exp = 1) {
        Word w;
        if (exp != 0) w.runs.push_back({letter, exp});
        return w;
    }

    bool is_unit() const { return runs.empty(); }
    std::size_t run_count() const { return runs.size(); }

    // append one run, merging with the tail
    void push(int letter, int exp) {
        if (exp == 0) return;
        if (!runs.empty() && runs.back().first == letter) {
            runs.back().second += exp;
            if (runs.back().second == 0) runs.pop_back();
            return;
        }
        runs.push_back({letter, exp});
    }

    Word operator*(const Word& o) const {
        Word w(*this);
        for (const auto& [l, e] : o.runs) {
            // pushes may cascade cancellations at the seam
            if (!w.runs.empty() && w.runs.back().first == l) {
                w.push(l, e);
            } else {
                w.runs.push_back({l, e});
            }
        }
        // fix any residual adjacent-equal pairs produced by cancellation
        Word out;
        for (const auto& [l, e] : w.runs) out.push(l, e);
        return out;
    }

    long weighted_degree(const Alphabet& a) const {
        long d = 0;
        for (const auto& [l, e] : runs)
            d += static_cast<long>(a.info(l).weight) * (e >= 0 ? e : -e);
        return d;
    }

    // letter-family degree (total positive exponent mass of given families)
    long family_degree(const Alphabet& a, std::initializer_list<Family> fams) const {
        long d = 0;
        for (const auto& [l, e] : runs)
            for (Family f : fams)
                if (a.info(l).family == f) d += (e >= 0 ? e : -e);
        return d;
    }

    bool operator==(const Word& o) const { return runs == o.runs; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    // structural order, usable as a map key without an alphabet
    bool operator<(const Word& o) const { return runs < o.runs; }

    std::string text(const Alphabet& a) const {
        if (runs.empty()) return "1";
        std::string out;
        for (const auto& [l, e] : runs) {
            if (!out.empty()) out += ".";
            out += a.info(l).name;
            if (e != 1) out += "^" + std::to_string(e);
        }
        return out;
    }
};

// degree-then-lexicographic monomial order; returns <0, 0, >0
inline int word_compare(const Alphabet& a, const Word& x, const Word& y) {
    long dx = x.weighted_degree(a), dy = y.weighted_degree(a);
    if (dx != dy) return dx < dy ? -1 : 1;
    // unit-wise walk: first position with a bigger letter key wins
    std::size_t rx = 0, ry = 0;
    int cx = 0, cy = 0;  // units consumed within current run
    while (rx < x.runs.size() && ry < y.runs.size()) {
        int lx = x.runs[rx].first, ly = y.runs[ry].first;
        if (lx != ly) {
            auto kx = a.key(lx), ky = a.key(ly);
            return kx < ky ? -1 : 1;
        }
        int sx = x.runs[rx].second >= 0 ? 1 : -1;
        int sy = y.runs[ry].second >= 0 ? 1 : -1;
        if (sx != sy) return sx < sy ? -1 : 1;
        if (++cx == std::abs(x.runs[rx].second)) {
            ++rx;
            cx = 0;
        }
        if (++cy == std::abs(y.runs[ry].second)) {
            ++ry;
            cy = 0;
        }
    }
    if (rx < x.runs.size()) return 1;
    if (ry < y.runs.size()) return -1;
    return 0;
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& [l, e] : w.runs) {
            h = (h ^ static_cast<std::size_t>(l)) * 0x100000001b3ull;
            h = (h ^ static_cast<std::size_t>(e + (1 << 16))) * 0x100000001b3ull;
        }
        return h;
    }
};

// finitely supported Word -> Scalar sum, structural key order
class NCPoly {
public:
    using Map = std::map<Word, Scalar>;

    NCPoly() = default;
    explicit NCPoly(const Scalar& c) {
        if (!c.is_zero()) terms_.emplace(Word::unit(), c);
    }
    explicit NCPoly(const Word& w, const Scalar& c = Scalar::one()) {
        if (!c.is_zero()) terms_.emplace(w, c);
    }

    static NCPoly zero() { return NCPoly(); }
    static NCPoly one() { return NCPoly(Scalar::one()); }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    NCPoly operator+(const NCPoly& o) const {
        NCPoly r(*this);
        for (const auto& [w, c] : o.terms_) r.add_term(w, c);
        return r;
    }
    NCPoly operator-(const NCPoly& o) const {
        NCPoly r(*this);
        for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
        return r;
    }
    NCPoly operator-() const {
        NCPoly r;
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    NCPoly scaled(const Scalar& c) const {
        NCPoly r;
        if (c.is_zero()) return r;
        for (const auto& [w, s] : terms_) r.terms_.emplace(w, s * c);
        return r;
    }
    // free (unreduced) product
    NCPoly operator*(const NCPoly& o) const {
        NCPoly r;
        for (const auto& [w1, c1] : terms_)
            for (const auto& [w2, c2] : o.terms_) r.add_term(w1 * w2, c1 * c2);
        return r;
    }
    NCPoly& operator+=(const NCPoly& o) { return *this = *this + o; }
    NCPoly& operator-=(const NCPoly& o) { return *this = *this - o; }
    NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }

    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    Word leading_word(const Alphabet& a) const {
        if (terms_.empty()) throw std::domain_error("leading word of zero");
        const Word* best = &terms_.begin()->first;
        for (const auto& [w, c] : terms_)
            if (word_compare(a, w, *best) > 0) best = &w;
        return *best;
    }

    const Scalar& coeff(const Word& w) const {
        static const Scalar zero;
        auto it = terms_.find(w);
        return it == terms_.end() ? zero : it->second;
    }

    std::string text(const Alphabet& a) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [w, c] : terms_) {
            if (!out.empty()) out += "  +  ";
            out += c.to_text() + " " + w.text(a);
        }
        return out;
    }

private:
    Map terms_;
};

}  // namespace qd
