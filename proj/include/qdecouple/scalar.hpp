#pragma once

// Exact arithmetic in Q(i)(s), the field of rational functions in s = q^(1/2)
// with Gaussian-rational coefficients.  Every coefficient the engine ever
// needs (q-powers, h = s - 1/s, k = q - 1/q, the weights omega_a, the
// Heisenberg unit alpha in {1,-1,i,-i}) lives here, so equality of canonical
// forms is the engine-wide zero test.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qd {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Gaussian rational a + b*i.
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(long v) : re_(v), im_(0) {}
    GaussQ(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static GaussQ zero() { return GaussQ(); }
    static GaussQ one() { return GaussQ(1); }
    static GaussQ i() { return GaussQ(mpq_class(0), mpq_class(1)); }
    static GaussQ rational(long p, long q) {
        if (q == 0) throw std::invalid_argument("GaussQ: zero denominator");
        mpq_class r(p, q);
        r.canonicalize();
        return GaussQ(r, mpq_class(0));
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    // true for 1, -1, i, -i
    bool is_unit() const {
        return (im_ == 0 && (re_ == 1 || re_ == -1)) || (re_ == 0 && (im_ == 1 || im_ == -1));
    }

    GaussQ conj() const { return GaussQ(re_, -im_); }

    GaussQ operator-() const { return GaussQ(-re_, -im_); }
    GaussQ operator+(const GaussQ& o) const { return GaussQ(re_ + o.re_, im_ + o.im_); }
    GaussQ operator-(const GaussQ& o) const { return GaussQ(re_ - o.re_, im_ - o.im_); }
    GaussQ operator*(const GaussQ& o) const {
        return GaussQ(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussQ inv() const {
        if (is_zero()) throw std::domain_error("GaussQ: division by zero");
        mpq_class n = re_ * re_ + im_ * im_;
        return GaussQ(re_ / n, -im_ / n);
    }
    GaussQ operator/(const GaussQ& o) const { return *this * o.inv(); }

    GaussQ& operator+=(const GaussQ& o) { return *this = *this + o; }
    GaussQ& operator-=(const GaussQ& o) { return *this = *this - o; }
    GaussQ& operator*=(const GaussQ& o) { return *this = *this * o; }

    bool operator==(const GaussQ& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussQ& o) const { return !(*this == o); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

private:
    mpq_class re_, im_;
};

// Dense polynomial in s over GaussQ; coeff_[k] is the coefficient of s^k.
class Poly {
public:
    Poly() {}
    explicit Poly(const GaussQ& c) {
        if (!c.is_zero()) coeff_.push_back(c);
    }
    Poly(const GaussQ& c, std::size_t power) {
        if (!c.is_zero()) {
            coeff_.assign(power + 1, GaussQ::zero());
            coeff_[power] = c;
        }
    }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GaussQ::one()); }
    static Poly s_power(std::size_t k) { return Poly(GaussQ::one(), k); }

    bool is_zero() const { return coeff_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(coeff_.size()) - 1; }
    long low_degree() const {
        for (std::size_t k = 0; k < coeff_.size(); ++k)
            if (!coeff_[k].is_zero()) return static_cast<long>(k);
        return -1;
    }
    const GaussQ& at(std::size_t k) const {
        static const GaussQ zero;
        return k < coeff_.size() ? coeff_[k] : zero;
    }
    GaussQ lead() const { return coeff_.empty() ? GaussQ::zero() : coeff_.back(); }
    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coeff_)
            if (!c.is_zero()) ++n;
        return n;
    }

    void set(std::size_t k, const GaussQ& c) {
        if (k >= coeff_.size()) {
            if (c.is_zero()) return;
            coeff_.resize(k + 1, GaussQ::zero());
        }
        coeff_[k] = c;
        trim();
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.coeff_) c = -c;
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r;
        r.coeff_.resize(std::max(coeff_.size(), o.coeff_.size()), GaussQ::zero());
        for (std::size_t k = 0; k < r.coeff_.size(); ++k) r.coeff_[k] = at(k) + o.at(k);
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        Poly r;
        r.coeff_.assign(coeff_.size() + o.coeff_.size() - 1, GaussQ::zero());
        for (std::size_t a = 0; a < coeff_.size(); ++a) {
            if (coeff_[a].is_zero()) continue;
            for (std::size_t b = 0; b < o.coeff_.size(); ++b) {
                if (o.coeff_[b].is_zero()) continue;
                r.coeff_[a + b] += coeff_[a] * o.coeff_[b];
            }
        }
        r.trim();
        return r;
    }
    Poly scaled(const GaussQ& c) const {
        if (c.is_zero()) return Poly();
        Poly r(*this);
        for (auto& x : r.coeff_) x *= c;
        return r;
    }
    Poly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.coeff_.assign(coeff_.size() + k, GaussQ::zero());
        for (std::size_t a = 0; a < coeff_.size(); ++a) r.coeff_[a + k] = coeff_[a];
        return r;
    }
    // divide by s^k; every removed coefficient must be zero
    Poly unshifted(std::size_t k) const {
        if (k == 0) return *this;
        Poly r;
        if (coeff_.size() <= k) return r;
        r.coeff_.assign(coeff_.begin() + static_cast<long>(k), coeff_.end());
        return r;
    }
    // coefficients reversed: s^deg * p(1/s)
    Poly reversed() const {
        Poly r(*this);
        std::reverse(r.coeff_.begin(), r.coeff_.end());
        r.trim();
        return r;
    }
    Poly conj_coeffs() const {
        Poly r(*this);
        for (auto& c : r.coeff_) c = c.conj();
        return r;
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inv());
    }

    // euclidean division over the coefficient field
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly q, r(*this);
        GaussQ dl_inv = d.lead().inv();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            GaussQ c = r.lead() * dl_inv;
            q.set(shift, q.at(shift) + c);
            r = r - d.scaled(c).shifted(shift);
        }
        return {q, r};
    }

    static Poly gcd(Poly a, Poly b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        // pull out common s-powers first
        long la = a.low_degree(), lb = b.low_degree();
        long ls = std::min(la, lb);
        a = a.unshifted(static_cast<std::size_t>(la));
        b = b.unshifted(static_cast<std::size_t>(lb));
        while (!b.is_zero()) {
            Poly r = a.divmod(b).second;
            a = b;
            b = r.monic();
        }
        return a.monic().shifted(static_cast<std::size_t>(ls));
    }

    bool operator==(const Poly& o) const { return coeff_ == o.coeff_; }

    std::complex<double> eval(const std::complex<double>& s) const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = coeff_.size(); k-- > 0;) acc = acc * s + coeff_[k].to_complex();
        return acc;
    }

private:
    void trim() {
        while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
    }
    std::vector<GaussQ> coeff_;
};

enum class ConjMode { unit_circle, real_q };

// Canonical rational function num/den: gcd(num, den) = 1 and the
// lowest-degree nonzero coefficient of den is 1.  Equality of the stored
// pair is equality in the field.
class Scalar {
public:
    Scalar() : num_(), den_(Poly::one()) {}
    Scalar(long v) : num_(GaussQ(v)), den_(Poly::one()) {}
    explicit Scalar(const GaussQ& c) : num_(c), den_(Poly::one()) {}
    Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar imaginary() { return Scalar(GaussQ::i()); }
    static Scalar rational(long p, long q) { return Scalar(GaussQ::rational(p, q)); }

    // s^k for any integer k
    static Scalar s_pow(long k) {
        if (k >= 0) return Scalar(Poly::s_power(static_cast<std::size_t>(k)), Poly::one());
        return Scalar(Poly::one(), Poly::s_power(static_cast<std::size_t>(-k)));
    }
    // q^(m/2) = s^m, with m counted in half-q units
    static Scalar q_half_pow(long m) { return s_pow(m); }
    // q^k
    static Scalar q_pow(long k) { return s_pow(2 * k); }
    static Scalar q() { return q_pow(1); }
    // h = q^(1/2) - q^(-1/2)
    static Scalar h() { return s_pow(1) - s_pow(-1); }
    // k = q - q^(-1)
    static Scalar k() { return q_pow(1) - q_pow(-1); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly::one() && den_ == Poly::one(); }

    Scalar operator-() const {
        Scalar r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Scalar operator+(const Scalar& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const {
        if (is_zero() || o.is_zero()) return Scalar();
        return Scalar(num_ * o.num_, den_ * o.den_);
    }
    Scalar inv() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        return Scalar(den_, num_);
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar pow(long e) const {
        if (e == 0) return one();
        Scalar base = e > 0 ? *this : inv();
        long n = e > 0 ? e : -e;
        Scalar acc = one();
        while (n > 0) {
            if (n & 1) acc *= base;
            base = (n >>= 1) ? base * base : base;
        }
        return acc;
    }

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // antilinear field involutions: unit_circle sends s -> 1/s and i -> -i,
    // real_q sends i -> -i only
    Scalar conjugate(ConjMode mode) const {
        if (is_zero()) return Scalar();
        Poly n = num_.conj_coeffs();
        Poly d = den_.conj_coeffs();
        if (mode == ConjMode::unit_circle) {
            long dn = n.degree(), dd = d.degree();
            n = n.reversed();
            d = d.reversed();
            if (dd >= dn)
                n = n.shifted(static_cast<std::size_t>(dd - dn));
            else
                d = d.shifted(static_cast<std::size_t>(dn - dd));
        }
        return Scalar(std::move(n), std::move(d));
    }

    // single term c * s^k, if the value is one
    std::optional<std::pair<GaussQ, long>> as_monomial() const {
        if (is_zero()) return std::nullopt;
        if (num_.term_count() != 1 || den_.term_count() != 1) return std::nullopt;
        long en = num_.degree(), ed = den_.degree();
        GaussQ c = num_.at(static_cast<std::size_t>(en)) / den_.at(static_cast<std::size_t>(ed));
        return std::make_pair(c, en - ed);
    }

    std::complex<double> eval(const std::complex<double>& s) const {
        return num_.eval(s) / den_.eval(s);
    }

    std::string to_text() const;
    static Scalar parse(const std::string& text);

private:
    void canonicalize() {
        if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0 || g.low_degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        GaussQ unit = den_.at(static_cast<std::size_t>(den_.low_degree()));
        if (!unit.is_one()) {
            GaussQ u = unit.inv();
            num_ = num_.scaled(u);
            den_ = den_.scaled(u);
        }
    }

    Poly num_, den_;
};

namespace detail {

inline std::string rational_text(const mpq_class& r) {
    return r.get_str();
}

// one canonical term: magnitude part of c*s^k (sign handled by the caller)
inline std::string term_text(const mpq_class& mag, bool imaginary, long k) {
    std::string coef;
    if (imaginary)
        coef = (mag == 1) ? "I" : rational_text(mag) + "*I";
    else if (mag != 1 || k == 0)
        coef = rational_text(mag);
    std::string spart;
    if (k == 1)
        spart = "s";
    else if (k != 0)
        spart = "s^" + std::to_string(k);
    if (coef.empty()) return spart;
    if (spart.empty()) return coef;
    return coef + "*" + spart;
}

inline std::string poly_text(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    auto emit = [&](const mpq_class& val, bool imaginary, long k) {
        if (val == 0) return;
        bool neg = val < 0;
        mpq_class mag = neg ? mpq_class(-val) : val;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += term_text(mag, imaginary, k);
    };
    for (long k = 0; k <= p.degree(); ++k) {
        const GaussQ& c = p.at(static_cast<std::size_t>(k));
        emit(c.re(), false, k);
        emit(c.im(), true, k);
    }
    return out;
}

class scalar_parser {
public:
    explicit scalar_parser(const std::string& s) : s_(s) {}

    Scalar run() {
        expect('(');
        Scalar num = laurent();
        expect(')');
        expect('/');
        expect('(');
        Scalar den = laurent();
        expect(')');
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        if (den.is_zero()) fail("zero denominator");
        return num / den;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) { throw parse_error("scalar parse: " + why, pos_); }
    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    // term := [rational] ["*"? "I"] ["*"? "s" ["^" [-]int]], at least one part
    Scalar term() {
        skip_ws();
        bool have_coef = false, have_i = false;
        mpq_class coef(1);
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            mpz_class p = integer();
            mpz_class q(1);
            if (peek('/')) {
                ++pos_;
                q = integer();
                if (q == 0) fail("zero in rational coefficient");
            }
            coef = mpq_class(p, q);
            coef.canonicalize();
            have_coef = true;
        }
        if (peek('*')) ++pos_;
        if (peek('I')) {
            ++pos_;
            have_i = true;
            if (peek('*')) ++pos_;
        }
        long k = 0;
        bool have_s = false;
        if (peek('s')) {
            ++pos_;
            have_s = true;
            k = 1;
            if (peek('^')) {
                ++pos_;
                skip_ws();
                bool neg = false;
                if (peek('-')) {
                    ++pos_;
                    neg = true;
                }
                mpz_class e = integer();
                if (!e.fits_slong_p()) fail("exponent out of range");
                k = e.get_si();
                if (neg) k = -k;
            }
        }
        if (!have_coef && !have_i && !have_s) fail("expected term");
        GaussQ c = have_i ? GaussQ(mpq_class(0), coef) : GaussQ(coef, mpq_class(0));
        return Scalar(c) * Scalar::s_pow(k);
    }

    Scalar laurent() {
        Scalar acc = Scalar::zero();
        skip_ws();
        bool neg = false;
        if (peek('-')) {
            ++pos_;
            neg = true;
        } else if (peek('+')) {
            ++pos_;
        }
        while (true) {
            Scalar t = term();
            acc += neg ? -t : t;
            skip_ws();
            if (peek('+')) {
                ++pos_;
                neg = false;
            } else if (peek('-')) {
                ++pos_;
                neg = true;
            } else {
                break;
            }
        }
        return acc;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string Scalar::to_text() const {
    return "( " + detail::poly_text(num_) + " ) / ( " + detail::poly_text(den_) + " )";
}

inline Scalar Scalar::parse(const std::string& text) {
    return detail::scalar_parser(text).run();
}

}  // namespace qd
