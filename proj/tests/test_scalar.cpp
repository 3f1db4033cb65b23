#include "qdecouple/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qd;

namespace {

std::mt19937_64 rng(0xD5EED);

Scalar random_scalar(int max_deg = 4) {
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, max_deg);
    auto poly = [&](bool nonzero) {
        Poly p;
        int d = deg(rng);
        for (int k = 0; k <= d; ++k)
            p.set(static_cast<std::size_t>(k),
                  GaussQ(mpq_class(coef(rng)), mpq_class(coef(rng))));
        if (nonzero && p.is_zero()) p.set(0, GaussQ::one());
        return p;
    };
    return Scalar(poly(false), poly(true));
}

}  // namespace

TEST_CASE("canonical text matches the fixed grammar") {
    CHECK(Scalar::q().to_text() == "( s^2 ) / ( 1 )");
    CHECK(Scalar::h().to_text() == "( -1 + s^2 ) / ( s )");
    CHECK(Scalar::zero().to_text() == "( 0 ) / ( 1 )");
    CHECK(Scalar::parse("( I ) / ( 1 )") == Scalar::imaginary());
    CHECK(Scalar::parse("( s^-2 ) / ( 1 )") == Scalar::q_pow(-1));
    CHECK(Scalar::parse("( 3/2*I*s^4 - s ) / ( 2 )") ==
          (Scalar::rational(3, 4) * Scalar::imaginary() * Scalar::s_pow(4) -
           Scalar::rational(1, 2) * Scalar::s_pow(1)));
}

TEST_CASE("arithmetic on the named constants") {
    Scalar k = Scalar::k();
    CHECK((k * k).to_text() == "( 1 - 2*s^4 + s^8 ) / ( s^4 )");
    CHECK((Scalar::h() + (-Scalar::h())).is_zero());
    // omega_1 = q^(1/2) + q^(-1/2); omega_1^2 = q + 2 + q^(-1)
    Scalar w1 = Scalar::q_half_pow(1) + Scalar::q_half_pow(-1);
    CHECK(w1 * w1 == Scalar::q() + Scalar(2) + Scalar::q_pow(-1));
    CHECK_THROWS_AS(Scalar::one() / Scalar::zero(), std::domain_error);
}

TEST_CASE("conjugations") {
    Scalar k = Scalar::k();
    CHECK(k.conjugate(ConjMode::unit_circle) == -k);
    Scalar w2 = Scalar::q_half_pow(3) + Scalar::q_half_pow(-3);
    CHECK(w2.conjugate(ConjMode::unit_circle) == w2);
    CHECK(Scalar::imaginary().conjugate(ConjMode::real_q) == -Scalar::imaginary());
    for (int t = 0; t < 40; ++t) {
        Scalar x = random_scalar();
        for (ConjMode m : {ConjMode::unit_circle, ConjMode::real_q}) {
            CHECK(x.conjugate(m).conjugate(m) == x);
            Scalar y = random_scalar();
            CHECK((x * y).conjugate(m) == x.conjugate(m) * y.conjugate(m));
            CHECK((x + y).conjugate(m) == x.conjugate(m) + y.conjugate(m));
        }
    }
}

TEST_CASE("field axioms on random elements") {
    for (int t = 0; t < 60; ++t) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK(a * a.inv() == Scalar::one());
            CHECK(a.pow(-3) == (a * a * a).inv());
        }
    }
}

TEST_CASE("canonical form is the zero test") {
    // same value along two routes must be bitwise-identical
    Scalar h = Scalar::h();
    Scalar route1 = (Scalar::q() - Scalar::one()) / Scalar::s_pow(1);
    CHECK(route1 == h);
    CHECK(route1.to_text() == h.to_text());
    for (int t = 0; t < 40; ++t) {
        Scalar a = random_scalar(), b = random_scalar();
        if (b.is_zero()) continue;
        CHECK(((a / b) * b) == a);
    }
}

TEST_CASE("parse/format round trip is exact") {
    for (int t = 0; t < 60; ++t) {
        Scalar a = random_scalar();
        CHECK(Scalar::parse(a.to_text()) == a);
    }
    CHECK_THROWS_AS(Scalar::parse("( s^2 ( ) / ( 1 )"), parse_error);
    try {
        Scalar::parse("( s^2 + ) / ( 1 )");
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        CHECK(e.position() > 0);
    }
}

TEST_CASE("numeric probe agrees with exact arithmetic") {
    std::uniform_real_distribution<double> angle(0.0, 6.28318);
    for (int t = 0; t < 10; ++t) {
        Scalar a = random_scalar(), b = random_scalar();
        for (int probe = 0; probe < 3; ++probe) {
            std::complex<double> s = std::polar(1.0, angle(rng));
            auto lhs = (a * b + a).eval(s);
            auto rhs = a.eval(s) * b.eval(s) + a.eval(s);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
        }
    }
}
