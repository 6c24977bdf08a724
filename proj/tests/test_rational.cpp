#include <doctest.h>

#include <random>
#include <unordered_set>

#include "lpcurves/errors.hpp"
#include "lpcurves/rational.hpp"

using lpcurves::BigInt;
using lpcurves::Rational;

TEST_CASE("lowest terms and positive denominator") {
    Rational r(6, -8);
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(r.str() == "-3/4");
    CHECK(Rational(5).str() == "5/1");
    CHECK(Rational(0, 7).str() == "0/1");
    CHECK_THROWS_AS(Rational(1, 0), lpcurves::DomainError);
}

TEST_CASE("parse") {
    CHECK(Rational::parse("3/12") == Rational(1, 4));
    CHECK(Rational::parse(" -7 ") == Rational(-7));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("2.5E2") == Rational(250));
    CHECK_THROWS_AS(Rational::parse("1/0"), lpcurves::ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), lpcurves::ParseError);
    CHECK_THROWS_AS(Rational::parse(""), lpcurves::ParseError);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), lpcurves::ParseError);
}

TEST_CASE("exact arithmetic against integer cross-multiplication") {
    std::mt19937_64 rng(7);
    auto draw = [&] { return static_cast<long>(rng() % 2001) - 1000; };
    for (int trial = 0; trial < 500; ++trial) {
        long a = draw(), b = draw(), c = draw(), d = draw();
        if (b == 0) b = 1;
        if (d == 0) d = 3;
        const Rational x(a, b), y(c, d);
        // (a/b) + (c/d) = (ad + cb)/(bd)
        CHECK(x + y == Rational(a * d + c * b, b * d));
        CHECK(x - y == Rational(a * d - c * b, b * d));
        CHECK(x * y == Rational(a * c, b * d));
        if (c != 0) CHECK(x / y == Rational(a * d, b * c));
        const bool less = (a * d) * (b * d > 0 ? 1 : -1) < (c * b) * (b * d > 0 ? 1 : -1);
        CHECK((x < y) == less);
    }
}

TEST_CASE("floor, ceil and pow2") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(4).floor() == 4);
    CHECK(Rational(4).ceil() == 4);
    CHECK(Rational::pow2(-5) == Rational(1, 32));
    CHECK(Rational::pow2(10) == Rational(1024));
    // no overflow far beyond 64 bits
    const Rational big = Rational::pow2(-300);
    CHECK(big.den() == BigInt(1) << 300);
    CHECK(big.log() == doctest::Approx(-300 * std::log(2.0)));
}

TEST_CASE("from_double is exact") {
    CHECK(Rational::from_double(0.375) == Rational(3, 8));
    CHECK(Rational::from_double(0.1).to_double() == 0.1);
    CHECK(Rational::from_double(0.1) != Rational(1, 10));
}

TEST_CASE("bit helpers") {
    CHECK(lpcurves::bit_length(BigInt(0)) == 0);
    CHECK(lpcurves::bit_length(BigInt(8)) == 4);
    CHECK(lpcurves::exact_log2(BigInt(64)) == 6);
    CHECK(lpcurves::exact_log2(BigInt(65)) == -1);
}

TEST_CASE("hash agrees with equality") {
    std::unordered_set<Rational> s{Rational(1, 2), Rational(2, 4), Rational(3, 6), Rational(1, 3)};
    CHECK(s.size() == 2);
}
