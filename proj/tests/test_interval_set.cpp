#include <doctest.h>

#include <random>
#include <sstream>

#include "lpcurves/errors.hpp"
#include "lpcurves/interval_set.hpp"

using lpcurves::Interval;
using lpcurves::IntervalSet;
using lpcurves::Rational;

namespace {

IntervalSet set(std::initializer_list<std::pair<Rational, Rational>> parts) {
    std::vector<Interval> v;
    for (const auto& [a, b] : parts) v.emplace_back(a, b);
    return IntervalSet(v);
}

// membership oracle on a fine lattice: count lattice points k/den in the set
long lattice_count(const IntervalSet& s, long den) {
    long n = 0;
    for (long k = 0; k <= den; ++k) n += s.contains(Rational(k, den));
    return n;
}

}  // namespace

TEST_CASE("measure") {
    CHECK(IntervalSet::unit().measure() == Rational(1));
    CHECK(set({{Rational(1, 4), Rational(1, 2)}, {Rational(3, 4), Rational(7, 8)}}).measure() == Rational(3, 8));
    CHECK(IntervalSet().measure() == Rational(0));
}

TEST_CASE("construction merges and validates") {
    auto s = set({{Rational(1, 2), Rational(3, 4)}, {Rational(0), Rational(1, 4)}, {Rational(1, 4), Rational(1, 3)}});
    REQUIRE(s.size() == 2);
    CHECK(s.components()[0] == Interval(Rational(0), Rational(1, 3)));
    CHECK_THROWS_AS(Interval(Rational(1, 2), Rational(1, 3)), lpcurves::DomainError);
    CHECK_THROWS_AS(set({{Rational(-1, 2), Rational(1, 3)}}), lpcurves::DomainError);
}

TEST_CASE("intersect, unite, complement") {
    CHECK(IntervalSet::unit().intersect(Interval(Rational(1, 3), Rational(1, 2))) ==
          set({{Rational(1, 3), Rational(1, 2)}}));
    CHECK(set({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(1)}})
              .intersect(Interval(Rational(1, 8), Rational(3, 4))) ==
          set({{Rational(1, 8), Rational(1, 4)}, {Rational(1, 2), Rational(3, 4)}}));
    CHECK(IntervalSet::unit().complement().empty());
    CHECK(IntervalSet().complement() == IntervalSet::unit());
    CHECK(set({{Rational(1, 4), Rational(1, 2)}}).complement() ==
          set({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(1)}}));
}

TEST_CASE("set operations agree with a lattice membership oracle") {
    std::mt19937_64 rng(11);
    const long den = 64;
    auto random_set = [&] {
        std::vector<Interval> v;
        const int parts = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < parts; ++i) {
            long a = static_cast<long>(rng() % den), b = static_cast<long>(rng() % den);
            if (a > b) std::swap(a, b);
            v.emplace_back(Rational(a, den), Rational(b, den));
        }
        return IntervalSet(v);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_set(), b = random_set();
        const auto i = a.intersect(b), u = a.unite(b);
        for (long k = 0; k <= 4 * den; ++k) {
            const Rational x(k, 4 * den);
            CHECK(i.contains(x) == (a.contains(x) && b.contains(x)));
            CHECK(u.contains(x) == (a.contains(x) || b.contains(x)));
        }
        // measure additivity: μ(A) + μ(B) = μ(A ∪ B) + μ(A ∩ B)
        CHECK(a.measure() + b.measure() == u.measure() + i.measure());
        // complement is the closure of the set difference
        CHECK(a.measure() + a.complement().measure() == Rational(1));
        CHECK(lattice_count(a.unite(a.complement()), 4 * den) == 4 * den + 1);
    }
}

TEST_CASE("text round trip") {
    const auto s = set({{Rational(1, 10), Rational(1, 5)}, {Rational(3, 5), Rational(1)}});
    CHECK(s.to_text() == "1/10 1/5\n3/5 1/1\n");
    CHECK(IntervalSet::from_text(s.to_text()) == s);
    CHECK(IntervalSet::from_text("# comment\n3/10 3/5\n") == set({{Rational(3, 10), Rational(3, 5)}}));
    CHECK_THROWS_AS(IntervalSet::from_text("1/2\n"), lpcurves::ParseError);
}

TEST_CASE("interior component") {
    const auto s = set({{Rational(3, 10), Rational(3, 5)}});
    CHECK(s.interior_component(Rational(9, 20)).has_value());
    CHECK_FALSE(s.interior_component(Rational(3, 10)).has_value());
    CHECK_FALSE(s.interior_component(Rational(7, 10)).has_value());
}
