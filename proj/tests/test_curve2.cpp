#include <cmath>
#include <doctest.h>

#include <numeric>
#include <set>

#include "lpcurves/curve2.hpp"
#include "lpcurves/errors.hpp"

using namespace lpcurves;
using namespace lpcurves::curve2;

TEST_CASE("enumeration") {
    CHECK(q(1) == Rational(1));
    CHECK(q(2) == Rational(1, 2));
    CHECK(q(3) == Rational(1, 3));
    CHECK(q(4) == Rational(2, 3));
    CHECK(q(5) == Rational(1, 4));
    CHECK(q(6) == Rational(3, 4));
    // oracle: list a/d by d then a, keep gcd 1
    std::vector<Rational> want;
    for (long d = 1; want.size() < 200; ++d)
        for (long a = 1; a <= d; ++a)
            if (std::gcd(a, d) == 1) want.emplace_back(a, d);
    RationalEnumerator e;
    std::set<Rational> seen;
    for (std::size_t m = 1; m <= 200; ++m) {
        auto [idx, v] = e.next();
        CHECK(idx == static_cast<long>(m));
        CHECK(v == want[m - 1]);
        CHECK(seen.insert(v).second);
    }
}

TEST_CASE("r and s") {
    CHECK(r_of(1L) == 1);
    CHECK(s(1L, BigInt(1)) == Rational(1, 2));
    CHECK(r_of(2L) == 2);
    CHECK(s(2L, BigInt(1)) == Rational(1, 6));
    for (long m = 1; m <= 20; ++m)
        for (long k = 1; k <= 20; ++k) {
            CHECK(s(m, BigInt(k)) < s(m, BigInt(k + 1)));
            CHECK(s(m, BigInt(k + 1)) < q(m));
            CHECK(Rational(0) <= s(m, BigInt(1)));
        }
    CHECK_THROWS_AS(s(1L, BigInt(0)), DomainError);
}

TEST_CASE("locate_k") {
    CHECK(locate_k(1L, Rational(3, 5)) == BigInt(1));
    CHECK_FALSE(locate_k(1L, Rational(1)).has_value());
    CHECK(locate_k(1L, Rational(2, 3)) == BigInt(2));
    CHECK_FALSE(locate_k(1L, Rational(1, 4)).has_value());
    // brute force: the unique k <= 60 with s_k <= t < s_{k+1}
    for (long m = 1; m <= 12; ++m)
        for (long a = 0; a <= 240; ++a) {
            const Rational t(a, 240);
            std::optional<BigInt> want;
            for (long k = 1; k <= 400 && !want; ++k)
                if (s(m, BigInt(k)) <= t && t < s(m, BigInt(k + 1))) want = BigInt(k);
            const auto got = locate_k(m, t);
            if (want) {
                REQUIRE(got.has_value());
                CHECK(*got == *want);
            } else if (got) {
                CHECK(*got > 400);
            }
        }
}

TEST_CASE("window") {
    CHECK(window(1L, BigInt(1), Rational(1, 2)) == Interval(Rational(0), Rational(0)));
    CHECK(window(1L, BigInt(1), Rational(2, 3)) == Interval(Rational(1), Rational(1)));
    const auto w = window(1L, BigInt(1), Rational(7, 12));
    CHECK(w == Interval(Rational(1, 2) - Rational(1, 192), Rational(1, 2) + Rational(1, 192)));
    CHECK(w.length() == Rational(1, 96));
    CHECK_THROWS_AS(window(1L, BigInt(1), Rational(3, 4)), DomainError);
}

TEST_CASE("terms and eval") {
    CHECK(term(1, BigInt(1), Rational(7, 12), Rational(1, 2)) == 2.0);
    CHECK(term(1, BigInt(1), Rational(7, 12), Rational(1, 4)) == 0.0);
    CHECK(term(1, BigInt(2), Rational(7, 12), Rational(1, 2)) == 0.0);
    Config cfg;
    cfg.max_m = 6;
    const auto r = eval(Rational(7, 12), Rational(1, 2), cfg);
    CHECK(r.value >= 2.0);
    double sum = 0;
    for (const auto& a : r.active) sum += term(a.m, a.k, Rational(7, 12), Rational(1, 2));
    CHECK(sum == r.value);
    CHECK(r.exceptional_measure_bound == Rational::pow2(-14) / Rational(3));
}

TEST_CASE("norms") {
    CHECK(lp_norm_term(1, BigInt(1), Rational(1, 2), 1.0) == 0.0);
    CHECK(lp_norm_term(1, BigInt(1), Rational(7, 12), 1.0) == doctest::Approx(1.0 / 48).epsilon(1e-14));
    // p = 1 bound holds: 2^m μ 4^-(k+m) <= 2^-(m+k) since μ <= 1
    for (long m = 1; m <= 8; ++m)
        for (long k = 1; k <= 8; ++k) {
            const Rational lo = s(m, BigInt(k)), hi = s(m, BigInt(k + 1));
            for (long a = 0; a <= 10; ++a) {
                const Rational t = lo + (hi - lo) * Rational(a, 10);
                CHECK(lp_norm_term(m, BigInt(k), t, 1.0) <= std::ldexp(1.0, static_cast<int>(-(m + k))));
            }
        }
}

TEST_CASE("density radius") {
    const auto unit = IntervalSet::unit();
    CHECK(density_radius(unit, Rational(1, 2), Rational(9, 10)) == Rational(1, 2) - Rational(1, 1000));
    const auto T = IntervalSet::single(Rational(3, 10), Rational(3, 5));
    const Rational rho = density_radius(T, Rational(9, 20), Rational(9, 10));
    CHECK(rho <= Rational(3, 20));
    CHECK(rho.num() != 1);
    for (long k = 1; k <= 1000; ++k) {
        const Rational r = rho * Rational(k, 1000);
        CHECK(T.intersect(Interval(Rational(9, 20) - r, Rational(9, 20))).measure() >= Rational(9, 10) * r);
    }
    CHECK_THROWS_AS(density_radius(T, Rational(3, 10), Rational(9, 10)), UnsupportedError);
    CHECK_THROWS_AS(density_radius(T, Rational(7, 10), Rational(9, 10)), UnsupportedError);
}

namespace {

// Every selected time in T ∩ S, and the exact window union of the selected
// times equals the recorded covered set.
void check_trace(const Witness2Trace& tr) {
    for (const auto& st : tr.stages) {
        const Rational g3 = st.gamma * st.gamma * st.gamma;
        CHECK(st.covered_measure >= g3);
        CHECK(st.certified());
        CHECK(st.density_in_S >= st.gamma * st.gamma);
        CHECK(window_union(st) == st.covered);
        for (const auto& run : st.runs) {
            CHECK(tr.T.contains(run.first));
            CHECK(tr.T.contains(run.last()));
            CHECK(st.S.lo <= run.first);
            CHECK(run.last() < st.S.hi);
        }
    }
}

}  // namespace

TEST_CASE("witness2 on [0,1]") {
    const auto tr = witness(IntervalSet::unit(), Rational(1, 2), 3, Config{});
    REQUIRE(tr.stages.size() == 3);
    CHECK(tr.stages[0].m == 8);
    CHECK(tr.stages[0].qm == Rational(2, 5));
    CHECK(tr.stages[1].m == 15);
    CHECK(tr.stages[2].m == 20);
    CHECK(tr.stages[0].covered_measure >= Rational(27, 64));
    CHECK(tr.stages[1].covered_measure >= Rational(343, 512));
    CHECK(tr.stages[2].covered_measure >= Rational(3375, 4096));
    check_trace(tr);
    CHECK_THROWS_AS(tr.flatten(1000), SizingError);
}

TEST_CASE("witness2 on a strict subset, with every time checked") {
    const auto T = IntervalSet::single(Rational(3, 10), Rational(3, 5));
    const auto tr = witness(T, Rational(9, 20), 1, Config{});
    check_trace(tr);
    // materialise small runs and check each time individually
    const auto& st = tr.stages[0];
    std::vector<Interval> wins;
    for (const auto& run : st.runs) {
        if (run.count > 200000) continue;
        for (BigInt n = 0; n < run.count; ++n) {
            const Rational t = run.at(n);
            CHECK(T.contains(t));
            wins.push_back(window(st.qm, st.m, st.k, t));
        }
    }
    if (!wins.empty()) CHECK(IntervalSet(wins).measure() <= st.covered_measure);
}

TEST_CASE("witness2 errors") {
    Config tight;
    tight.scan_budget = 3;
    CHECK_THROWS_AS(witness(IntervalSet::unit(), Rational(1, 2), 1, tight), InfeasibleError);
    CHECK_THROWS_AS(witness(IntervalSet::unit(), Rational(0), 1, Config{}), UnsupportedError);
}
