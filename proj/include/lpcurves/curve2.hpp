#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpcurves/interval_set.hpp"
#include "lpcurves/rational.hpp"

// The L^p-continuous curve of discontinuous functions diverging at every
// density point of every positive-measure time set:
//
//   f(t,x) = Σ_{m,k} 2^m χ_{S_{m,k}}(t) χ_{I_{m,k}(t)}(x),
//
// where S_{m,k} = [s_{m,k}, s_{m,k+1}) tiles [s_{m,1}, q_m) and the window
// I_{m,k}(t) sweeps [0,1] at speed 1/μ(S_{m,k}).
namespace lpcurves::curve2 {

struct Config {
    double p = 1.0;
    /// Time-frequency truncation: m = 1..max_m are summed.
    long max_m = 12;
    std::string enumeration = "denominator-numerator";
    /// Candidates scanned per search in the witness construction.
    long scan_budget = 1'000'000;

    void validate() const;
};

/// q_1, q_2, ... : (0,1] ∩ Q by increasing denominator, then numerator, lowest terms only.
class RationalEnumerator {
public:
    /// Next (m, q_m).
    std::pair<long, Rational> next();

private:
    long m_ = 0;
    long den_ = 1;
    long num_ = 0;
};

Rational q(long m);
/// min{r : q_m - 1/r >= 0} = ceil(1/q_m).
BigInt r_of(const Rational& qm);
BigInt r_of(long m);
Rational s(const Rational& qm, const BigInt& k);
Rational s(long m, const BigInt& k);

/// k with t in [s_{m,k}, s_{m,k+1}), or none.
std::optional<BigInt> locate_k(const Rational& qm, const Rational& t);
std::optional<BigInt> locate_k(long m, const Rational& t);

/// Window I_{m,k}(t) for t in the closed interval [s_{m,k}, s_{m,k+1}].
Interval window(const Rational& qm, long m, const BigInt& k, const Rational& t);
Interval window(long m, const BigInt& k, const Rational& t);

/// 2^m χ_{S_{m,k}}(t) χ_{I_{m,k}(t)}(x), with the half-open S of locate_k.
double term(long m, const BigInt& k, const Rational& t, const Rational& x);

struct ActiveTerm {
    long m;
    BigInt k;
};

struct EvalResult {
    double value;
    std::vector<ActiveTerm> active;
    /// Bound 4^-(M+1)/3 on the support measure of the omitted m > M terms.
    Rational exceptional_measure_bound;
};

EvalResult eval(const Rational& t, const Rational& x, const Config& cfg);

/// 2^m λ(I_{m,k}(t))^(1/p).
double lp_norm_term(long m, const BigInt& k, const Rational& t, double p);

/// ρ in (0,t) off {1/l} with μ(T ∩ (t-ρ, t]) >= γρ for all smaller radii; t
/// must be interior to a component of T.
Rational density_radius(const IntervalSet& T, const Rational& t, const Rational& gamma);

/// Exact arithmetic progression of times first + n·step, n < count.
struct Run {
    Rational first;
    Rational step;
    BigInt count;

    Rational at(const BigInt& n) const { return first + step * Rational(n, BigInt(1)); }
    Rational last() const { return at(count - 1); }
};

struct Stage {
    long index;
    Rational gamma;
    Rational rho;
    BigInt l;
    long m;
    Rational qm;
    BigInt r;
    BigInt k;
    Interval S;
    /// μ(S ∩ T) / μ(S), >= γ².
    Rational density_in_S;
    /// ⋃_{r in S∩T} int I(r), and its measure.
    IntervalSet coverable;
    Rational coverable_measure;
    /// ⋃ int I(t_n) over the selected times, and its measure.
    IntervalSet covered;
    Rational covered_measure;
    std::vector<Run> runs;

    BigInt time_count() const;
    Rational certificate_bound() const { return gamma * gamma * gamma; }
    bool certified() const { return certificate_bound() <= covered_measure; }
};

struct Witness2Trace {
    IntervalSet T;
    Rational target;
    std::vector<Stage> stages;

    BigInt time_count() const;
    /// All selected times in order; throws SizingError above `limit`.
    std::vector<Rational> flatten(std::size_t limit) const;
};

/// Density-point witness construction, stages 1..stages with γ_i = 1 - 2^-(i+1).
Witness2Trace witness(const IntervalSet& T, const Rational& t, long stages, const Config& cfg);

/// Independent re-derivation of the stage's window union from its runs: every
/// window is materialised when a run has at most `explicit_limit` members,
/// otherwise consecutive abutment is checked exactly at both run ends.
IntervalSet window_union(const Stage& stage, std::size_t explicit_limit = 100'000);

/// Fraction of x points where some selected time of the stage has
/// f(t_n, x) >= 2^{m_i}, evaluating f at the times whose windows can reach x.
double threshold_coverage(const Stage& stage, const std::vector<Rational>& xs);

}  // namespace lpcurves::curve2
