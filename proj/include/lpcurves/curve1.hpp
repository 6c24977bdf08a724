#pragma once

#include <optional>
#include <vector>

#include "lpcurves/gap_family.hpp"
#include "lpcurves/interval_set.hpp"
#include "lpcurves/rational.hpp"

// The L^p-continuous curve of continuous functions that is smooth on K yet
// has no pointwise limit along witness sequences approaching K:
//
//   f(t,x) = Σ_i φ_i(t) γ_i(t,x),
//   γ_i(t,x) = 4^-i exp(-π (x - (t - r_ij)/l_ij)^2 / l_ij^(2p))  for t in gap (r_ij, s_ij),
//
// with φ_i a trapezoid of ramp width l_ij/(2j) on each gap.
namespace lpcurves::curve1 {

struct Config {
    double p = 1.0;
    GapFamily gaps = GapFamily::canonical();
    /// Truncation depth I: stages 1..I are summed.
    long depth = 6;

    void validate() const;
};

struct EvalResult {
    double value;
    /// Absolute bound on the omitted stages.
    double tail_bound;
    long terms_used;
};

/// Σ_{i>I} 4^-i = 4^-I / 3.
double truncation_tail(long depth);

/// Trapezoid φ_i(t); exact.
Rational phi(long stage, const Rational& t, const GapFamily& gaps);
double gamma(long stage, const Rational& t, double x, double p, const GapFamily& gaps);
double term(long stage, const Rational& t, double x, const Config& cfg);

/// One active stage of f_t: the gap t sits in and the exact trapezoid height.
struct StageTerm {
    long stage;
    Gap gap;
    Rational phi;
    /// Moving centre (t - r)/l, exact.
    Rational center;
    double weight;      ///< 4^-i φ_i(t)
    double center_d;
    double inv_width;   ///< l^-p; +inf when l^p underflows
    double width;       ///< l^p
};

/// f_t prepared for repeated evaluation in x.
class Slice {
public:
    Slice(const Rational& t, const Config& cfg);

    const Rational& time() const { return t_; }
    const std::vector<StageTerm>& terms() const { return terms_; }
    double value(double x) const;
    double dx(double x) const;
    double tail_bound() const { return truncation_tail(depth_); }
    long depth() const { return depth_; }
    /// Breakpoints resolving every Gaussian (centre ± m·l^p), for quadrature.
    std::vector<double> features() const;

private:
    Rational t_;
    long depth_;
    std::vector<StageTerm> terms_;
};

EvalResult eval(const Rational& t, double x, const Config& cfg);
/// ∂f/∂x summed to depth I; tail from the majorant 4^-i sqrt(2π/e) l^-p over the
/// deeper stages still containing t (+inf if t stays in gaps past the scan cap).
EvalResult dx_eval(const Rational& t, double x, const Config& cfg);

struct NormResult {
    double value;
    double error_bound;
};

/// ‖φ_i(t) γ_i(t,·)‖_p in closed form via erf.
NormResult lp_norm_term(long stage, const Rational& t, double p, const GapFamily& gaps);

struct DistanceResult {
    double value;
    /// Bound on the contribution of stages beyond the truncation (2·4^-I/3).
    double tail_bound;
};

/// ‖f_t - f_u‖_p by piecewise midpoint quadrature, `resolution` panels per piece.
DistanceResult lp_distance(const Rational& t, const Rational& u, const Config& cfg, std::size_t resolution = 64);

enum class Role { r, tau, s };
const char* role_name(Role r);

struct WitnessPoint {
    Rational t;
    long block;
    BigInt gap;
    Role role;
    /// x whose moving centre this τ was placed on.
    std::optional<Rational> cover_x;
};

struct WitnessBlock {
    Gap gap;
    /// Coverage window [1/j, 1 - 1/j]; empty when j <= 2.
    std::optional<Interval> window;
    std::vector<Rational> cover_x;
    std::vector<Rational> tau;
};

struct WitnessSequence {
    Rational target;
    long stage;
    /// Non-Cauchy gap (1/6) 4^-i.
    double epsilon;
    std::vector<WitnessBlock> blocks;

    std::vector<WitnessPoint> points() const;
    std::vector<Rational> times() const;
};

/// Witness sequence t_n -> t for t in K: blocks (r, τ^1..τ^k, s) over gaps
/// accumulating at t, where every x in [1/j, 1 - 1/j] has some τ with
/// term(i, τ, x) > (2/3) 4^-i. `min_cover_points` > 0 caps the cover spacing
/// at 1/min_cover_points.
WitnessSequence witness(const Rational& t, const Config& cfg, long blocks, long min_cover_points = 0);

/// Cover spacing used for a gap of length l: a unit fraction <= l^p sqrt(ln(3/2)/π).
Rational cover_spacing(const Rational& length, double p);

/// Typewriter interval I_i = [i/2^k - 1, (i+1)/2^k - 1] with 2^k <= i < 2^(k+1).
Interval classic_sequence(const BigInt& i);

}  // namespace lpcurves::curve1
