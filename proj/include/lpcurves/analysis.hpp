#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpcurves/curve1.hpp"
#include "lpcurves/curve2.hpp"
#include "lpcurves/interval_set.hpp"

namespace lpcurves::analysis {

/// Worker count: hardware concurrency capped by LP_PATHOLOGY_THREADS when set.
std::size_t thread_cap();

/// Runs body(0..n-1) on up to thread_cap() threads; each index is independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

enum class Provenance { curve1, curve2, external };
const char* provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

/// Dense samples f(t_a, x_b) on strictly increasing grids in [0,1].
class FunctionTable {
public:
    FunctionTable(std::vector<double> t_grid, std::vector<double> x_grid, std::vector<double> values,
                  Provenance provenance = Provenance::external);

    /// Fills row a with fill(a, row) in parallel.
    static FunctionTable build(std::vector<double> t_grid, std::vector<double> x_grid, Provenance provenance,
                               const std::function<void(std::size_t, std::span<double>)>& fill);

    std::size_t rows() const { return t_.size(); }
    std::size_t cols() const { return x_.size(); }
    const std::vector<double>& t_grid() const { return t_; }
    const std::vector<double>& x_grid() const { return x_; }
    double at(std::size_t a, std::size_t b) const { return v_[a * x_.size() + b]; }
    std::span<const double> row(std::size_t a) const { return {v_.data() + a * x_.size(), x_.size()}; }
    std::vector<double> column(std::size_t b) const;
    Provenance provenance() const { return prov_; }

    /// Header `t\x` then the x grid, one row per t; `#` lines are comments.
    void write_csv(std::ostream& out) const;
    static FunctionTable read_csv(std::istream& in);

private:
    std::vector<double> t_;
    std::vector<double> x_;
    std::vector<double> v_;
    Provenance prov_;
};

FunctionTable curve1_table(const std::vector<Rational>& ts, const std::vector<double>& xs, const curve1::Config& cfg);
FunctionTable curve2_table(const std::vector<Rational>& ts, const std::vector<Rational>& xs, const curve2::Config& cfg);

/// max |g(x_a) - g(x_b)| over sample pairs with |x_a - x_b| < δ; xs sorted.
double oscillation(std::span<const double> xs, std::span<const double> g, double delta);
/// Same on the uniform midpoint grid (k + 1/2)/N.
double oscillation(std::span<const double> g, double delta);

struct OscillationProfile {
    std::vector<double> t_grid;
    /// Increasing; δ_n = 1/n.
    std::vector<long> ns;
    /// omega[a][k] = ω_{1/ns[k]}(f_{t_a}) over x.
    std::vector<std::vector<double>> omega;
};

OscillationProfile oscillation_profile(const FunctionTable& table, std::vector<long> ns);

struct CauchyVerdict {
    bool diverged = false;
    /// 0-based indices n < m with |v_m - v_n| > ε + guard, when diverged.
    std::size_t n = 0;
    std::size_t m = 0;
};

constexpr double kGuardBand = 1e-9;

/// Diverged if some n, m >= n0 (0-based) have |v_m - v_n| > ε + 1e-9; never
/// reports convergence.
CauchyVerdict cauchy_certificate(std::span<const double> v, double eps, std::size_t n0 = 0);

struct DivergenceResult {
    std::size_t certified = 0;
    std::size_t total = 0;
    double fraction() const { return total ? static_cast<double>(certified) / static_cast<double>(total) : 0.0; }
};

/// Fraction of xs where (value(n, x))_{n < terms} is certified non-Cauchy.
DivergenceResult divergence_measure(std::size_t terms, const std::function<double(std::size_t, double)>& value,
                                    std::span<const double> xs, double eps, std::size_t n0 = 0);
/// Curve-1 witness sequence evaluated at truncation cfg.depth.
DivergenceResult divergence_measure(const curve1::WitnessSequence& w, const curve1::Config& cfg,
                                    std::span<const double> xs, double eps);

struct EgorovStep {
    long j;
    long n;
    double eta;
    /// Grid measure of the rows removed at this step.
    double removed;
};

struct SliceResult {
    std::vector<double> t_grid;
    std::vector<std::size_t> retained;
    /// count / N_t of the removed rows.
    double removed_measure = 0;
    std::vector<EgorovStep> steps;
    /// Quantile removals per column (lusin only): column index and rows removed.
    std::vector<std::pair<std::size_t, std::size_t>> quantile;
    /// max |f(t,y) - f(t',y')| over retained neighbour pairs (lusin only).
    std::optional<double> joint_modulus;
    /// Why the continuity hypothesis fails on this table, if it does.
    std::optional<std::string> hypothesis_failure;

    /// Hull of runs of consecutive retained grid rows.
    IntervalSet hull() const;
    void write_csv(std::ostream& out) const;
    void write_summary(std::ostream& out) const;
};

/// Constructive Egorov with η_j = 2^-j and budget ε 2^-j on the rows newly
/// removed at step j; throws ProfileTooCoarse naming the failing j.
SliceResult egorov_extract(const OscillationProfile& profile, double eps, long steps,
                           const std::vector<bool>& excluded = {});

struct LusinOptions {
    /// Column subset X; empty picks a dyadic-refining subset.
    std::vector<std::size_t> columns;
    long egorov_steps = 3;
};

/// Quantile removal of t rows per column, then Egorov over x-oscillation at
/// ε/2, then the joint modulus on the retained product grid.
SliceResult lusin_slice(const FunctionTable& table, double eps, const LusinOptions& opt = {});

/// Default column subset: midpoint, quarters, eighths, ... while the budget
/// ⌈ε 2^-(n+1) N_t⌉ - 1 stays positive (empty when N_t ε/4 <= 1).
std::vector<std::size_t> dyadic_columns(std::size_t cols, std::size_t rows, double eps);

constexpr long kFourierCap = 1 << 20;

/// ∫_0^1 g(x) exp(-i n π (x - 1/2)) dx by piecewise midpoint quadrature.
std::complex<double> fourier_coeff(const std::function<double(double)>& g, long n, std::size_t resolution,
                                   std::vector<double> breakpoints = {});
std::complex<double> fourier_coeff(const curve1::Slice& slice, long n, std::size_t resolution);
std::vector<std::complex<double>> fourier_sweep(const std::vector<Rational>& ts, long n, std::size_t resolution,
                                                const curve1::Config& cfg);

/// Sampled L^p modulus: max ||f_t - f_u||_p over u = t ± δk/K, k = 1..K,
/// u in [0,1]. A single offset is not monotone in δ (u may land in K or in a
/// gap), the supremum is.
double sampled_modulus(const Rational& t, const Rational& delta, long samples, const curve1::Config& cfg,
                       std::size_t resolution = 64);

struct SobolevResult {
    double lp;
    double dx_lq;
    double total() const { return lp + dx_lq; }
};

/// ‖f_t‖_p + ‖∂_x f_t‖_q by midpoint sampling at `resolution` panels.
SobolevResult sobolev_norm(const curve1::Slice& slice, double p, double q, std::size_t resolution);

struct HolderResult {
    /// sup |f(x) - f(y)| / |x - y|^(1 - 1/q) over the pairs.
    double constant;
    /// Least-squares slope of log max|Δf| against log|Δx| over dyadic bins.
    double exponent_fit;
};

HolderResult holder_check(const curve1::Slice& slice, double q, std::span<const std::pair<double, double>> pairs);

/// ε/2 + d / η^(1/p) with η just below min(ε/2, 2 (ε / 4C)^(1/q')).
double pointwise_from_lp(double eps, double holder_constant, double q, double p, double lp_distance);

}  // namespace lpcurves::analysis
