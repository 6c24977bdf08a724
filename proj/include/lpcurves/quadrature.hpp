#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lpcurves {

/// Composite midpoint (∫_0^1 |g|^p)^(1/p) from samples at the panel midpoints
/// (k + 1/2)/N. Needs at least two samples and p >= 1.
double riemann_lp(std::span<const double> samples, double p);

/// Samples g at the N panel midpoints of [0,1].
std::vector<double> midpoint_samples(const std::function<double(double)>& g, std::size_t panels);

struct QuadratureEstimate {
    double value;
    /// |I_N - I_{N/2}| / 3; bounds |I_{2N} - I_N| for smooth integrands.
    double richardson;
};

/// riemann_lp at N panels with a Richardson-style error estimate.
QuadratureEstimate riemann_lp_estimate(const std::function<double(double)>& g, double p, std::size_t panels);

/// ∫ over [a,b] of g by composite midpoint on each piece between sorted
/// breakpoints (clipped to [a,b]), `panels` panels per piece.
double piecewise_integral(const std::function<double(double)>& g, std::vector<double> breakpoints, double a,
                          double b, std::size_t panels);

}  // namespace lpcurves
