#include "lpcurves/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "lpcurves/errors.hpp"

namespace lpcurves {

double riemann_lp(std::span<const double> samples, double p) {
    if (samples.size() < 2) throw DomainError("riemann_lp needs at least two samples");
    if (!(p >= 1)) throw DomainError("riemann_lp needs p >= 1");
    double acc = 0;
    for (double v : samples) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(samples.size()), 1.0 / p);
}

std::vector<double> midpoint_samples(const std::function<double(double)>& g, std::size_t panels) {
    std::vector<double> out(panels);
    const double h = 1.0 / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) out[k] = g((static_cast<double>(k) + 0.5) * h);
    return out;
}

QuadratureEstimate riemann_lp_estimate(const std::function<double(double)>& g, double p, std::size_t panels) {
    if (panels < 4 || panels % 2 != 0) throw DomainError("riemann_lp_estimate needs an even panel count >= 4");
    const double fine = riemann_lp(midpoint_samples(g, panels), p);
    const double coarse = riemann_lp(midpoint_samples(g, panels / 2), p);
    return {fine, std::abs(fine - coarse) / 3.0};
}

double piecewise_integral(const std::function<double(double)>& g, std::vector<double> breakpoints, double a,
                          double b, std::size_t panels) {
    if (!(a <= b)) throw DomainError("piecewise_integral needs a <= b");
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    for (auto& v : breakpoints) v = std::clamp(v, a, b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    double total = 0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const double lo = breakpoints[k];
        const double h = (breakpoints[k + 1] - lo) / static_cast<double>(panels);
        double piece = 0;
        for (std::size_t m = 0; m < panels; ++m) piece += g(lo + (static_cast<double>(m) + 0.5) * h);
        total += piece * h;
    }
    return total;
}

}  // namespace lpcurves
