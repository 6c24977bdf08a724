#include "lpcurves/curve1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpcurves/errors.hpp"
#include "lpcurves/quadrature.hpp"

namespace lpcurves::curve1 {

namespace {

constexpr double kPi = std::numbers::pi;
// max cover points per block before witness construction gives up
constexpr double kMaxCoverPoints = 5e7;
// deeper stages scanned for the derivative tail
constexpr long kTailScan = 64;

double pow4_neg(long i) { return std::ldexp(1.0, static_cast<int>(-2 * i)); }

std::optional<StageTerm> stage_term(long stage, const Rational& t, double p, const GapFamily& gaps) {
    auto g = gaps.locate(stage, t);
    if (!g) return std::nullopt;
    StageTerm st{stage, *g, phi(stage, t, gaps), Rational(), 0, 0, 0, 0};
    const Rational l = g->length();
    st.center = (t - g->r) / l;
    st.center_d = st.center.to_double();
    const double log_l = l.log();
    st.width = std::exp(p * log_l);
    st.inv_width = std::exp(-p * log_l);
    st.weight = pow4_neg(stage) * st.phi.to_double();
    return st;
}

// exp(-π z^2) with z = (x - c)/l^p, robust to an infinite inverse width.
double bump(const StageTerm& st, double x) {
    const double d = x - st.center_d;
    if (d == 0) return 1.0;
    const double z = d * st.inv_width;
    return std::exp(-kPi * z * z);
}

double term_value(const StageTerm& st, double x) {
    if (x < 0 || x > 1) return 0;
    return st.weight * bump(st, x);
}

double term_dx(const StageTerm& st, double x) {
    if (x < 0 || x > 1) return 0;
    const double d = x - st.center_d;
    if (d == 0) return 0;
    const double z = d * st.inv_width;
    return -2.0 * kPi * z * st.inv_width * st.weight * std::exp(-kPi * z * z);
}

}  // namespace

void Config::validate() const {
    if (!(p >= 1) || !std::isfinite(p)) throw DomainError("curve1 needs 1 <= p < inf");
    if (depth < 1) throw DomainError("curve1 truncation depth must be >= 1");
    if (auto m = gaps.max_stage(); m && depth > *m)
        throw DomainError("truncation depth exceeds the explicit gap family's stages");
}

double truncation_tail(long depth) { return pow4_neg(depth) / 3.0; }

Rational phi(long stage, const Rational& t, const GapFamily& gaps) {
    auto g = gaps.locate(stage, t);
    if (!g) return Rational(0);
    const Rational l = g->length();
    const Rational j(g->index, BigInt(1));
    const Rational ramp = l / (Rational(2) * j);
    const Rational slope = Rational(2) * j / l;
    if (t < g->r + ramp) return slope * (t - g->r);
    if (t <= g->s - ramp) return Rational(1);
    return slope * (g->s - t);
}

double gamma(long stage, const Rational& t, double x, double p, const GapFamily& gaps) {
    auto st = stage_term(stage, t, p, gaps);
    if (!st || x < 0 || x > 1) return 0;
    return pow4_neg(stage) * bump(*st, x);
}

double term(long stage, const Rational& t, double x, const Config& cfg) {
    auto st = stage_term(stage, t, cfg.p, cfg.gaps);
    return st ? term_value(*st, x) : 0.0;
}

Slice::Slice(const Rational& t, const Config& cfg) : t_(t), depth_(cfg.depth) {
    cfg.validate();
    if (t < Rational(0) || Rational(1) < t) throw DomainError("time outside [0,1]: " + t.str());
    for (long i = 1; i <= cfg.depth; ++i) {
        auto st = stage_term(i, t, cfg.p, cfg.gaps);
        // Gaps are nested: once t is in K_i it stays in every later K.
        if (!st) break;
        if (st->phi.sign() != 0) terms_.push_back(std::move(*st));
    }
}

double Slice::value(double x) const {
    double v = 0;
    for (const auto& st : terms_) v += term_value(st, x);
    return v;
}

double Slice::dx(double x) const {
    double v = 0;
    for (const auto& st : terms_) v += term_dx(st, x);
    return v;
}

std::vector<double> Slice::features() const {
    std::vector<double> out;
    for (const auto& st : terms_) {
        for (int m = -8; m <= 8; ++m) {
            const double b = st.center_d + m * st.width;
            if (b > 0 && b < 1) out.push_back(b);
        }
    }
    return out;
}

EvalResult eval(const Rational& t, double x, const Config& cfg) {
    Slice s(t, cfg);
    return {s.value(x), s.tail_bound(), static_cast<long>(s.terms().size())};
}

EvalResult dx_eval(const Rational& t, double x, const Config& cfg) {
    Slice s(t, cfg);
    double tail = 0;
    const double majorant = std::sqrt(2.0 * kPi / std::exp(1.0));
    long i = cfg.depth + 1;
    if (!cfg.gaps.max_stage() || *cfg.gaps.max_stage() > cfg.depth) {
        for (; i <= cfg.depth + kTailScan; ++i) {
            if (auto m = cfg.gaps.max_stage(); m && i > *m) break;
            auto st = stage_term(i, t, cfg.p, cfg.gaps);
            if (!st) break;
            tail += st->weight * majorant * st->inv_width;
        }
        if (i > cfg.depth + kTailScan) tail = std::numeric_limits<double>::infinity();
    }
    return {s.dx(x), tail, static_cast<long>(s.terms().size())};
}

NormResult lp_norm_term(long stage, const Rational& t, double p, const GapFamily& gaps) {
    if (!(p >= 1)) throw DomainError("lp_norm_term needs p >= 1");
    auto st = stage_term(stage, t, p, gaps);
    if (!st || st->weight == 0) return {0, 0};
    if (!std::isfinite(st->inv_width)) return {0, st->weight};
    // ∫_0^1 exp(-pπ (x-c)^2 / l^2p) dx = l^p / (2 sqrt p) [erf(a(1-c)) + erf(a c)], a = sqrt(pπ)/l^p
    const double a = std::sqrt(p * kPi) * st->inv_width;
    const double c = st->center_d;
    const double integral = st->width / (2.0 * std::sqrt(p)) * (std::erf(a * (1.0 - c)) + std::erf(a * c));
    const double value = st->weight * std::pow(integral, 1.0 / p);
    return {value, 16 * std::numeric_limits<double>::epsilon() * value};
}

DistanceResult lp_distance(const Rational& t, const Rational& u, const Config& cfg, std::size_t resolution) {
    if (resolution < 1) throw DomainError("lp_distance needs resolution >= 1");
    const Slice a(t, cfg);
    const Slice b(u, cfg);
    auto features = a.features();
    const auto fb = b.features();
    features.insert(features.end(), fb.begin(), fb.end());
    const double p = cfg.p;
    const double integral = piecewise_integral(
        [&](double x) { return std::pow(std::abs(a.value(x) - b.value(x)), p); }, features, 0.0, 1.0,
        resolution);
    return {std::pow(integral, 1.0 / p), 2.0 * truncation_tail(cfg.depth)};
}

const char* role_name(Role r) {
    switch (r) {
        case Role::r: return "r";
        case Role::tau: return "tau";
        case Role::s: return "s";
    }
    return "?";
}

std::vector<WitnessPoint> WitnessSequence::points() const {
    std::vector<WitnessPoint> out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        const long n = static_cast<long>(b + 1);
        out.push_back({blk.gap.r, n, blk.gap.index, Role::r, std::nullopt});
        for (std::size_t k = 0; k < blk.tau.size(); ++k)
            out.push_back({blk.tau[k], n, blk.gap.index, Role::tau, blk.cover_x[k]});
        out.push_back({blk.gap.s, n, blk.gap.index, Role::s, std::nullopt});
    }
    return out;
}

std::vector<Rational> WitnessSequence::times() const {
    std::vector<Rational> out;
    for (const auto& p : points()) out.push_back(p.t);
    return out;
}

Rational cover_spacing(const Rational& length, double p) {
    const double half_width = std::exp(p * length.log()) * std::sqrt(std::log(1.5) / kPi);
    const double inv = std::ceil(1.0 / half_width);
    if (!std::isfinite(inv) || inv > 1e18) throw InfeasibleError("cover spacing below representable range");
    return Rational(BigInt(1), BigInt(static_cast<unsigned long>(inv)));
}

WitnessSequence witness(const Rational& t, const Config& cfg, long blocks, long min_cover_points) {
    cfg.validate();
    if (blocks < 1) throw DomainError("witness needs at least one block");
    const auto stage = cfg.gaps.first_stage_containing(t, cfg.depth);
    if (!stage)
        throw NotInKError(t.str() + " is not in K_i for any stage i <= " + std::to_string(cfg.depth));

    WitnessSequence w{t, *stage, pow4_neg(*stage) / 6.0, {}};
    for (auto& g : cfg.gaps.accumulating(*stage, t, static_cast<std::size_t>(blocks))) {
        WitnessBlock blk{g, std::nullopt, {}, {}};
        const Rational j(g.index, BigInt(1));
        const Rational lo = Rational(1) / j;
        const Rational hi = Rational(1) - lo;
        if (lo <= hi) {
            blk.window = Interval(lo, hi);
            const Rational l = g.length();
            Rational h = cover_spacing(l, cfg.p);
            if (min_cover_points > 0) h = min(h, Rational(1, min_cover_points));
            const double count = ((hi - lo) / h).to_double();
            if (count > kMaxCoverPoints)
                throw InfeasibleError("block over gap " + g.index.get_str() + " needs ~" +
                                      std::to_string(static_cast<long long>(count)) + " cover points");
            for (Rational x = lo;; x += h) {
                const Rational xc = min(x, hi);
                blk.cover_x.push_back(xc);
                blk.tau.push_back(g.r + xc * l);
                if (hi <= x) break;
            }
        }
        w.blocks.push_back(std::move(blk));
    }
    return w;
}

Interval classic_sequence(const BigInt& i) {
    if (i < 1) throw DomainError("classic_sequence index must be >= 1");
    const long k = static_cast<long>(bit_length(i)) - 1;
    const Rational scale = Rational::pow2(-k);
    const Rational a(i, BigInt(1));
    return Interval(a * scale - Rational(1), (a + Rational(1)) * scale - Rational(1));
}

}  // namespace lpcurves::curve1
