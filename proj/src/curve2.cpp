#include "lpcurves/curve2.hpp"

#include <cmath>
#include <numeric>

#include "lpcurves/errors.hpp"

namespace lpcurves::curve2 {

namespace {

Rational pow4_neg(const BigInt& e) {
    if (!e.fits_slong_p()) throw DomainError("window scale exponent too large");
    return Rational::pow2(-2 * e.get_si());
}

Rational as_rational(const BigInt& v) { return Rational(v, BigInt(1)); }

}  // namespace

void Config::validate() const {
    if (!(p >= 1) || !std::isfinite(p)) throw DomainError("curve2 needs 1 <= p < inf");
    if (max_m < 1) throw DomainError("curve2 needs max_m >= 1");
    if (enumeration != "denominator-numerator")
        throw DomainError("unknown rational enumeration '" + enumeration + "'");
    if (scan_budget < 1) throw DomainError("scan budget must be positive");
}

std::pair<long, Rational> RationalEnumerator::next() {
    for (;;) {
        ++num_;
        if (num_ > den_) {
            ++den_;
            num_ = 1;
        }
        if (std::gcd(num_, den_) == 1) return {++m_, Rational(num_, den_)};
    }
}

Rational q(long m) {
    if (m < 1) throw DomainError("enumeration index must be >= 1");
    RationalEnumerator e;
    for (;;) {
        auto [idx, v] = e.next();
        if (idx == m) return v;
    }
}

BigInt r_of(const Rational& qm) { return (Rational(1) / qm).ceil(); }
BigInt r_of(long m) { return r_of(q(m)); }

Rational s(const Rational& qm, const BigInt& k) {
    if (k < 1) throw DomainError("partition index k must be >= 1");
    return qm - Rational(BigInt(1), k + r_of(qm));
}

Rational s(long m, const BigInt& k) { return s(q(m), k); }

std::optional<BigInt> locate_k(const Rational& qm, const Rational& t) {
    if (t < Rational(0) || Rational(1) < t) throw DomainError("time outside [0,1]: " + t.str());
    if (qm <= t) return std::nullopt;
    // t in [s_k, s_{k+1}) <=> k + r <= 1/(q - t) < k + r + 1
    const BigInt k = (Rational(1) / (qm - t)).floor() - r_of(qm);
    if (k < 1) return std::nullopt;
    return k;
}

std::optional<BigInt> locate_k(long m, const Rational& t) { return locate_k(q(m), t); }

Interval window(const Rational& qm, long m, const BigInt& k, const Rational& t) {
    const Rational lo = s(qm, k);
    const Rational hi = s(qm, k + 1);
    if (t < lo || hi < t)
        throw DomainError("time " + t.str() + " outside S_{" + std::to_string(m) + "," + k.get_str() + "}");
    const Rational mu = hi - lo;
    const Rational scale = pow4_neg(k + m);
    const Rational u = (t - lo) / mu;
    const Rational b = max(Rational(0), u - (hi - t) * scale);
    const Rational c = min(Rational(1), u + (t - lo) * scale);
    return Interval(b, c);
}

Interval window(long m, const BigInt& k, const Rational& t) { return window(q(m), m, k, t); }

double term(long m, const BigInt& k, const Rational& t, const Rational& x) {
    const Rational qm = q(m);
    auto hit = locate_k(qm, t);
    if (!hit || *hit != k) return 0;
    return window(qm, m, k, t).contains(x) ? std::ldexp(1.0, static_cast<int>(m)) : 0.0;
}

EvalResult eval(const Rational& t, const Rational& x, const Config& cfg) {
    cfg.validate();
    EvalResult out{0, {}, Rational::pow2(-2 * (cfg.max_m + 1)) / Rational(3)};
    RationalEnumerator e;
    for (long m = 1; m <= cfg.max_m; ++m) {
        const Rational qm = e.next().second;
        auto k = locate_k(qm, t);
        if (!k) continue;
        if (window(qm, m, *k, t).contains(x)) {
            out.value += std::ldexp(1.0, static_cast<int>(m));
            out.active.push_back({m, *k});
        }
    }
    return out;
}

double lp_norm_term(long m, const BigInt& k, const Rational& t, double p) {
    if (!(p >= 1)) throw DomainError("lp_norm_term needs p >= 1");
    const Rational len = window(m, k, t).length();
    if (len.sign() == 0) return 0;
    return std::ldexp(std::exp(len.log() / p), static_cast<int>(m));
}

Rational density_radius(const IntervalSet& T, const Rational& t, const Rational& gamma) {
    if (!(Rational(0) < gamma && gamma < Rational(1))) throw DomainError("density ratio must lie in (0,1)");
    auto comp = T.interior_component(t);
    if (!comp) throw UnsupportedError("time " + t.str() + " is not interior to a component of T");
    Rational rho = min(t - comp->lo, t);
    auto unit_fraction = [](const Rational& v) { return v.num() == 1; };
    if (rho == t || unit_fraction(rho)) {
        Rational delta(1, 1000);
        while (rho - delta <= Rational(0) || unit_fraction(rho - delta)) delta /= Rational(2);
        rho -= delta;
    }
    if (T.intersect(Interval(t - rho, t)).measure() < gamma * rho)
        throw UnsupportedError("density radius check failed at " + t.str());
    return rho;
}

BigInt Stage::time_count() const {
    BigInt n = 0;
    for (const auto& run : runs) n += run.count;
    return n;
}

BigInt Witness2Trace::time_count() const {
    BigInt n = 0;
    for (const auto& st : stages) n += st.time_count();
    return n;
}

std::vector<Rational> Witness2Trace::flatten(std::size_t limit) const {
    const BigInt total = time_count();
    if (total > BigInt(static_cast<unsigned long>(limit)))
        throw SizingError("witness has " + total.get_str() + " times, above the flatten limit " +
                          std::to_string(limit));
    std::vector<Rational> out;
    for (const auto& st : stages)
        for (const auto& run : st.runs)
            for (BigInt n = 0; n < run.count; ++n) out.push_back(run.at(n));
    return out;
}

namespace {

// Window kinematics of one S_{m,k}: b(r) = max(0, lin_b(r)), c(r) = min(1, lin_c(r)).
struct Kinematics {
    Rational lo, hi, mu, scale;

    Rational lin_b(const Rational& r) const { return (r - lo) / mu - (hi - r) * scale; }
    Rational lin_c(const Rational& r) const { return (r - lo) / mu + (r - lo) * scale; }
    Rational b(const Rational& r) const { return max(Rational(0), lin_b(r)); }
    Rational c(const Rational& r) const { return min(Rational(1), lin_c(r)); }
    Rational speed() const { return Rational(1) / mu + scale; }
    Rational length() const { return mu * scale; }
    /// largest r with lin_b(r) <= x
    Rational solve_b(const Rational& x) const { return (x + lo / mu + hi * scale) / speed(); }
};

Kinematics kinematics(const Stage& st) {
    const Rational mu = st.S.hi - st.S.lo;
    return Kinematics{st.S.lo, st.S.hi, mu, pow4_neg(st.k + st.m)};
}

BigInt ceil_nonneg(const Rational& v) { return v.sign() <= 0 ? BigInt(0) : v.ceil(); }

void sweep(Stage& st, const IntervalSet& pieces, const Rational& target) {
    const Kinematics kin = kinematics(st);
    const Rational L = kin.length();
    const Rational delta = L / kin.speed();
    Rational frontier = -1;
    Rational covered = 0;
    std::vector<Interval> cov;

    for (const auto& comp : pieces.components()) {
        if (covered >= target) break;
        if (!(comp.lo < comp.hi)) continue;
        const Rational c_end = kin.c(comp.hi);
        if (c_end <= frontier) continue;
        const Rational start = max(kin.b(comp.lo), frontier);
        const Rational r0 = min(comp.hi, max(comp.lo, kin.solve_b(start)));
        const Rational c0 = kin.c(r0);

        const BigInt n_need = ceil_nonneg((target - covered - (c0 - start)) / L);
        const BigInt n_beta = ((comp.hi - r0) / delta).floor();
        const BigInt n_clip = ceil_nonneg((Rational(1) - c0) / L);
        BigInt n_end = n_need;
        if (n_beta < n_end) n_end = n_beta;
        if (n_clip < n_end) n_end = n_clip;

        st.runs.push_back(Run{r0, delta, n_end + 1});
        Rational end = min(Rational(1), c0 + L * as_rational(n_end));
        covered += end - start;
        cov.emplace_back(start, end);
        frontier = end;

        if (covered < target && end < c_end) {
            // the last window before comp.hi overlaps the one at comp.hi
            st.runs.push_back(Run{comp.hi, Rational(0), BigInt(1)});
            covered += c_end - frontier;
            cov.emplace_back(frontier, c_end);
            frontier = c_end;
        }
    }
    st.covered = IntervalSet(std::move(cov));
    st.covered_measure = st.covered.measure();
}

}  // namespace

Witness2Trace witness(const IntervalSet& T, const Rational& t, long stages, const Config& cfg) {
    cfg.validate();
    if (stages < 1) throw DomainError("witness needs at least one stage");
    if (!T.interior_component(t)) throw UnsupportedError("time " + t.str() + " is not interior to T");

    Witness2Trace trace{T, t, {}};
    RationalEnumerator enumerator;
    long m_prev = 0;
    for (long i = 1; i <= stages; ++i) {
        const Rational gamma = Rational(1) - Rational::pow2(-(i + 1));
        const Rational rho = density_radius(T, t, gamma);
        const BigInt l = (Rational(1) / rho).floor();
        const Rational inv_l1(BigInt(1), l + 1);
        const Rational lower = t - rho + inv_l1;

        long m = 0;
        Rational qm;
        for (long scanned = 0;; ++scanned) {
            if (scanned >= cfg.scan_budget)
                throw InfeasibleError("stage " + std::to_string(i) + " infeasible at budget: no q_m found after m=" +
                                      std::to_string(m_prev + scanned));
            auto [idx, v] = enumerator.next();
            if (lower < v && v < t && t - v < gamma * inv_l1) {
                m = idx;
                qm = v;
                break;
            }
        }

        const BigInt r = r_of(qm);
        BigInt k = l + 1 - r;
        if (k < 1) k = 1;
        const Rational need = gamma * gamma;
        std::optional<Stage> chosen;
        for (long scanned = 0; scanned < cfg.scan_budget; ++scanned, ++k) {
            const Interval S(s(qm, k), s(qm, k + 1));
            const Rational mu = S.length();
            const Rational dens = T.intersect(S).measure() / mu;
            if (need <= dens) {
                chosen = Stage{i, gamma, rho, l, m, qm, r, k, S, dens, {}, 0, {}, 0, {}};
                break;
            }
        }
        if (!chosen)
            throw InfeasibleError("stage " + std::to_string(i) + " infeasible at budget: no dense S_{m,k}");

        Stage& st = *chosen;
        const IntervalSet pieces = T.intersect(st.S);
        const Kinematics kin = kinematics(st);
        std::vector<Interval> reach;
        for (const auto& comp : pieces.components())
            if (comp.lo < comp.hi) reach.emplace_back(kin.b(comp.lo), kin.c(comp.hi));
        st.coverable = IntervalSet(std::move(reach));
        st.coverable_measure = st.coverable.measure();
        sweep(st, pieces, gamma * st.coverable_measure);

        trace.stages.push_back(std::move(st));
        m_prev = m;
    }
    return trace;
}

IntervalSet window_union(const Stage& stage, std::size_t explicit_limit) {
    const Kinematics kin = kinematics(stage);
    std::vector<Interval> parts;
    auto win = [&](const Rational& r) { return window(stage.qm, stage.m, stage.k, r); };
    for (const auto& run : stage.runs) {
        if (run.count <= BigInt(static_cast<unsigned long>(explicit_limit))) {
            for (BigInt n = 0; n < run.count; ++n) parts.push_back(win(run.at(n)));
            continue;
        }
        // Large runs: windows are linear in n, so abutment at both ends covers every pair.
        const Interval w0 = win(run.at(0)), w1 = win(run.at(1));
        const Interval wp = win(run.at(run.count - 2)), wl = win(run.last());
        if (!(w1.lo <= w0.hi) || !(wl.lo <= wp.hi))
            throw DomainError("run windows of stage " + std::to_string(stage.index) + " do not abut");
        parts.emplace_back(w0.lo, wl.hi);
    }
    (void)kin;
    return IntervalSet(std::move(parts));
}

double threshold_coverage(const Stage& stage, const std::vector<Rational>& xs) {
    if (xs.empty()) return 0;
    const Kinematics kin = kinematics(stage);
    const Rational L = kin.length();
    Config cfg;
    cfg.max_m = stage.m;
    const double threshold = std::ldexp(1.0, static_cast<int>(stage.m));
    std::size_t hits = 0;
    for (const auto& x : xs) {
        bool hit = false;
        for (const auto& run : stage.runs) {
            // window n ends at c(first) + n L while unclipped
            BigInt n = run.step.sign() == 0 ? BigInt(0) : ceil_nonneg((x - kin.c(run.first)) / L);
            for (BigInt cand = n - 1; cand <= n + 1 && !hit; ++cand) {
                if (cand < 0 || cand >= run.count) continue;
                hit = eval(run.at(cand), x, cfg).value >= threshold;
            }
            if (hit) break;
        }
        if (hit) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(xs.size());
}

}  // namespace lpcurves::curve2
