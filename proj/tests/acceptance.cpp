// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "lpcurves/analysis.hpp"
#include "lpcurves/errors.hpp"
#include "oracles.hpp"

using namespace lpcurves;
namespace an = lpcurves::analysis;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;
int ran = 0;
std::vector<int> only;  // criterion ids from argv; empty runs all

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) return;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = check();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.ok) ++failures;
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (r.ok ? "PASS" : "FAIL") << ' ' << id << ' ' << name << " (" << t << "): " << r.detail << std::endl;
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const GapFamily& gaps() {
    static const GapFamily g = GapFamily::canonical();
    return g;
}

curve1::Config c1(double p, long depth) {
    curve1::Config cfg;
    cfg.p = p;
    cfg.depth = depth;
    return cfg;
}

// Random rational strictly inside a random stage-i gap with index <= jmax.
Rational in_gap(std::mt19937_64& rng, long stage, long jmax) {
    const Gap g = gaps().gap(stage, BigInt(1 + static_cast<long>(rng() % static_cast<unsigned long>(jmax))));
    const Rational u(1 + static_cast<long>(rng() % 9999), 10000);
    return g.r + u * g.length();
}

std::vector<double> midpoints(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    return out;
}

Outcome term_bounds() {
    double worst = -1;
    for (double p : {1.0, 2.0})
        for (long i = 1; i <= 8; ++i) {
            const auto cfg = c1(p, 8);
            const double bound = std::ldexp(1.0, static_cast<int>(-2 * i));
            for (long a = 0; a < 200; ++a) {
                const Rational t(a, 199);
                for (long b = 0; b < 200; ++b) {
                    const double v = curve1::term(i, t, static_cast<double>(b) / 199.0, cfg);
                    worst = std::max(worst, v - bound);
                }
            }
        }
    return {worst <= 1e-12, "max(term - 4^-i) = " + num(worst)};
}

// Riemann oracle on the Gaussian's window c ± 12 l^p, clipped to [0,1], with
// the integrand written out directly from φ and the gap geometry. It runs in
// z = (x - c)/l^p since l^p can be far below the spacing of doubles near c.
double riemann_term_norm(long i, const Rational& t, double p) {
    const auto g = *gaps().locate(i, t);
    const long double weight = std::ldexp(1.0L, static_cast<int>(-2 * i)) * curve1::phi(i, t, gaps()).to_double();
    const long double log_w = p * static_cast<long double>(g.length().log());
    const Rational c = (t - g.r) / g.length();
    // (0 - c)/w and (1 - c)/w, clipped to ±12
    const long double zlo = std::max(-12.0L, -c.to_double() * std::exp(-log_w));
    const long double zhi = std::min(12.0L, (Rational(1) - c).to_double() * std::exp(-log_w));
    if (!(zhi > zlo) || weight == 0) return 0;
    const std::size_t N = 1 << 16;
    const long double h = (zhi - zlo) / N;
    long double acc = 0;
    for (std::size_t k = 0; k < N; ++k) {
        const long double z = zlo + (k + 0.5L) * h;
        acc += std::pow(weight * std::exp(-static_cast<long double>(M_PI) * z * z), static_cast<long double>(p));
    }
    return static_cast<double>(std::exp((std::log(acc * h) + log_w) / p));
}

Outcome norm_bounds() {
    std::mt19937_64 rng(2);
    double worst_bound = -1, worst_oracle = 0;
    std::string worst_at;
    std::size_t checked = 0;
    for (long i = 1; i <= 6; ++i)
        for (double p : {1.0, 2.0, 3.0})
            for (int n = 0; n < 100; ++n) {
                // half the samples land in stage-i gaps, the rest anywhere
                const Rational t = n % 2 ? in_gap(rng, i, 64) : Rational(static_cast<long>(rng() % 1000001), 1000000);
                const auto r = curve1::lp_norm_term(i, t, p, gaps());
                worst_bound = std::max(worst_bound, r.value - std::ldexp(1.0, static_cast<int>(-2 * i)));
                const double oracle = gaps().locate(i, t) ? riemann_term_norm(i, t, p) : 0.0;
                if (std::abs(r.value - oracle) > worst_oracle) {
                    worst_oracle = std::abs(r.value - oracle);
                    worst_at = "i=" + std::to_string(i) + " p=" + num(p) + " t=" + t.str();
                }
                ++checked;
            }
    return {worst_bound <= 1e-10 && worst_oracle <= 1e-8,
            std::to_string(checked) + " samples, max(norm - 4^-i) = " + num(worst_bound) +
                ", max |closed - oracle| = " + num(worst_oracle) + " at " + worst_at};
}

Outcome non_cauchy() {
    std::string detail;
    bool ok = true;
    const double eps = 1.0 / 24;
    for (long tv : {0L, 1L}) {
        const auto cfg = c1(1.0, 6);
        const auto w = curve1::witness(Rational(tv), cfg, 4);
        const double lo = (Rational(BigInt(1), w.blocks.back().gap.index)).to_double();
        std::vector<double> xs(1000);
        for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = lo + (1 - 2 * lo) * static_cast<double>(k) / 999.0;
        const auto r = an::divergence_measure(w, cfg, xs, eps);
        ok &= r.fraction() >= 0.99;
        detail += "t=" + std::to_string(tv) + " fraction " + num(r.fraction()) + " (" + std::to_string(r.certified) +
                  "/" + std::to_string(r.total) + ") ";
    }
    return {ok, detail + "at eps 1/24"};
}

Outcome modulus() {
    std::mt19937_64 rng(4);
    std::vector<std::pair<std::string, Rational>> ts;
    for (int k = 0; k < 4; ++k) ts.emplace_back("interior", in_gap(rng, 1, 15));
    for (int k = 0; k < 3; ++k) {
        const Gap g = gaps().gap(1, BigInt(1 + static_cast<long>(rng() % 15)));
        ts.emplace_back("endpoint", k % 2 ? g.r : g.s);
    }
    ts.emplace_back("K", Rational(0));
    ts.emplace_back("K", Rational(1));
    while (ts.size() < 10) {
        const Rational t(static_cast<long>(rng() % 1000000), 1000000);
        if (!gaps().locate(1, t)) ts.emplace_back("K", t);
    }
    const auto cfg = c1(1.0, 6);
    const std::vector<Rational> deltas{Rational(1, 10), Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
    double worst = -1;
    std::string at;
    for (const auto& [kind, t] : ts) {
        double prev = INFINITY;
        for (const auto& d : deltas) {
            const double v = an::sampled_modulus(t, d, 8, cfg);
            if (std::isfinite(prev) && v - prev > worst) {
                worst = v - prev;
                at = kind + " t=" + t.str() + " delta=" + d.str() + " " + num(prev) + " -> " + num(v);
            }
            prev = v;
        }
    }
    return {worst <= 1e-3, "sup over 16 offsets at 10 times (4 interior, 3 endpoint, 3 in K), max increase " + num(worst) + " at " + at};
}

Outcome curve2_norm_sweep() {
    std::size_t checked = 0;
    std::vector<std::string> flags;
    for (double p : {1.0, 2.0})
        for (long m = 1; m <= 8; ++m) {
            const Rational qm = curve2::q(m);
            for (long k = 1; k <= 8; ++k) {
                const Rational lo = curve2::s(qm, BigInt(k)), hi = curve2::s(qm, BigInt(k + 1));
                for (long a = 0; a < 50; ++a) {
                    const Rational t = lo + (hi - lo) * Rational(2 * a + 1, 100);
                    const double v = curve2::lp_norm_term(m, BigInt(k), t, p);
                    ++checked;
                    if (v > std::ldexp(1.0, static_cast<int>(-(m + k))))
                        flags.push_back("(" + std::to_string(m) + "," + std::to_string(k) + "," + num(p) + "," +
                                        t.str() + ")");
                }
            }
        }
    // the criterion accepts either a clean sweep or an emitted flag list
    std::string detail = std::to_string(checked) + " checked, " + std::to_string(flags.size()) + " flagged";
    if (!flags.empty()) {
        std::ofstream f("curve2_norm_flags.txt");
        f << "# m,k,p,t with ||f^(m,k)(t,.)||_p > 2^-(m+k)\n";
        for (const auto& s : flags) f << s << '\n';
        detail += " (first " + flags.front() + ", full list in curve2_norm_flags.txt)";
    }
    return {true, detail};
}

bool times_in(const curve2::Witness2Trace& tr, const IntervalSet& T) {
    // T is a union of intervals and runs are progressions; a run inside one
    // component has both ends there
    for (const auto& st : tr.stages)
        for (const auto& run : st.runs) {
            if (!T.contains(run.first) || !T.contains(run.last())) return false;
            const auto comp = T.interior_component(run.first);
            if (comp && !comp->contains(run.last())) return false;
        }
    return true;
}

Outcome witness2_unit() {
    const IntervalSet T = IntervalSet::unit();
    const auto tr = curve2::witness(T, Rational(1, 2), 3, curve2::Config{});
    std::vector<Rational> xs;
    for (long k = 0; k < 1000; ++k) xs.emplace_back(2 * k + 1, 2000);
    bool ok = tr.stages.size() == 3 && times_in(tr, T);
    std::string detail;
    for (const auto& st : tr.stages) {
        const Rational g = Rational(1) - Rational::pow2(-(st.index + 1));
        const bool cert = st.covered_measure >= g * g * g;
        const bool same = curve2::window_union(st) == st.covered;
        const double f = curve2::threshold_coverage(st, xs);
        const bool near = std::abs(f - st.covered_measure.to_double()) <= 1.0 / 1000;
        ok &= cert && same && near;
        detail += "stage " + std::to_string(st.index) + ": covered " + st.covered_measure.str() + " >= " +
                  (g * g * g).str() + (cert ? "" : " NO") + ", grid " + num(f) + "; ";
    }
    return {ok, detail + "times " + tr.time_count().get_str() + " all in T"};
}

Outcome witness2_subset() {
    const IntervalSet T({Interval{Rational(3, 10), Rational(3, 5)}});
    const auto tr = curve2::witness(T, Rational(9, 20), 1, curve2::Config{});
    const auto& st = tr.stages.at(0);
    const bool ok = times_in(tr, T) && st.certified() && curve2::window_union(st) == st.covered;
    return {ok, "m=" + std::to_string(st.m) + ", " + st.time_count().get_str() + " times in T, covered " +
                    st.covered_measure.str()};
}

Outcome egorov() {
    const double eps = 0.25;
    const std::size_t rows = 256;
    // 16 of 256 rows = ε/4 oscillate at every scale; the rest are 1/n-continuous
    std::mt19937_64 rng(8);
    std::vector<std::size_t> bad;
    while (bad.size() < 16) {
        const std::size_t a = rng() % rows;
        if (std::find(bad.begin(), bad.end(), a) == bad.end()) bad.push_back(a);
    }
    std::sort(bad.begin(), bad.end());
    an::OscillationProfile prof{midpoints(rows), {}, std::vector<std::vector<double>>(rows)};
    for (long n = 1; n <= 64; ++n) prof.ns.push_back(n);
    for (std::size_t a = 0; a < rows; ++a)
        for (long n : prof.ns)
            prof.omega[a].push_back(std::binary_search(bad.begin(), bad.end(), a) ? 1.0 : 1.0 / static_cast<double>(n));
    const auto res = an::egorov_extract(prof, eps, 4);
    std::vector<std::size_t> removed;
    for (std::size_t a = 0, r = 0; a < rows; ++a) {
        if (r < res.retained.size() && res.retained[r] == a) ++r;
        else removed.push_back(a);
    }
    bool ok = removed == bad && res.removed_measure < eps;

    std::size_t agree = 0;
    const int trials = 300;
    for (int trial = 0; trial < trials; ++trial) {
        an::OscillationProfile p{midpoints(8), {1, 2, 3, 4, 6, 8}, std::vector<std::vector<double>>(8)};
        for (auto& row : p.omega) {
            double v = static_cast<double>(rng() % 1000) / 500.0;
            for (std::size_t k = 0; k < p.ns.size(); ++k) {
                row.push_back(v);
                v *= static_cast<double>(rng() % 1000) / 1000.0;
            }
        }
        const double e = 0.3 + static_cast<double>(rng() % 60) / 100.0;
        const auto want = oracle::egorov(p, e, 3);
        try {
            const auto got = an::egorov_extract(p, e, 3);
            agree += want && got.retained == *want;
        } catch (const ProfileTooCoarse&) {
            agree += !want;
        }
    }
    ok &= agree == static_cast<std::size_t>(trials);
    return {ok, "removed " + std::to_string(removed.size()) + " rows (planted 16), measure " +
                    num(res.removed_measure) + "; oracle agreement " + std::to_string(agree) + "/" +
                    std::to_string(trials)};
}

an::FunctionTable curve1_gap_table(std::size_t n) {
    const Gap g = gaps().gap(1, BigInt(1));
    std::vector<Rational> ts;
    for (std::size_t a = 0; a < n; ++a)
        ts.push_back(g.r + g.length() * Rational(static_cast<long>(2 * a + 1), static_cast<long>(2 * n)));
    return an::curve1_table(ts, midpoints(n), c1(1.0, 1));
}

Outcome lusin() {
    const double eps = 0.05;
    std::string detail;
    bool ok = true;
    double prev = INFINITY;
    for (std::size_t n : {64, 128, 256}) {
        const auto res = an::lusin_slice(curve1_gap_table(n), eps);
        const double mod = res.joint_modulus.value_or(INFINITY);
        ok &= res.removed_measure < eps && mod < prev && !res.hypothesis_failure;
        detail += std::to_string(n) + ": removed " + num(res.removed_measure) + ", modulus " + num(mod) + "; ";
        prev = mod;
    }
    std::vector<Rational> ts, xs;
    for (long a = 0; a < 128; ++a) ts.emplace_back(2 * a + 1, 256);
    for (long b = 0; b < 128; ++b) xs.emplace_back(2 * b + 1, 256);
    curve2::Config cfg;
    cfg.max_m = 6;
    const auto res2 = an::lusin_slice(an::curve2_table(ts, xs, cfg), eps);
    const double mod2 = res2.joint_modulus.value_or(0);
    ok &= res2.hypothesis_failure.has_value() && mod2 >= 2;
    return {ok, detail + "curve 2: " + (res2.hypothesis_failure ? "hypothesis failure reported" : "no report") +
                    ", modulus " + num(mod2)};
}

Outcome derivative() {
    std::mt19937_64 rng(10);
    const auto cfg = c1(1.0, 6);
    double worst = 0;
    int points = 0;
    while (points < 20) {
        const Rational t = in_gap(rng, 1, 15);
        const curve1::Slice s(t, cfg);
        double w = INFINITY;
        for (const auto& st : s.terms()) w = std::min(w, st.width);
        if (w < 1e-4) continue;
        const double x = 0.02 + 0.96 * static_cast<double>(rng() % 100000) / 100000.0;
        // five-point stencil; truncation ~ (h/w)^4, rounding ~ 1e-16 / h
        const double h = w * 1e-3;
        const double fd = (8 * (s.value(x + h) - s.value(x - h)) - (s.value(x + 2 * h) - s.value(x - 2 * h))) / (12 * h);
        worst = std::max(worst, std::abs(curve1::dx_eval(t, x, cfg).value - fd));
        ++points;
    }
    return {worst <= 1e-6, "20 points, max |dx - fd| = " + num(worst)};
}

Outcome fourier() {
    const auto cfg = c1(1.0, 1);
    std::string detail;
    double prev = INFINITY;
    bool ok = true;
    for (long n : {100L, 1000L, 10000L}) {
        std::vector<Rational> ts;
        for (long a = 0; a < n; ++a) ts.emplace_back(a, n - 1);
        const auto cs = an::fourier_sweep(ts, 0, 64, cfg);
        double jump = 0;
        for (std::size_t a = 1; a < cs.size(); ++a) jump = std::max(jump, std::abs(cs[a] - cs[a - 1]));
        ok &= jump < prev;
        detail += std::to_string(n) + ": " + num(jump) + "; ";
        prev = jump;
    }
    return {ok, "max adjacent |c_0| jump " + detail};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    const char* cli = std::getenv("LPCURVES_CLI");
    if (!cli) return {false, "LPCURVES_CLI not set"};
    const fs::path root = fs::temp_directory_path() / ("lpcurves_accept_" + std::to_string(::getpid()));
    const std::vector<std::string> jobs{
        "eval1 --t 0,1/3,3/40 --x 0.1,0.5,0.9 -o eval1.csv",
        "eval2 --t 7/12,1/2 --x 1/2,1/3 -o eval2.csv",
        "table --curve 1 --t-grid 32 --x-grid 32 -o table.csv",
        "modulus --random 3 --seed 7 -o modulus.csv",
        "witness1 --t 0 --blocks 3 -o w1.csv",
        "diverge --witness w1.csv --grid 200 -o diverge1.csv",
        "diverge --curve 2 --t 1/2 --stages 2 --grid 500 -o diverge2.csv",
        "norm --curve 2 --sweep 8 --p 2 -o sweep.csv",
        "modulus --t 29/128,1/2 --samples 8 -o modulus_sup.csv",
        "oscillation --table table.csv -o oscillation.csv",
        "plot --table table.csv --gnuplot --reproducible -o plot_table.svg",
        "witness2 --t 1/2 --stages 2 -o w2.json --times w2_times.csv",
        "egorov --table table.csv --eps 1/4 -o egorov.csv --summary egorov.json",
        "lusin --table table.csv --eps 1/4 -o lusin.csv --summary lusin.json",
        "fourier --t-grid 50 --n 1 -o fourier.csv",
        "sobolev --t 1/2 --pairs 200 --seed 3 -o sobolev.csv",
        "plot --t 1/2,3/40 --reproducible -o plot.svg",
    };
    // both runs use the same working directory so the recorded output paths
    // agree; the first is single-threaded, the second uses every core
    std::string bad;
    std::size_t files = 0;
    const fs::path work = root / "work";
    for (int run = 0; run < 2; ++run) {
        fs::create_directories(work);
        for (const auto& job : jobs) {
            const std::string cmd = "cd \"" + work.string() + "\" && " +
                                    (run == 0 ? "LP_PATHOLOGY_THREADS=1 " : "") + "\"" + cli + "\" " + job +
                                    " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0) bad += "[" + job + " failed] ";
        }
        fs::rename(work, root / std::to_string(run));
    }
    for (const auto& e : fs::directory_iterator(root / "0")) {
        ++files;
        if (slurp(e.path()) != slurp(root / "1" / e.path().filename())) bad += e.path().filename().string() + " ";
    }
    fs::remove_all(root);
    return {bad.empty() && files >= jobs.size(),
            std::to_string(files) + " artifacts compared" + (bad.empty() ? ", all identical" : ", differ: " + bad)};
}

}  // namespace

int main(int argc, char** argv) {
    for (int a = 1; a < argc; ++a) only.push_back(std::atoi(argv[a]));
    report(1, "term bounds", term_bounds);
    report(2, "norm bounds", norm_bounds);
    report(3, "non-Cauchy certificate", non_cauchy);
    report(4, "Lp continuity modulus", modulus);
    report(5, "curve-2 norm sweep", curve2_norm_sweep);
    report(6, "witness-2 certificate", witness2_unit);
    report(7, "witness-2 on a subset", witness2_subset);
    report(8, "Egorov extraction", egorov);
    report(9, "Lusin slice", lusin);
    report(10, "derivative check", derivative);
    report(11, "Fourier continuity", fourier);
    report(12, "determinism", determinism);
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << ran - failures << "/" << ran << std::endl;
    return failures ? 1 : 0;
}
