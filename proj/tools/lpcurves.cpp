// lpcurves: command line front end for the two curves and their analyses.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "lpcurves/analysis.hpp"
#include "lpcurves/curve1.hpp"
#include "lpcurves/curve2.hpp"
#include "lpcurves/errors.hpp"
#include "lpcurves/io.hpp"

using namespace lpcurves;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- config file -------------------------------------------------------

std::vector<std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::vector<std::string> out;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        value.erase(0, value.find_first_not_of(" \t"));
        if (key.starts_with("--")) key.erase(0, 2);
        out.push_back(key + "=" + value);
    }
    return out;
}

// Expands --config into explicit flags; flags given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    auto given = [&](const std::string& key) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == "--" + key || a.starts_with("--" + key + "=");
        });
    };
    for (const auto& kv : read_config(path)) {
        const std::string key = kv.substr(0, kv.find('='));
        if (key == "command") {
            const std::string cmd = kv.substr(kv.find('=') + 1);
            if (args.empty() || args.front().starts_with("-")) args.insert(args.begin(), cmd);
            continue;
        }
        if (!given(key)) args.push_back("--" + kv);
    }
    return args;
}

// ---- parsing helpers ----------------------------------------------------

Rational rational_arg(const std::string& s, const char* what) {
    try {
        return Rational::parse(s);
    } catch (const ParseError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

std::vector<Rational> rationals_arg(const std::vector<std::string>& v, const char* what) {
    std::vector<Rational> out;
    for (const auto& s : v) out.push_back(rational_arg(s, what));
    return out;
}

IntervalSet interval_set_arg(const std::string& inline_text, const std::string& file) {
    try {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw UsageError("cannot read interval set " + file);
            return IntervalSet::from_text(in);
        }
        std::string text = inline_text;
        std::replace(text.begin(), text.end(), ';', '\n');
        return IntervalSet::from_text(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--T: ") + e.what());
    } catch (const DomainError& e) {
        throw UsageError(std::string("--T: ") + e.what());
    }
}

// Midpoints (2a+1)/(2N) of N equal cells of [lo, hi].
std::vector<Rational> midpoint_grid(std::size_t n, const Rational& lo = 0, const Rational& hi = 1) {
    std::vector<Rational> out;
    const Rational len = hi - lo;
    for (std::size_t a = 0; a < n; ++a)
        out.push_back(lo + len * Rational(static_cast<long>(2 * a + 1), static_cast<long>(2 * n)));
    return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out;
    for (const auto& r : v) out.push_back(r.to_double());
    return out;
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// ---- output --------------------------------------------------------------

struct RunInfo {
    std::string command;
    std::vector<std::string> config;  // key=value, sorted
};

void collect(const CLI::App* app, std::map<std::string, std::string>& out) {
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& key = opt->get_lnames().front();
        if (key == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
            if (opt->get_expected_max() == 0) value = "true";
        } else {
            value = opt->get_default_str();
            if (opt->get_expected_max() == 0) value = "false";
        }
        out[key] = value;
    }
}

class Output {
public:
    Output(const std::string& path, const RunInfo& info) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot write " + path);
        }
        header(info);
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    void header(const RunInfo& info, const char* prefix = "# ") {
        os() << prefix << "lpcurves " << info.command << "\n";
        for (const auto& kv : info.config) os() << prefix << kv << "\n";
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double v) { return format_double(v); }

// ---- subcommands ---------------------------------------------------------

struct Common {
    std::string out;
    std::uint64_t seed = 0;
    bool reproducible = false;
    bool gnuplot = false;
    double p = 1.0;
    long depth = 6;
};

curve1::Config curve1_config(const Common& c) {
    curve1::Config cfg;
    cfg.p = c.p;
    cfg.depth = c.depth;
    return cfg;
}

int cmd_eval1(const Common& c, const RunInfo& info, const std::vector<std::string>& ts,
              const std::vector<std::string>& xs, std::size_t x_grid, bool dx) {
    const auto cfg = curve1_config(c);
    std::vector<Rational> xr = x_grid ? midpoint_grid(x_grid) : rationals_arg(xs, "--x");
    if (xr.empty()) throw UsageError("eval1 needs --x or --x-grid");
    Output out(c.out, info);
    out.os() << "t,x,value,tail_bound\n";
    for (const auto& t : rationals_arg(ts, "--t")) {
        const curve1::Slice s(t, cfg);
        for (const auto& x : xr) {
            const double xd = x.to_double();
            if (dx) {
                const auto r = curve1::dx_eval(t, xd, cfg);
                out.os() << t.str() << ',' << x.str() << ',' << fmt(r.value) << ',' << fmt(r.tail_bound) << '\n';
            } else {
                out.os() << t.str() << ',' << x.str() << ',' << fmt(s.value(xd)) << ',' << fmt(s.tail_bound()) << '\n';
            }
        }
    }
    return 0;
}

int cmd_eval2(const Common& c, const RunInfo& info, const std::vector<std::string>& ts,
              const std::vector<std::string>& xs, std::size_t x_grid, long max_m) {
    curve2::Config cfg;
    cfg.p = c.p;
    cfg.max_m = max_m;
    std::vector<Rational> xr = x_grid ? midpoint_grid(x_grid) : rationals_arg(xs, "--x");
    if (xr.empty()) throw UsageError("eval2 needs --x or --x-grid");
    Output out(c.out, info);
    out.os() << "t,x,value,exceptional_bound,active\n";
    for (const auto& t : rationals_arg(ts, "--t")) {
        for (const auto& x : xr) {
            const auto r = curve2::eval(t, x, cfg);
            std::string active;
            for (const auto& a : r.active) active += (active.empty() ? "" : ";") + std::to_string(a.m) + ":" + a.k.get_str();
            out.os() << t.str() << ',' << x.str() << ',' << fmt(r.value) << ',' << r.exceptional_measure_bound.str()
                     << ',' << active << '\n';
        }
    }
    return 0;
}

int cmd_norm(const Common& c, const RunInfo& info, int curve, long stage, const std::vector<std::string>& ts,
             long m, long k, long sweep, std::size_t points) {
    Output out(c.out, info);
    if (curve == 1) {
        const auto cfg = curve1_config(c);
        out.os() << "stage,t,p,norm,error_bound,bound\n";
        for (const auto& t : rationals_arg(ts, "--t")) {
            const auto r = curve1::lp_norm_term(stage, t, c.p, cfg.gaps);
            out.os() << stage << ',' << t.str() << ',' << fmt(c.p) << ',' << fmt(r.value) << ',' << fmt(r.error_bound)
                     << ',' << Rational::pow2(-2 * stage).str() << '\n';
        }
        return 0;
    }
    if (curve != 2) throw UsageError("--curve must be 1 or 2");
    auto row = [&](long mm, long kk, const Rational& t) {
        const double v = curve2::lp_norm_term(mm, BigInt(kk), t, c.p);
        const double bound = std::ldexp(1.0, static_cast<int>(-(mm + kk)));
        out.os() << mm << ',' << kk << ',' << fmt(c.p) << ',' << t.str() << ',' << fmt(v) << ',' << fmt(bound) << ','
                 << (v <= bound ? "ok" : "violation") << '\n';
        return v <= bound;
    };
    out.os() << "m,k,p,t,norm,bound,status\n";
    if (sweep <= 0) {
        for (const auto& t : rationals_arg(ts, "--t")) row(m, k, t);
        return 0;
    }
    // sweep: every S_{m,k} with m, k <= sweep sampled at `points` cell midpoints; only violations are listed
    std::size_t violations = 0, checked = 0;
    for (long mm = 1; mm <= sweep; ++mm) {
        const Rational q = curve2::q(mm);
        for (long kk = 1; kk <= sweep; ++kk) {
            for (const auto& t : midpoint_grid(points, curve2::s(q, BigInt(kk)), curve2::s(q, BigInt(kk + 1)))) {
                const double v = curve2::lp_norm_term(mm, BigInt(kk), t, c.p);
                const double bound = std::ldexp(1.0, static_cast<int>(-(mm + kk)));
                ++checked;
                if (v <= bound) continue;
                ++violations;
                out.os() << mm << ',' << kk << ',' << fmt(c.p) << ',' << t.str() << ',' << fmt(v) << ',' << fmt(bound)
                         << ",violation\n";
            }
        }
    }
    out.os() << "# checked=" << checked << " violations=" << violations << "\n";
    return 0;
}

int cmd_modulus(const Common& c, const RunInfo& info, std::vector<std::string> ts, std::size_t random,
                const std::vector<std::string>& deltas, std::size_t resolution, long samples) {
    const auto cfg = curve1_config(c);
    std::vector<Rational> tr = rationals_arg(ts, "--t");
    std::mt19937_64 rng(c.seed);
    for (std::size_t i = 0; i < random; ++i) tr.emplace_back(BigInt(static_cast<unsigned long>(rng() >> 44)), BigInt(1) << 20);
    if (tr.empty()) throw UsageError("modulus needs --t or --random");
    Output out(c.out, info);
    if (samples > 0) {
        // sup over u = t ± δk/K
        out.os() << "t,delta,samples,modulus\n";
        for (const auto& t : tr)
            for (const auto& d : rationals_arg(deltas, "--deltas"))
                out.os() << t.str() << ',' << d.str() << ',' << samples << ','
                         << fmt(analysis::sampled_modulus(t, d, samples, cfg, resolution)) << '\n';
        return 0;
    }
    out.os() << "t,u,delta,distance,tail_bound\n";
    for (const auto& t : tr) {
        for (const auto& d : rationals_arg(deltas, "--deltas")) {
            const Rational u = t + d <= Rational(1) ? t + d : t - d;
            const auto r = curve1::lp_distance(t, u, cfg, resolution);
            out.os() << t.str() << ',' << u.str() << ',' << d.str() << ',' << fmt(r.value) << ',' << fmt(r.tail_bound)
                     << '\n';
        }
    }
    return 0;
}

int cmd_witness1(const Common& c, const RunInfo& info, const std::string& t, long blocks, long min_cover) {
    const auto cfg = curve1_config(c);
    const auto w = curve1::witness(rational_arg(t, "--t"), cfg, blocks, min_cover);
    Output out(c.out, info);
    out.os() << "# epsilon=" << fmt(w.epsilon) << "\n";
    out.os() << "n,t,stage,gap,role\n";
    std::size_t n = 1;
    for (const auto& pt : w.points())
        out.os() << n++ << ',' << pt.t.str() << ',' << w.stage << ',' << pt.gap.get_str() << ','
                 << curve1::role_name(pt.role) << '\n';
    return 0;
}

json trace_json(const curve2::Witness2Trace& tr) {
    json j;
    j["T"] = json::array();
    for (const auto& iv : tr.T.components()) j["T"].push_back(iv.lo.str() + " " + iv.hi.str());
    j["target"] = tr.target.str();
    j["time_count"] = tr.time_count().get_str();
    j["stages"] = json::array();
    for (const auto& st : tr.stages) {
        json s;
        s["index"] = st.index;
        s["gamma"] = st.gamma.str();
        s["rho"] = st.rho.str();
        s["l"] = st.l.get_str();
        s["m"] = st.m;
        s["q"] = st.qm.str();
        s["r"] = st.r.get_str();
        s["k"] = st.k.get_str();
        s["S"] = {st.S.lo.str(), st.S.hi.str()};
        s["density_in_S"] = st.density_in_S.str();
        s["coverable_measure"] = st.coverable_measure.str();
        s["covered_measure"] = st.covered_measure.str();
        s["certificate_bound"] = st.certificate_bound().str();
        s["certified"] = st.certified();
        s["time_count"] = st.time_count().get_str();
        s["runs"] = json::array();
        for (const auto& run : st.runs)
            s["runs"].push_back({{"first", run.first.str()}, {"step", run.step.str()}, {"count", run.count.get_str()}});
        s["covered"] = json::array();
        for (const auto& iv : st.covered.components()) s["covered"].push_back(iv.lo.str() + " " + iv.hi.str());
        j["stages"].push_back(std::move(s));
    }
    return j;
}

curve2::Witness2Trace run_witness2(const std::string& T_inline, const std::string& T_file, const std::string& t,
                                   long stages, long scan_budget) {
    curve2::Config cfg;
    cfg.scan_budget = scan_budget;
    return curve2::witness(interval_set_arg(T_inline, T_file), rational_arg(t, "--t"), stages, cfg);
}

int cmd_witness2(const Common& c, const RunInfo& info, const std::string& T_inline, const std::string& T_file,
                 const std::string& t, long stages, long scan_budget, const std::string& times_path,
                 std::size_t flatten_limit) {
    const auto tr = run_witness2(T_inline, T_file, t, stages, scan_budget);
    {
        Output out(c.out, info);
        out.os() << trace_json(tr).dump(2) << "\n";
    }
    if (times_path.empty()) return 0;
    Output times(times_path, info);
    if (tr.time_count() <= BigInt(static_cast<unsigned long>(flatten_limit))) {
        times.os() << "n,t,stage\n";
        std::size_t n = 1;
        for (const auto& st : tr.stages)
            for (const auto& run : st.runs)
                for (BigInt i = 0; i < run.count; ++i) times.os() << n++ << ',' << run.at(i).str() << ',' << st.index << '\n';
    } else {
        std::cerr << "note: " << tr.time_count().get_str() << " times exceed --flatten-limit " << flatten_limit
                  << "; wrote arithmetic runs instead\n";
        times.os() << "# times t = first + i*step for 0 <= i < count\n";
        times.os() << "stage,run,first,step,count\n";
        for (const auto& st : tr.stages)
            for (std::size_t r = 0; r < st.runs.size(); ++r)
                times.os() << st.index << ',' << r + 1 << ',' << st.runs[r].first.str() << ',' << st.runs[r].step.str()
                           << ',' << st.runs[r].count.get_str() << '\n';
    }
    return 0;
}

struct WitnessFile {
    std::vector<Rational> times;
    BigInt last_gap = 0;
};

WitnessFile read_witness_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read witness " + path);
    WitnessFile w;
    bool header = false;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (!line.starts_with("n,t,stage,gap,role")) throw UsageError("witness CSV header must be n,t,stage,gap,role");
            header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() < 5) throw UsageError("witness CSV row has too few cells: " + line);
        w.times.push_back(rational_arg(cells[1], "witness t"));
        w.last_gap = BigInt(cells[3]);
    }
    if (w.times.empty()) throw UsageError("witness CSV has no rows");
    return w;
}

int cmd_diverge(const Common& c, const RunInfo& info, const std::string& witness, std::size_t grid,
                const std::string& eps_s, int curve, const std::string& T_inline, const std::string& T_file,
                const std::string& t, long stages, long scan_budget) {
    if (grid < 1) throw UsageError("--grid must be positive");
    Output out(c.out, info);
    if (curve == 2) {
        const auto tr = run_witness2(T_inline, T_file, t, stages, scan_budget);
        const auto xs = midpoint_grid(grid);
        out.os() << "stage,threshold,covered_measure,covered_measure_float,fraction,within_one_cell\n";
        for (const auto& st : tr.stages) {
            const double f = curve2::threshold_coverage(st, xs);
            const bool near = std::abs(f - st.covered_measure.to_double()) <= 1.0 / static_cast<double>(grid);
            out.os() << st.index << ',' << Rational::pow2(st.m).str() << ',' << st.covered_measure.str() << ','
                     << fmt(st.covered_measure.to_double()) << ',' << fmt(f) << ',' << (near ? "true" : "false") << '\n';
        }
        return 0;
    }
    if (witness.empty()) throw UsageError("diverge needs --witness (curve 1) or --curve 2");
    const auto w = read_witness_csv(witness);
    const auto cfg = curve1_config(c);
    const double eps = rational_arg(eps_s, "--eps").to_double();
    const Rational lo = Rational(BigInt(1), w.last_gap);
    const Rational hi = Rational(1) - lo;
    if (!(lo < hi)) throw DomainError("last witness gap index too small for a coverage window");
    std::vector<std::optional<curve1::Slice>> slices(w.times.size());
    analysis::parallel_for(w.times.size(), [&](std::size_t n) { slices[n].emplace(w.times[n], cfg); });
    const auto xs = to_doubles(midpoint_grid(grid, lo, hi));
    const auto r = analysis::divergence_measure(
        w.times.size(), [&](std::size_t n, double x) { return slices[n]->value(x); }, xs, eps);
    out.os() << "window_lo,window_hi,eps,certified,total,fraction\n";
    out.os() << lo.str() << ',' << hi.str() << ',' << fmt(eps) << ',' << r.certified << ',' << r.total << ','
             << fmt(r.fraction()) << '\n';
    return 0;
}

analysis::FunctionTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read table " + path);
    return analysis::FunctionTable::read_csv(in);
}

std::vector<long> n_list(const std::vector<long>& given, std::size_t cols) {
    if (!given.empty()) return given;
    std::vector<long> ns;
    for (long n = 1; n <= static_cast<long>(cols / 2); ++n) ns.push_back(n);
    if (ns.empty()) ns.push_back(1);
    return ns;
}

int cmd_oscillation(const Common& c, const RunInfo& info, const std::string& table, const std::vector<long>& ns_in) {
    const auto tb = load_table(table);
    const auto prof = analysis::oscillation_profile(tb, n_list(ns_in, tb.cols()));
    Output out(c.out, info);
    out.os() << "t";
    for (long n : prof.ns) out.os() << ",n=" << n;
    out.os() << '\n';
    for (std::size_t a = 0; a < tb.rows(); ++a) {
        out.os() << fmt(prof.t_grid[a]);
        for (double v : prof.omega[a]) out.os() << ',' << fmt(v);
        out.os() << '\n';
    }
    return 0;
}

void write_slice(const Common& c, const RunInfo& info, const analysis::SliceResult& res, const std::string& summary) {
    {
        Output out(c.out, info);
        res.write_csv(out.os());
    }
    if (summary.empty()) {
        std::cerr << "removed_measure=" << fmt(res.removed_measure) << " retained=" << res.retained.size() << "\n";
        return;
    }
    std::ofstream s(summary, std::ios::binary);
    if (!s) throw std::runtime_error("cannot write " + summary);
    // JSON has no comments; the config travels as a field
    s << "{\"config\": [";
    for (std::size_t i = 0; i < info.config.size(); ++i) s << (i ? ", " : "") << json(info.config[i]).dump();
    s << "],\n\"result\": ";
    res.write_summary(s);
    s << "}\n";
}

int cmd_egorov(const Common& c, const RunInfo& info, const std::string& table, const std::string& eps_s, long steps,
               const std::vector<long>& ns_in, const std::string& summary) {
    const auto tb = load_table(table);
    const auto prof = analysis::oscillation_profile(tb, n_list(ns_in, tb.cols()));
    const auto res = analysis::egorov_extract(prof, rational_arg(eps_s, "--eps").to_double(), steps);
    write_slice(c, info, res, summary);
    return 0;
}

int cmd_lusin(const Common& c, const RunInfo& info, const std::string& table, const std::string& eps_s, long steps,
              const std::vector<std::size_t>& columns, const std::string& summary) {
    const auto tb = load_table(table);
    analysis::LusinOptions opt;
    opt.columns = columns;
    opt.egorov_steps = steps;
    const auto res = analysis::lusin_slice(tb, rational_arg(eps_s, "--eps").to_double(), opt);
    write_slice(c, info, res, summary);
    std::cerr << "joint_modulus=" << fmt(*res.joint_modulus);
    if (res.hypothesis_failure) std::cerr << " hypothesis_failure: " << *res.hypothesis_failure;
    std::cerr << "\n";
    return 0;
}

std::vector<Rational> time_list(const std::vector<std::string>& ts, std::size_t grid, const std::string& lo,
                                const std::string& hi) {
    if (grid == 0) return rationals_arg(ts, "--t");
    const Rational a = rational_arg(lo, "--t-lo"), b = rational_arg(hi, "--t-hi");
    if (grid == 1) return {a};
    std::vector<Rational> out;
    // endpoints included: a + (b - a) i/(N-1)
    for (std::size_t i = 0; i < grid; ++i)
        out.push_back(a + (b - a) * Rational(static_cast<long>(i), static_cast<long>(grid - 1)));
    return out;
}

int cmd_fourier(const Common& c, const RunInfo& info, const std::vector<Rational>& ts, long n, std::size_t resolution) {
    if (ts.empty()) throw UsageError("fourier needs --t or --t-grid");
    const auto cfg = curve1_config(c);
    const auto cs = analysis::fourier_sweep(ts, n, resolution, cfg);
    Output out(c.out, info);
    out.os() << "t,n,re,im\n";
    double jump = 0;
    for (std::size_t a = 0; a < ts.size(); ++a) {
        out.os() << ts[a].str() << ',' << n << ',' << fmt(cs[a].real()) << ',' << fmt(cs[a].imag()) << '\n';
        if (a > 0) jump = std::max(jump, std::abs(cs[a] - cs[a - 1]));
    }
    out.os() << "# max_adjacent_jump=" << fmt(jump) << "\n";
    return 0;
}

int cmd_sobolev(const Common& c, const RunInfo& info, const std::vector<std::string>& ts, double q,
                std::size_t resolution, std::size_t pairs) {
    const auto cfg = curve1_config(c);
    std::mt19937_64 rng(c.seed);
    std::vector<std::pair<double, double>> ps;
    // |x - y| log-uniform in [1e-3, 1e-1]
    for (std::size_t i = 0; i < pairs; ++i) {
        const double h = std::pow(10.0, -3.0 + 2.0 * unit_double(rng));
        const double x = unit_double(rng) * (1.0 - h);
        ps.emplace_back(x, x + h);
    }
    Output out(c.out, info);
    out.os() << "t,p,q,lp,dx_lq,total,holder_constant,exponent_fit,holder_exponent\n";
    for (const auto& t : rationals_arg(ts, "--t")) {
        const curve1::Slice s(t, cfg);
        const auto n = analysis::sobolev_norm(s, c.p, q, resolution);
        const auto h = analysis::holder_check(s, q, ps);
        out.os() << t.str() << ',' << fmt(c.p) << ',' << fmt(q) << ',' << fmt(n.lp) << ',' << fmt(n.dx_lq) << ','
                 << fmt(n.total()) << ',' << fmt(h.constant) << ',' << fmt(h.exponent_fit) << ','
                 << fmt(1.0 - 1.0 / q) << '\n';
    }
    return 0;
}

int cmd_table(const Common& c, const RunInfo& info, int curve, std::size_t t_grid, std::size_t x_grid,
              const std::string& lo, const std::string& hi, long max_m) {
    if (t_grid < 1 || x_grid < 1) throw UsageError("--t-grid and --x-grid must be positive");
    const auto ts = midpoint_grid(t_grid, rational_arg(lo, "--t-lo"), rational_arg(hi, "--t-hi"));
    const auto xs = midpoint_grid(x_grid);
    Output out(c.out, info);
    if (curve == 1) {
        analysis::curve1_table(ts, to_doubles(xs), curve1_config(c)).write_csv(out.os());
    } else if (curve == 2) {
        curve2::Config cfg;
        cfg.p = c.p;
        cfg.max_m = max_m;
        analysis::curve2_table(ts, xs, cfg).write_csv(out.os());
    } else {
        throw UsageError("--curve must be 1 or 2");
    }
    return 0;
}

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

int cmd_plot(const Common& c, const RunInfo& info, int curve, const std::vector<std::string>& ts,
             const std::string& table, std::size_t samples, long max_m) {
    // series: label, x, y
    std::vector<std::tuple<std::string, std::vector<double>, std::vector<double>>> series;
    if (!table.empty()) {
        const auto tb = load_table(table);
        const std::size_t shown = std::min<std::size_t>(tb.rows(), 8);
        for (std::size_t i = 0; i < shown; ++i) {
            const std::size_t a = shown == 1 ? 0 : i * (tb.rows() - 1) / (shown - 1);
            auto row = tb.row(a);
            series.emplace_back("t=" + fmt(tb.t_grid()[a]), tb.x_grid(), std::vector<double>(row.begin(), row.end()));
        }
    } else {
        const auto xs = midpoint_grid(samples);
        for (const auto& t : rationals_arg(ts, "--t")) {
            std::vector<double> y;
            if (curve == 1) {
                const curve1::Slice s(t, curve1_config(c));
                for (const auto& x : xs) y.push_back(s.value(x.to_double()));
            } else {
                curve2::Config cfg;
                cfg.max_m = max_m;
                for (const auto& x : xs) y.push_back(curve2::eval(t, x, cfg).value);
            }
            series.emplace_back("t=" + t.str(), to_doubles(xs), std::move(y));
        }
    }
    if (series.empty()) throw UsageError("plot needs --t or --table");

    double ymin = 0, ymax = 0;
    for (const auto& [label, x, y] : series)
        for (double v : y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    if (ymax == ymin) ymax = ymin + 1;

    const double W = 640, H = 400, L = 60, R = 20, T = 20, B = 40;
    auto px = [&](double x) { return L + x * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    // the config goes in an XML comment after the prolog
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<!--\n";
    svg << "lpcurves " << info.command << "\n";
    for (const auto& kv : info.config) svg << kv << "\n";
    svg << "-->\n";
    if (!c.reproducible) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[64];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        svg << "<!-- generated " << stamp << " -->\n";
    }
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
        << ' ' << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << L << "\" y=\"" << H - 10 << "\" font-size=\"12\">0</text>\n";
    svg << "<text x=\"" << W - R - 8 << "\" y=\"" << H - 10 << "\" font-size=\"12\">1</text>\n";
    svg << "<text x=\"4\" y=\"" << svg_num(py(ymax) + 4) << "\" font-size=\"12\">" << fmt(ymax) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << svg_num(py(ymin)) << "\" font-size=\"12\">" << fmt(ymin) << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& [label, x, y] = series[i];
        svg << "<polyline fill=\"none\" stroke=\"" << colors[i % 8] << "\" stroke-width=\"1\" points=\"";
        for (std::size_t k = 0; k < x.size(); ++k) svg << (k ? " " : "") << svg_num(px(x[k])) << ',' << svg_num(py(y[k]));
        svg << "\"/>\n";
        svg << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 14 * (i + 1) << "\" font-size=\"11\" fill=\""
            << colors[i % 8] << "\">" << label << "</text>\n";
    }
    svg << "</svg>\n";

    if (c.out.empty() || c.out == "-") {
        std::cout << svg.str();
    } else {
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + c.out);
        f << svg.str();
    }
    if (c.gnuplot) {
        std::string base = c.out.empty() || c.out == "-" ? std::string("plot") : c.out;
        if (base.size() > 4 && base.ends_with(".svg")) base.resize(base.size() - 4);
        Output dat(base + ".dat", info);
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& [label, x, y] = series[i];
            dat.os() << "# " << label << "\n";
            for (std::size_t k = 0; k < x.size(); ++k) dat.os() << fmt(x[k]) << ' ' << fmt(y[k]) << '\n';
            dat.os() << "\n\n";
        }
        Output gp(base + ".gp", info);
        gp.os() << "set xrange [0:1]\nplot ";
        for (std::size_t i = 0; i < series.size(); ++i)
            gp.os() << (i ? ", " : "") << "'" << base << ".dat' index " << i << " with lines title '"
                    << std::get<0>(series[i]) << "'";
        gp.os() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L^p-continuous curves with pathological pointwise behaviour"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--out,-o", c.out, "Output file (default stdout)");
    app.add_option("--seed", c.seed, "Seed for randomized sampling");
    app.add_flag("--reproducible", c.reproducible, "Suppress timestamps in SVG output");
    app.add_flag("--gnuplot", c.gnuplot, "Also emit gnuplot data files");
    app.add_option("--p", c.p, "Exponent p >= 1");
    app.add_option("--depth", c.depth, "Curve-1 truncation depth I");

    std::vector<std::string> ts, xs;
    std::string t_single = "0", eps = "1/24", table, summary, T_inline = "0 1", T_file, times_path, witness;
    std::string t_lo = "0", t_hi = "1";
    std::size_t x_grid = 0, t_grid = 0, grid = 1000, resolution = 64, samples = 512, pairs = 2000, random = 0;
    std::size_t flatten_limit = 1'000'000, points = 50;
    long mod_samples = 0;
    long max_m = 12, stage = 1, m = 1, k = 1, sweep = 0, blocks = 4, min_cover = 0, stages = 3, steps = 3, n = 0;
    long scan_budget = 1'000'000;
    int curve = 1;
    bool dx = false;
    double q = 2.0;
    std::vector<std::string> deltas{"1/10", "1/100", "1/1000", "1/10000"};
    std::vector<long> ns;
    std::vector<std::size_t> columns;

    auto* eval1 = app.add_subcommand("eval1", "Evaluate curve 1 at (t, x)");
    eval1->add_option("--t", ts, "Times (exact rationals)")->delimiter(',')->required();
    eval1->add_option("--x", xs, "Points")->delimiter(',');
    eval1->add_option("--x-grid", x_grid, "Use N midpoints in x instead of --x");
    eval1->add_flag("--dx", dx, "Evaluate the x-derivative");

    auto* eval2 = app.add_subcommand("eval2", "Evaluate curve 2 at (t, x)");
    eval2->add_option("--t", ts, "Times")->delimiter(',')->required();
    eval2->add_option("--x", xs, "Points")->delimiter(',');
    eval2->add_option("--x-grid", x_grid, "Use N midpoints in x instead of --x");
    eval2->add_option("--max-m", max_m, "Sum m = 1..max_m");

    auto* norm = app.add_subcommand("norm", "L^p norm of one term");
    norm->add_option("--curve", curve, "1 or 2");
    norm->add_option("--stage", stage, "Curve-1 stage i");
    norm->add_option("--t", ts, "Times")->delimiter(',');
    norm->add_option("--m", m, "Curve-2 m");
    norm->add_option("--k", k, "Curve-2 k");
    norm->add_option("--sweep", sweep, "Curve 2: check all m, k <= N and list violations");
    norm->add_option("--points", points, "Sweep samples per S_{m,k}");

    auto* modulus = app.add_subcommand("modulus", "Sampled ||f_t - f_u||_p for curve 1");
    modulus->add_option("--t", ts, "Times")->delimiter(',');
    modulus->add_option("--random", random, "Add N seeded random times");
    modulus->add_option("--deltas", deltas, "Offsets |t - u|")->delimiter(',');
    modulus->add_option("--resolution", resolution, "Quadrature panels per piece");
    modulus->add_option("--samples", mod_samples, "Report the sup over u = t ± delta k/K, k = 1..K");

    auto* witness1 = app.add_subcommand("witness1", "Non-Cauchy witness sequence for curve 1");
    witness1->add_option("--t", t_single, "Target time in K")->required();
    witness1->add_option("--blocks", blocks, "Number of gap blocks");
    witness1->add_option("--min-cover", min_cover, "Cap cover spacing at 1/N");

    auto* witness2 = app.add_subcommand("witness2", "Density-point witness trace for curve 2");
    witness2->add_option("--T", T_inline, "Time set: 'a/b c/d' components separated by ';'");
    witness2->add_option("--T-file", T_file, "Time set in IntervalSet text format");
    witness2->add_option("--t", t_single, "Target density point")->required();
    witness2->add_option("--stages", stages, "Number of stages");
    witness2->add_option("--scan-budget", scan_budget, "Candidates scanned per search");
    witness2->add_option("--times", times_path, "Write the time sequence CSV here");
    witness2->add_option("--flatten-limit", flatten_limit, "Largest time count written one per line");

    auto* diverge = app.add_subcommand("diverge", "Certified non-Cauchy fraction of an x grid");
    diverge->add_option("--witness", witness, "Curve-1 witness CSV");
    diverge->add_option("--grid", grid, "Number of x points");
    diverge->add_option("--eps", eps, "Cauchy gap");
    diverge->add_option("--curve", curve, "1 (witness CSV) or 2 (rebuild witness2)");
    diverge->add_option("--T", T_inline, "Curve 2 time set");
    diverge->add_option("--T-file", T_file, "Curve 2 time set file");
    diverge->add_option("--t", t_single, "Curve 2 target");
    diverge->add_option("--stages", stages, "Curve 2 stages");
    diverge->add_option("--scan-budget", scan_budget, "Curve 2 scan budget");

    auto* osc = app.add_subcommand("oscillation", "delta-oscillation profile of a table");
    osc->add_option("--table", table, "FunctionTable CSV")->required();
    osc->add_option("--n", ns, "n list (delta = 1/n)")->delimiter(',');

    auto* egorov = app.add_subcommand("egorov", "Constructive Egorov extraction on a table");
    egorov->add_option("--table", table, "FunctionTable CSV")->required();
    egorov->add_option("--eps", eps, "Removed-measure budget");
    egorov->add_option("--steps", steps, "Egorov steps J");
    egorov->add_option("--n", ns, "n list (delta = 1/n)")->delimiter(',');
    egorov->add_option("--summary", summary, "Write the JSON summary here");

    auto* lusin = app.add_subcommand("lusin", "Lusin slice of a table");
    lusin->add_option("--table", table, "FunctionTable CSV")->required();
    lusin->add_option("--eps", eps, "Removed-measure budget");
    lusin->add_option("--steps", steps, "Egorov steps J");
    lusin->add_option("--columns", columns, "Column subset X")->delimiter(',');
    lusin->add_option("--summary", summary, "Write the JSON summary (modulus report) here");

    auto* fourier = app.add_subcommand("fourier", "Fourier coefficient c_n(t) of curve 1");
    fourier->add_option("--t", ts, "Times")->delimiter(',');
    fourier->add_option("--t-grid", t_grid, "N equispaced times from --t-lo to --t-hi");
    fourier->add_option("--t-lo", t_lo, "Sweep start");
    fourier->add_option("--t-hi", t_hi, "Sweep end");
    fourier->add_option("--n", n, "Frequency index");
    fourier->add_option("--resolution", resolution, "Quadrature panels per piece");

    auto* sobolev = app.add_subcommand("sobolev", "W^{1,q} norm and Hoelder fit of curve-1 slices");
    sobolev->add_option("--t", ts, "Times")->delimiter(',')->required();
    sobolev->add_option("--q", q, "Sobolev exponent q > 1");
    sobolev->add_option("--resolution", resolution, "Midpoint panels");
    sobolev->add_option("--pairs", pairs, "Seeded random pairs for the Hoelder fit");

    auto* tablec = app.add_subcommand("table", "Sample a curve on a (t, x) grid");
    tablec->add_option("--curve", curve, "1 or 2");
    tablec->add_option("--t-grid", t_grid, "Rows (cell midpoints of [t-lo, t-hi])")->required();
    tablec->add_option("--x-grid", x_grid, "Columns (cell midpoints of [0,1])")->required();
    tablec->add_option("--t-lo", t_lo, "Row range start");
    tablec->add_option("--t-hi", t_hi, "Row range end");
    tablec->add_option("--max-m", max_m, "Curve-2 truncation");

    auto* plot = app.add_subcommand("plot", "SVG plot of slices x -> f_t(x)");
    plot->add_option("--curve", curve, "1 or 2");
    plot->add_option("--t", ts, "Times")->delimiter(',');
    plot->add_option("--table", table, "Plot rows of a FunctionTable CSV instead");
    plot->add_option("--samples", samples, "x samples per slice");
    plot->add_option("--max-m", max_m, "Curve-2 truncation");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    RunInfo info;
    info.command = sub->get_name();
    std::map<std::string, std::string> cfg;
    collect(&app, cfg);
    collect(sub, cfg);
    for (const auto& [key, value] : cfg) info.config.push_back(key + "=" + value);

    try {
        const std::string name = sub->get_name();
        if (name == "eval1") return cmd_eval1(c, info, ts, xs, x_grid, dx);
        if (name == "eval2") return cmd_eval2(c, info, ts, xs, x_grid, max_m);
        if (name == "norm") return cmd_norm(c, info, curve, stage, ts, m, k, sweep, points);
        if (name == "modulus") return cmd_modulus(c, info, ts, random, deltas, resolution, mod_samples);
        if (name == "witness1") return cmd_witness1(c, info, t_single, blocks, min_cover);
        if (name == "witness2")
            return cmd_witness2(c, info, T_inline, T_file, t_single, stages, scan_budget, times_path, flatten_limit);
        if (name == "diverge")
            return cmd_diverge(c, info, witness, grid, eps, curve, T_inline, T_file, t_single, stages, scan_budget);
        if (name == "oscillation") return cmd_oscillation(c, info, table, ns);
        if (name == "egorov") return cmd_egorov(c, info, table, eps, steps, ns, summary);
        if (name == "lusin") return cmd_lusin(c, info, table, eps, steps, columns, summary);
        if (name == "fourier") return cmd_fourier(c, info, time_list(ts, t_grid, t_lo, t_hi), n, resolution);
        if (name == "sobolev") return cmd_sobolev(c, info, ts, q, resolution, pairs);
        if (name == "table") return cmd_table(c, info, curve, t_grid, x_grid, t_lo, t_hi, max_m);
        if (name == "plot") return cmd_plot(c, info, curve, ts, table, samples, max_m);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
