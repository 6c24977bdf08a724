#include "lpcurves/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <exception>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "lpcurves/errors.hpp"
#include "lpcurves/io.hpp"
#include "lpcurves/quadrature.hpp"

namespace lpcurves::analysis {

std::size_t thread_cap() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LP_PATHOLOGY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) hw = std::min(hw, static_cast<std::size_t>(v));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::curve1: return "curve1";
        case Provenance::curve2: return "curve2";
        case Provenance::external: return "external";
    }
    return "external";
}

Provenance provenance_from_name(const std::string& s) {
    if (s == "curve1") return Provenance::curve1;
    if (s == "curve2") return Provenance::curve2;
    if (s == "external") return Provenance::external;
    throw ParseError("unknown table provenance '" + s + "'");
}

namespace {

void check_grid(const std::vector<double>& g, const char* name) {
    if (g.empty()) throw DomainError(std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] >= 0 && g[i] <= 1)) throw DomainError(std::string(name) + " grid leaves [0,1]");
        if (i > 0 && !(g[i - 1] < g[i])) throw DomainError(std::string(name) + " grid is not strictly increasing");
    }
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

FunctionTable::FunctionTable(std::vector<double> t_grid, std::vector<double> x_grid, std::vector<double> values,
                             Provenance provenance)
    : t_(std::move(t_grid)), x_(std::move(x_grid)), v_(std::move(values)), prov_(provenance) {
    check_grid(t_, "t");
    check_grid(x_, "x");
    if (v_.size() != t_.size() * x_.size()) throw DomainError("table values do not match the grid dimensions");
}

FunctionTable FunctionTable::build(std::vector<double> t_grid, std::vector<double> x_grid, Provenance provenance,
                                   const std::function<void(std::size_t, std::span<double>)>& fill) {
    check_grid(t_grid, "t");
    check_grid(x_grid, "x");
    const std::size_t cols = x_grid.size();
    std::vector<double> values(t_grid.size() * cols);
    parallel_for(t_grid.size(), [&](std::size_t a) { fill(a, std::span<double>(values.data() + a * cols, cols)); });
    return FunctionTable(std::move(t_grid), std::move(x_grid), std::move(values), provenance);
}

std::vector<double> FunctionTable::column(std::size_t b) const {
    std::vector<double> out(rows());
    for (std::size_t a = 0; a < rows(); ++a) out[a] = at(a, b);
    return out;
}

void FunctionTable::write_csv(std::ostream& out) const {
    out << "# provenance=" << provenance_name(prov_) << "\n";
    out << "t\\x";
    for (double x : x_) out << ',' << format_double(x);
    out << '\n';
    for (std::size_t a = 0; a < rows(); ++a) {
        out << format_double(t_[a]);
        for (double v : row(a)) out << ',' << format_double(v);
        out << '\n';
    }
}

FunctionTable FunctionTable::read_csv(std::istream& in) {
    Provenance prov = Provenance::external;
    std::vector<double> ts, xs, vs;
    bool header = false;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            constexpr std::string_view key = "# provenance=";
            if (line.starts_with(key)) prov = provenance_from_name(line.substr(key.size()));
            continue;
        }
        auto cells = split_csv(line);
        try {
            if (!header) {
                if (cells.empty() || cells[0] != "t\\x") throw ParseError("table header must start with t\\x");
                for (std::size_t i = 1; i < cells.size(); ++i) xs.push_back(parse_double(cells[i]));
                header = true;
                continue;
            }
            if (cells.size() != xs.size() + 1) throw ParseError("row has " + std::to_string(cells.size()) + " cells");
            ts.push_back(parse_double(cells[0]));
            for (std::size_t i = 1; i < cells.size(); ++i) vs.push_back(parse_double(cells[i]));
        } catch (const ParseError& e) {
            throw ParseError("table line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!header) throw ParseError("table has no t\\x header");
    try {
        return FunctionTable(std::move(ts), std::move(xs), std::move(vs), prov);
    } catch (const DomainError& e) {
        throw ParseError(std::string("malformed table: ") + e.what());
    }
}

FunctionTable curve1_table(const std::vector<Rational>& ts, const std::vector<double>& xs,
                           const curve1::Config& cfg) {
    cfg.validate();
    std::vector<double> tg;
    for (const auto& t : ts) tg.push_back(t.to_double());
    return FunctionTable::build(std::move(tg), xs, Provenance::curve1, [&](std::size_t a, std::span<double> row) {
        const curve1::Slice s(ts[a], cfg);
        for (std::size_t b = 0; b < row.size(); ++b) row[b] = s.value(xs[b]);
    });
}

FunctionTable curve2_table(const std::vector<Rational>& ts, const std::vector<Rational>& xs,
                           const curve2::Config& cfg) {
    cfg.validate();
    std::vector<double> tg, xg;
    for (const auto& t : ts) tg.push_back(t.to_double());
    for (const auto& x : xs) xg.push_back(x.to_double());
    return FunctionTable::build(std::move(tg), std::move(xg), Provenance::curve2,
                                [&](std::size_t a, std::span<double> row) {
                                    for (std::size_t b = 0; b < row.size(); ++b)
                                        row[b] = curve2::eval(ts[a], xs[b], cfg).value;
                                });
}

namespace {

// max - min over sliding windows [left(b), b]; in_window(l, b) says whether l may pair with b.
template <class InWindow>
double sliding_oscillation(std::span<const double> g, InWindow in_window) {
    std::deque<std::size_t> hi, lo;
    std::size_t left = 0;
    double best = 0;
    for (std::size_t b = 0; b < g.size(); ++b) {
        while (!in_window(left, b)) ++left;
        while (!hi.empty() && hi.front() < left) hi.pop_front();
        while (!lo.empty() && lo.front() < left) lo.pop_front();
        while (!hi.empty() && g[hi.back()] <= g[b]) hi.pop_back();
        while (!lo.empty() && g[lo.back()] >= g[b]) lo.pop_back();
        hi.push_back(b);
        lo.push_back(b);
        best = std::max(best, g[hi.front()] - g[lo.front()]);
    }
    return best;
}

}  // namespace

double oscillation(std::span<const double> xs, std::span<const double> g, double delta) {
    if (!(delta > 0)) throw DomainError("oscillation needs delta > 0");
    if (xs.size() != g.size()) throw DomainError("oscillation grid and samples differ in length");
    return sliding_oscillation(g, [&](std::size_t l, std::size_t b) { return xs[b] - xs[l] < delta; });
}

double oscillation(std::span<const double> g, double delta) {
    if (!(delta > 0)) throw DomainError("oscillation needs delta > 0");
    // midpoints k steps apart are k/N apart
    const double n = static_cast<double>(g.size());
    return sliding_oscillation(g, [&](std::size_t l, std::size_t b) {
        return static_cast<double>(b - l) < delta * n;
    });
}

OscillationProfile oscillation_profile(const FunctionTable& table, std::vector<long> ns) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.empty() || ns.front() < 1) throw DomainError("profile n list must hold positive integers");
    OscillationProfile prof{table.t_grid(), ns, std::vector<std::vector<double>>(table.rows())};
    const std::span<const double> xs(table.x_grid());
    parallel_for(table.rows(), [&](std::size_t a) {
        auto& out = prof.omega[a];
        out.resize(ns.size());
        for (std::size_t k = 0; k < ns.size(); ++k)
            out[k] = oscillation(xs, table.row(a), 1.0 / static_cast<double>(ns[k]));
    });
    return prof;
}

CauchyVerdict cauchy_certificate(std::span<const double> v, double eps, std::size_t n0) {
    const double thr = eps + kGuardBand;
    std::size_t lo = n0, hi = n0;
    for (std::size_t m = n0; m < v.size(); ++m) {
        if (v[m] - v[lo] > thr) return {true, lo, m};
        if (v[hi] - v[m] > thr) return {true, hi, m};
        if (v[m] < v[lo]) lo = m;
        if (v[m] > v[hi]) hi = m;
    }
    return {};
}

DivergenceResult divergence_measure(std::size_t terms, const std::function<double(std::size_t, double)>& value,
                                    std::span<const double> xs, double eps, std::size_t n0) {
    if (terms == 0) throw DomainError("divergence_measure needs a nonempty sequence");
    std::vector<char> hit(xs.size(), 0);
    const double thr = eps + kGuardBand;
    parallel_for(xs.size(), [&](std::size_t b) {
        double lo = 0, hi = 0;
        for (std::size_t n = n0; n < terms; ++n) {
            const double v = value(n, xs[b]);
            if (n == n0) {
                lo = hi = v;
                continue;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (hi - lo > thr) {
                hit[b] = 1;
                return;
            }
        }
    });
    return {static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)), xs.size()};
}

DivergenceResult divergence_measure(const curve1::WitnessSequence& w, const curve1::Config& cfg,
                                    std::span<const double> xs, double eps) {
    const auto times = w.times();
    if (times.empty()) throw DomainError("divergence_measure needs a nonempty witness");
    std::vector<std::optional<curve1::Slice>> slices(times.size());
    parallel_for(times.size(), [&](std::size_t n) { slices[n].emplace(times[n], cfg); });
    return divergence_measure(
        times.size(), [&](std::size_t n, double x) { return slices[n]->value(x); }, xs, eps);
}

IntervalSet SliceResult::hull() const {
    std::vector<Interval> parts;
    for (std::size_t i = 0; i < retained.size();) {
        std::size_t j = i;
        while (j + 1 < retained.size() && retained[j + 1] == retained[j] + 1) ++j;
        parts.emplace_back(Rational::from_double(t_grid[retained[i]]), Rational::from_double(t_grid[retained[j]]));
        i = j + 1;
    }
    return IntervalSet(std::move(parts));
}

void SliceResult::write_csv(std::ostream& out) const {
    out << "index,t\n";
    for (auto a : retained) out << a << ',' << format_double(t_grid[a]) << '\n';
}

void SliceResult::write_summary(std::ostream& out) const {
    out << "{\n";
    out << "  \"rows\": " << t_grid.size() << ",\n";
    out << "  \"retained\": " << retained.size() << ",\n";
    out << "  \"removed_measure\": " << format_double(removed_measure) << ",\n";
    out << "  \"steps\": [";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        out << (i ? ", " : "") << "{\"j\": " << s.j << ", \"n\": " << s.n << ", \"eta\": " << format_double(s.eta)
            << ", \"removed\": " << format_double(s.removed) << "}";
    }
    out << "],\n";
    out << "  \"quantile\": [";
    for (std::size_t i = 0; i < quantile.size(); ++i)
        out << (i ? ", " : "") << "{\"column\": " << quantile[i].first << ", \"removed_rows\": " << quantile[i].second
            << "}";
    out << "],\n";
    out << "  \"joint_modulus\": " << (joint_modulus ? format_double(*joint_modulus) : "null") << ",\n";
    out << "  \"hypothesis_failure\": " << (hypothesis_failure ? json_string(*hypothesis_failure) : "null") << ",\n";
    out << "  \"hull\": [";
    const auto h = hull();
    for (std::size_t i = 0; i < h.components().size(); ++i) {
        const auto& c = h.components()[i];
        out << (i ? ", " : "") << json_string(c.lo.str() + " " + c.hi.str());
    }
    out << "]\n}\n";
}

SliceResult egorov_extract(const OscillationProfile& profile, double eps, long steps,
                           const std::vector<bool>& excluded) {
    if (!(eps > 0 && eps < 1)) throw DomainError("egorov_extract needs 0 < eps < 1");
    if (steps < 1) throw DomainError("egorov_extract needs at least one step");
    const std::size_t rows = profile.t_grid.size();
    if (rows == 0 || profile.omega.size() != rows) throw DomainError("oscillation profile is empty or ragged");
    if (!excluded.empty() && excluded.size() != rows) throw DomainError("exclusion mask has the wrong length");
    if (!std::is_sorted(profile.ns.begin(), profile.ns.end())) throw DomainError("profile n list must increase");

    std::vector<bool> out = excluded.empty() ? std::vector<bool>(rows, false) : excluded;
    SliceResult res;
    res.t_grid = profile.t_grid;
    std::size_t removed_total = 0;
    const double n_rows = static_cast<double>(rows);
    for (long j = 1; j <= steps; ++j) {
        const double eta = std::ldexp(1.0, static_cast<int>(-j));
        const double budget = eps * eta;
        bool done = false;
        for (std::size_t k = 0; k < profile.ns.size() && !done; ++k) {
            std::vector<std::size_t> bad;
            for (std::size_t a = 0; a < rows; ++a)
                if (!out[a] && profile.omega[a][k] > eta) bad.push_back(a);
            if (static_cast<double>(bad.size()) / n_rows < budget) {
                for (auto a : bad) out[a] = true;
                removed_total += bad.size();
                res.steps.push_back({j, profile.ns[k], eta, static_cast<double>(bad.size()) / n_rows});
                done = true;
            }
        }
        if (!done)
            throw ProfileTooCoarse(j, "profile too coarse: no listed n meets Egorov step j=" + std::to_string(j) +
                                          " (eta=" + format_double(eta) + ", budget=" + format_double(budget) + ")");
    }
    for (std::size_t a = 0; a < rows; ++a)
        if (!out[a]) res.retained.push_back(a);
    res.removed_measure = static_cast<double>(removed_total) / n_rows;
    return res;
}

namespace {

std::size_t quantile_budget(double eps, std::size_t n, std::size_t rows) {
    const double y = eps * std::ldexp(static_cast<double>(rows), -static_cast<int>(n + 1));
    const double c = std::ceil(y) - 1;
    return c > 0 ? static_cast<std::size_t>(c) : 0;
}

}  // namespace

std::vector<std::size_t> dyadic_columns(std::size_t cols, std::size_t rows, double eps) {
    std::vector<std::size_t> out;
    std::vector<bool> used(cols, false);
    for (std::size_t level = 1; (std::size_t{1} << (level - 1)) <= cols; ++level) {
        const std::size_t den = std::size_t{1} << level;
        for (std::size_t num = 1; num < den; num += 2) {
            const std::size_t b = std::min(cols - 1, num * cols / den);
            if (used[b]) continue;
            if (quantile_budget(eps, out.size() + 1, rows) == 0) return out;
            used[b] = true;
            out.push_back(b);
        }
    }
    return out;
}

SliceResult lusin_slice(const FunctionTable& table, double eps, const LusinOptions& opt) {
    if (!(eps > 0 && eps < 1)) throw DomainError("lusin_slice needs 0 < eps < 1");
    const std::size_t rows = table.rows(), cols = table.cols();
    if (rows < 8 || cols < 4)
        throw SizingError("table too small for the quantile step: " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    std::vector<std::size_t> xset = opt.columns.empty() ? dyadic_columns(cols, rows, eps) : opt.columns;
    for (std::size_t n = 1; n <= xset.size(); ++n) {
        if (xset[n - 1] >= cols) throw DomainError("column index out of range");
        if (quantile_budget(eps, n, rows) == 0)
            throw SizingError("column " + std::to_string(n) + " of X has no removal budget at " +
                              std::to_string(rows) + " rows");
    }

    std::vector<bool> removed(rows, false);
    SliceResult res;
    res.t_grid = table.t_grid();
    std::size_t quantile_removed = 0;
    for (std::size_t n = 1; n <= xset.size(); ++n) {
        const std::size_t b = xset[n - 1];
        std::vector<double> score(rows, 0.0);
        for (std::size_t a = 0; a < rows; ++a) {
            if (a > 0) score[a] = std::max(score[a], std::abs(table.at(a, b) - table.at(a - 1, b)));
            if (a + 1 < rows) score[a] = std::max(score[a], std::abs(table.at(a, b) - table.at(a + 1, b)));
        }
        std::vector<double> sorted = score;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>((rows - 1) / 2), sorted.end());
        const double median = sorted[(rows - 1) / 2];
        std::vector<std::size_t> cand;
        for (std::size_t a = 0; a < rows; ++a)
            if (!removed[a] && score[a] > median) cand.push_back(a);
        std::stable_sort(cand.begin(), cand.end(), [&](auto l, auto r) { return score[l] > score[r]; });
        const std::size_t take = std::min(cand.size(), quantile_budget(eps, n, rows));
        for (std::size_t i = 0; i < take; ++i) removed[cand[i]] = true;
        quantile_removed += take;
        res.quantile.emplace_back(b, take);
    }

    std::vector<long> ns;
    for (long n = 1; n <= static_cast<long>(cols / 2); ++n) ns.push_back(n);
    const auto profile = oscillation_profile(table, ns);
    std::size_t egorov_removed = 0;
    try {
        auto eg = egorov_extract(profile, eps / 2, opt.egorov_steps, removed);
        res.steps = eg.steps;
        std::vector<bool> keep(rows, false);
        for (auto a : eg.retained) keep[a] = true;
        for (std::size_t a = 0; a < rows; ++a) {
            if (!removed[a] && !keep[a]) ++egorov_removed;
            removed[a] = !keep[a];
        }
    } catch (const ProfileTooCoarse& e) {
        res.hypothesis_failure = std::string("x-oscillation is not uniformly small off any set of measure eps/2; ") +
                                 e.what();
    }

    for (std::size_t a = 0; a < rows; ++a)
        if (!removed[a]) res.retained.push_back(a);
    res.removed_measure = static_cast<double>(quantile_removed + egorov_removed) / static_cast<double>(rows);

    double modulus = 0;
    for (std::size_t i = 0; i < res.retained.size(); ++i) {
        const std::size_t a = res.retained[i];
        for (std::size_t b = 0; b + 1 < cols; ++b) modulus = std::max(modulus, std::abs(table.at(a, b + 1) - table.at(a, b)));
        if (i + 1 == res.retained.size()) continue;
        const std::size_t a2 = res.retained[i + 1];
        for (std::size_t b = 0; b < cols; ++b) {
            const std::size_t lo = b > 0 ? b - 1 : 0, hi = std::min(cols - 1, b + 1);
            for (std::size_t b2 = lo; b2 <= hi; ++b2)
                modulus = std::max(modulus, std::abs(table.at(a2, b2) - table.at(a, b)));
        }
    }
    res.joint_modulus = modulus;
    return res;
}

std::complex<double> fourier_coeff(const std::function<double(double)>& g, long n, std::size_t resolution,
                                   std::vector<double> breakpoints) {
    if (std::labs(n) > kFourierCap) throw DomainError("Fourier index above the cap " + std::to_string(kFourierCap));
    if (resolution < 1) throw DomainError("fourier_coeff needs resolution >= 1");
    const double w = static_cast<double>(n) * std::numbers::pi;
    const double re = piecewise_integral([&](double x) { return g(x) * std::cos(w * (x - 0.5)); }, breakpoints,
                                         0.0, 1.0, resolution);
    const double im = n == 0 ? 0.0
                             : -piecewise_integral([&](double x) { return g(x) * std::sin(w * (x - 0.5)); },
                                                   breakpoints, 0.0, 1.0, resolution);
    return {re, im};
}

std::complex<double> fourier_coeff(const curve1::Slice& slice, long n, std::size_t resolution) {
    return fourier_coeff([&](double x) { return slice.value(x); }, n, resolution, slice.features());
}

std::vector<std::complex<double>> fourier_sweep(const std::vector<Rational>& ts, long n, std::size_t resolution,
                                                const curve1::Config& cfg) {
    std::vector<std::complex<double>> out(ts.size());
    parallel_for(ts.size(), [&](std::size_t a) { out[a] = fourier_coeff(curve1::Slice(ts[a], cfg), n, resolution); });
    return out;
}

double sampled_modulus(const Rational& t, const Rational& delta, long samples, const curve1::Config& cfg,
                       std::size_t resolution) {
    if (samples < 1) throw DomainError("sampled_modulus needs at least one sample");
    if (delta.sign() <= 0) throw DomainError("sampled_modulus needs delta > 0");
    std::vector<Rational> us;
    for (long k = 1; k <= samples; ++k)
        for (int side : {1, -1}) {
            const Rational u = t + Rational(side * k, samples) * delta;
            if (Rational(0) <= u && u <= Rational(1)) us.push_back(u);
        }
    if (us.empty()) throw DomainError("no offset of " + t.str() + " by " + delta.str() + " stays in [0,1]");
    std::vector<double> d(us.size());
    parallel_for(us.size(), [&](std::size_t a) { d[a] = curve1::lp_distance(t, us[a], cfg, resolution).value; });
    return *std::max_element(d.begin(), d.end());
}

SobolevResult sobolev_norm(const curve1::Slice& slice, double p, double q, std::size_t resolution) {
    if (!(q > 1)) throw DomainError("sobolev_norm needs q > 1");
    const auto v = midpoint_samples([&](double x) { return slice.value(x); }, resolution);
    const auto d = midpoint_samples([&](double x) { return slice.dx(x); }, resolution);
    return {riemann_lp(v, p), riemann_lp(d, q)};
}

HolderResult holder_check(const curve1::Slice& slice, double q, std::span<const std::pair<double, double>> pairs) {
    if (!(q > 1)) throw DomainError("holder_check needs q > 1");
    const double qp = 1.0 - 1.0 / q;
    double constant = 0;
    // dyadic bins of |x - y|: bin k holds [2^k, 2^(k+1))
    std::vector<std::pair<int, double>> bins;
    for (const auto& [x, y] : pairs) {
        const double h = std::abs(x - y);
        if (h == 0) continue;
        const double df = std::abs(slice.value(x) - slice.value(y));
        constant = std::max(constant, df / std::pow(h, qp));
        const int k = static_cast<int>(std::floor(std::log2(h)));
        auto it = std::find_if(bins.begin(), bins.end(), [k](const auto& b) { return b.first == k; });
        if (it == bins.end()) bins.emplace_back(k, df);
        else it->second = std::max(it->second, df);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
    for (const auto& [k, df] : bins) {
        if (df <= 0) continue;
        const double lx = (k + 0.5) * std::numbers::ln2, ly = std::log(df);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, m += 1;
    }
    const double den = m * sxx - sx * sx;
    const double fit = m >= 2 && den > 0 ? (m * sxy - sx * sy) / den : std::nan("");
    return {constant, fit};
}

double pointwise_from_lp(double eps, double holder_constant, double q, double p, double lp_distance) {
    if (!(eps > 0) || !(q > 1) || !(p >= 1)) throw DomainError("pointwise_from_lp needs eps > 0, q > 1, p >= 1");
    const double qp = 1.0 - 1.0 / q;
    double eta = eps / 2;
    if (holder_constant > 0) eta = std::min(eta, 2.0 * std::pow(eps / (4.0 * holder_constant), 1.0 / qp));
    eta *= 0.99;
    return eps / 2 + lp_distance / std::pow(eta, 1.0 / p);
}

}  // namespace lpcurves::analysis
