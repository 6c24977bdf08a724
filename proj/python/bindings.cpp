// Python bindings. Rationals cross the boundary as "num/den" strings; the
// package wrapper turns them into fractions.Fraction.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpcurves/analysis.hpp"
#include "lpcurves/errors.hpp"

namespace py = pybind11;
using namespace lpcurves;
namespace an = lpcurves::analysis;

namespace {

Rational rat(const std::string& s) { return Rational::parse(s); }

curve1::Config c1(double p, long depth) {
    curve1::Config cfg;
    cfg.p = p;
    cfg.depth = depth;
    cfg.validate();
    return cfg;
}

curve2::Config c2(double p, long max_m) {
    curve2::Config cfg;
    cfg.p = p;
    cfg.max_m = max_m;
    cfg.validate();
    return cfg;
}

IntervalSet interval_set(const std::vector<std::pair<std::string, std::string>>& parts) {
    std::vector<Interval> out;
    for (const auto& [lo, hi] : parts) out.push_back({rat(lo), rat(hi)});
    return IntervalSet(std::move(out));
}

py::dict slice_dict(const an::SliceResult& r) {
    py::dict d;
    d["retained"] = r.retained;
    d["removed_measure"] = r.removed_measure;
    py::list steps;
    for (const auto& st : r.steps) {
        py::dict s;
        s["j"] = st.j;
        s["n"] = st.n;
        s["eta"] = st.eta;
        s["removed"] = st.removed;
        steps.append(s);
    }
    d["steps"] = steps;
    d["quantile"] = r.quantile;
    d["joint_modulus"] = r.joint_modulus;
    d["hypothesis_failure"] = r.hypothesis_failure;
    return d;
}

an::FunctionTable table(std::vector<double> ts, std::vector<double> xs, const std::vector<std::vector<double>>& rows) {
    std::vector<double> v;
    for (const auto& row : rows) {
        if (row.size() != xs.size()) throw DomainError("table row length differs from the x grid");
        v.insert(v.end(), row.begin(), row.end());
    }
    return an::FunctionTable(std::move(ts), std::move(xs), std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "L^p-continuous curves with pathological pointwise behaviour";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<SizingError>(m, "SizingError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);

    m.def("measure", [](const std::vector<std::pair<std::string, std::string>>& parts) {
        return interval_set(parts).measure().str();
    });
    m.def(
        "locate_gap",
        [](long stage, const std::string& t) -> std::optional<std::tuple<std::string, std::string, std::string>> {
            const auto g = GapFamily::canonical().locate(stage, rat(t));
            if (!g) return std::nullopt;
            return std::make_tuple(g->index.get_str(), g->r.str(), g->s.str());
        },
        py::arg("stage"), py::arg("t"));

    m.def(
        "eval1",
        [](const std::string& t, double x, double p, long depth) {
            const auto r = curve1::eval(rat(t), x, c1(p, depth));
            return std::make_pair(r.value, r.tail_bound);
        },
        py::arg("t"), py::arg("x"), py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "dx1", [](const std::string& t, double x, double p, long depth) {
            return curve1::dx_eval(rat(t), x, c1(p, depth)).value;
        },
        py::arg("t"), py::arg("x"), py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "slice1",
        [](const std::string& t, const std::vector<double>& xs, double p, long depth) {
            const curve1::Slice s(rat(t), c1(p, depth));
            std::vector<double> out;
            for (double x : xs) out.push_back(s.value(x));
            return out;
        },
        py::arg("t"), py::arg("xs"), py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "norm1", [](long stage, const std::string& t, double p) {
            return curve1::lp_norm_term(stage, rat(t), p, GapFamily::canonical()).value;
        },
        py::arg("stage"), py::arg("t"), py::arg("p") = 1.0);
    m.def(
        "distance1",
        [](const std::string& t, const std::string& u, double p, long depth) {
            return curve1::lp_distance(rat(t), rat(u), c1(p, depth)).value;
        },
        py::arg("t"), py::arg("u"), py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "witness1",
        [](const std::string& t, long blocks, double p, long depth) {
            const auto w = curve1::witness(rat(t), c1(p, depth), blocks);
            std::vector<std::tuple<std::string, std::string, std::string>> out;
            for (const auto& pt : w.points()) out.emplace_back(pt.t.str(), pt.gap.get_str(), curve1::role_name(pt.role));
            return std::make_pair(w.epsilon, out);
        },
        py::arg("t"), py::arg("blocks") = 4, py::arg("p") = 1.0, py::arg("depth") = 6);

    m.def("q", [](long k) { return curve2::q(k).str(); });
    m.def(
        "eval2", [](const std::string& t, const std::string& x, long max_m) {
            return curve2::eval(rat(t), rat(x), c2(1.0, max_m)).value;
        },
        py::arg("t"), py::arg("x"), py::arg("max_m") = 12);
    m.def(
        "norm2", [](long mm, long k, const std::string& t, double p) {
            return curve2::lp_norm_term(mm, BigInt(k), rat(t), p);
        },
        py::arg("m"), py::arg("k"), py::arg("t"), py::arg("p") = 1.0);
    m.def(
        "witness2",
        [](const std::vector<std::pair<std::string, std::string>>& T, const std::string& t, long stages) {
            const auto tr = curve2::witness(interval_set(T), rat(t), stages, curve2::Config{});
            py::list out;
            for (const auto& st : tr.stages) {
                py::dict d;
                d["index"] = st.index;
                d["m"] = st.m;
                d["q"] = st.qm.str();
                d["k"] = st.k.get_str();
                d["covered_measure"] = st.covered_measure.str();
                d["certificate_bound"] = st.certificate_bound().str();
                d["certified"] = st.certified();
                d["time_count"] = st.time_count().get_str();
                std::vector<std::tuple<std::string, std::string, std::string>> runs;
                for (const auto& r : st.runs) runs.emplace_back(r.first.str(), r.step.str(), r.count.get_str());
                d["runs"] = runs;
                out.append(d);
            }
            return out;
        },
        py::arg("T"), py::arg("t"), py::arg("stages") = 3);

    m.def("oscillation", [](const std::vector<double>& xs, const std::vector<double>& g, double delta) {
        return an::oscillation(xs, g, delta);
    });
    m.def(
        "cauchy_certificate",
        [](const std::vector<double>& v, double eps, std::size_t n0) -> std::optional<std::pair<std::size_t, std::size_t>> {
            const auto r = an::cauchy_certificate(v, eps, n0);
            if (!r.diverged) return std::nullopt;
            return std::make_pair(r.n, r.m);
        },
        py::arg("values"), py::arg("eps"), py::arg("n0") = 0);
    m.def(
        "egorov_extract",
        [](std::vector<double> t_grid, std::vector<long> ns, std::vector<std::vector<double>> omega, double eps,
           long steps) {
            return slice_dict(an::egorov_extract({std::move(t_grid), std::move(ns), std::move(omega)}, eps, steps));
        },
        py::arg("t_grid"), py::arg("ns"), py::arg("omega"), py::arg("eps"), py::arg("steps") = 3);
    m.def(
        "lusin_slice",
        [](std::vector<double> ts, std::vector<double> xs, const std::vector<std::vector<double>>& rows, double eps,
           long steps) {
            an::LusinOptions opt;
            opt.egorov_steps = steps;
            return slice_dict(an::lusin_slice(table(std::move(ts), std::move(xs), rows), eps, opt));
        },
        py::arg("t_grid"), py::arg("x_grid"), py::arg("values"), py::arg("eps"), py::arg("steps") = 3);
    m.def(
        "table1",
        [](const std::vector<std::string>& ts, const std::vector<double>& xs, double p, long depth) {
            std::vector<Rational> tr;
            for (const auto& t : ts) tr.push_back(rat(t));
            const auto tb = an::curve1_table(tr, xs, c1(p, depth));
            std::vector<std::vector<double>> rows;
            for (std::size_t a = 0; a < tb.rows(); ++a) rows.emplace_back(tb.row(a).begin(), tb.row(a).end());
            return rows;
        },
        py::arg("ts"), py::arg("xs"), py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "fourier1",
        [](const std::string& t, long n, std::size_t resolution, double p, long depth) {
            return an::fourier_coeff(curve1::Slice(rat(t), c1(p, depth)), n, resolution);
        },
        py::arg("t"), py::arg("n"), py::arg("resolution") = 64, py::arg("p") = 1.0, py::arg("depth") = 6);
    m.def(
        "sampled_modulus",
        [](const std::string& t, const std::string& delta, long samples, double p, long depth) {
            return an::sampled_modulus(rat(t), rat(delta), samples, c1(p, depth));
        },
        py::arg("t"), py::arg("delta"), py::arg("samples") = 8, py::arg("p") = 1.0, py::arg("depth") = 6);
}
