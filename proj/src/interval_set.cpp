#include "lpcurves/interval_set.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "lpcurves/errors.hpp"

namespace lpcurves {

Interval::Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
    if (hi < lo) throw DomainError("interval with hi < lo: [" + lo.str() + ", " + hi.str() + "]");
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
    for (const auto& p : parts)
        if (p.lo < Rational(0) || Rational(1) < p.hi)
            throw DomainError("interval [" + p.lo.str() + ", " + p.hi.str() + "] leaves [0,1]");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (auto& p : parts) {
        if (!parts_.empty() && p.lo <= parts_.back().hi) {
            if (parts_.back().hi < p.hi) parts_.back().hi = p.hi;
        } else {
            parts_.push_back(std::move(p));
        }
    }
}

IntervalSet IntervalSet::unit() { return IntervalSet({Interval(0, 1)}); }

IntervalSet IntervalSet::single(const Rational& a, const Rational& b) {
    return IntervalSet({Interval(a, b)});
}

Rational IntervalSet::measure() const {
    Rational m;
    for (const auto& p : parts_) m += p.length();
    return m;
}

bool IntervalSet::contains(const Rational& t) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), t,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(t);
}

std::optional<Interval> IntervalSet::interior_component(const Rational& t) const {
    for (const auto& p : parts_)
        if (p.lo < t && t < p.hi) return p;
    return std::nullopt;
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
    IntervalSet out;
    for (const auto& p : parts_) {
        const Rational& lo = max(p.lo, iv.lo);
        const Rational& hi = min(p.hi, iv.hi);
        if (lo <= hi) out.parts_.emplace_back(lo, hi);
    }
    return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> acc;
    std::size_t a = 0, b = 0;
    while (a < parts_.size() && b < other.parts_.size()) {
        const auto& x = parts_[a];
        const auto& y = other.parts_[b];
        const Rational& lo = max(x.lo, y.lo);
        const Rational& hi = min(x.hi, y.hi);
        if (lo <= hi) acc.emplace_back(lo, hi);
        if (x.hi < y.hi) ++a; else ++b;
    }
    // pieces of disjoint inputs are already disjoint and sorted
    IntervalSet out;
    out.parts_ = std::move(acc);
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::complement() const {
    std::vector<Interval> out;
    Rational cursor = 0;
    for (const auto& p : parts_) {
        if (cursor < p.lo) out.emplace_back(cursor, p.lo);
        cursor = p.hi;
    }
    if (cursor < Rational(1)) out.emplace_back(cursor, 1);
    IntervalSet s;
    s.parts_ = std::move(out);
    return s;
}

std::string IntervalSet::to_text() const {
    std::string s;
    for (const auto& p : parts_) s += p.lo.str() + " " + p.hi.str() + "\n";
    return s;
}

IntervalSet IntervalSet::from_text(std::istream& in) {
    std::vector<Interval> parts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b) || (ls >> extra))
            throw ParseError("interval set line " + std::to_string(lineno) + ": expected 'a/b c/d'");
        parts.emplace_back(Rational::parse(a), Rational::parse(b));
    }
    return IntervalSet(std::move(parts));
}

IntervalSet IntervalSet::from_text(const std::string& text) {
    std::istringstream in(text);
    return from_text(in);
}

}  // namespace lpcurves
