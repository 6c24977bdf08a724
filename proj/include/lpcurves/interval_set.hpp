#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpcurves/rational.hpp"

namespace lpcurves {

/// Closed interval [lo, hi] with exact endpoints; lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational a, Rational b);
    Rational length() const { return hi - lo; }
    bool contains(const Rational& t) const { return lo <= t && t <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Finite union of closed subintervals of [0,1], stored sorted, disjoint and
/// non-touching (touching inputs are merged).
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> parts);
    static IntervalSet unit();
    static IntervalSet single(const Rational& a, const Rational& b);

    const std::vector<Interval>& components() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    Rational measure() const;
    bool contains(const Rational& t) const;
    /// Component with t in its open interior, if any.
    std::optional<Interval> interior_component(const Rational& t) const;

    IntervalSet intersect(const Interval& iv) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet unite(const IntervalSet& other) const;
    /// Closure of [0,1] minus this set; degenerate leftovers are dropped, so
    /// the result is the complement up to a finite set of points.
    IntervalSet complement() const;

    bool operator==(const IntervalSet&) const = default;

    /// One "a/b c/d" line per component.
    std::string to_text() const;
    static IntervalSet from_text(std::istream& in);
    static IntervalSet from_text(const std::string& text);

private:
    std::vector<Interval> parts_;
};

}  // namespace lpcurves
