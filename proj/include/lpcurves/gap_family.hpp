#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lpcurves/interval_set.hpp"
#include "lpcurves/rational.hpp"

namespace lpcurves {

/// Open gap (r, s) of K_i^C with its enumeration index j >= 1.
struct Gap {
    BigInt index;
    Rational r;
    Rational s;

    Rational length() const { return s - r; }
    Rational midpoint() const { return (r + s) / Rational(2); }
    bool contains(const Rational& t) const { return r < t && t < s; }
};

/// Fat Cantor template on [0,1]: at level n >= 1 the open middle interval of
/// length 2^-(n(n+1)/2 + 3) is removed from each of the 2^(n-1) remaining
/// closed intervals. Template gaps are indexed g = 2^(n-1) - 1 + k, k = 1..2^(n-1)
/// left to right within a level.
namespace fat_cantor {

struct TemplateGap {
    BigInt index;
    long level;
    BigInt k;
    Rational r;
    Rational s;
};

/// Exponent e_n with gap length 2^-e_n at level n.
long length_exponent(long level);
Rational gap_length(long level);
/// Length of each remaining interval before level `level` removes its gaps.
Rational remaining_length(long level);

TemplateGap gap(const BigInt& g);
BigInt index_of(long level, const BigInt& k);

/// Template gap containing u in [0,1], or none when u is in the template set.
/// Exact and terminating for every rational u.
std::optional<TemplateGap> locate(const Rational& u);

/// For u in the template set: the gap removed at `level` from the remaining
/// interval containing u.
TemplateGap level_gap_near(const Rational& u, long level);

/// Total template gap length through `levels` levels, and an exact bound on the rest.
Rational partial_gap_sum(long levels);
Rational gap_sum_tail_bound(long levels);

}  // namespace fat_cantor

/// Cantor pairing of positive integers: (1,1)->1, (1,2)->2, (2,1)->3, ...
BigInt pair_index(const BigInt& a, const BigInt& b);
std::pair<BigInt, BigInt> unpair_index(const BigInt& j);

/// Nested family K_1 ⊂ K_2 ⊂ ... of closed nowhere dense sets given by the
/// gaps (r_{i,j}, s_{i,j}) of K_i^C.
///
/// The canonical family puts the fat Cantor template in [0,1] for stage 1 and
/// an affine copy of the template inside every stage-i gap for stage i+1, so
/// each stage-(i+1) gap lies inside a stage-i gap and μ(K_i^C) = α^i with
/// α = Σ_n 2^(n-1-e_n) ≈ 0.1026. Stage-i indices compose as
/// j_i = pair_index(j_{i-1}, g). An explicit family takes finite gap lists.
class GapFamily {
public:
    static GapFamily canonical();
    /// stages[i-1] lists the open gaps of stage i as intervals [r, s].
    static GapFamily explicit_stages(std::vector<std::vector<Interval>> stages);

    bool is_canonical() const { return std::holds_alternative<Canonical>(impl_); }
    /// Highest stage available, none when unbounded.
    std::optional<long> max_stage() const;

    Gap gap(long stage, const BigInt& j) const;
    std::optional<Gap> locate(long stage, const Rational& t) const;
    /// Smallest i <= max_stage with t in K_i.
    std::optional<long> first_stage_containing(const Rational& t, long max_stage) const;

    /// For t in K_stage: `count` distinct stage gaps whose endpoints converge to t.
    std::vector<Gap> accumulating(long stage, const Rational& t, std::size_t count) const;

private:
    struct Canonical {};
    struct Explicit {
        std::vector<std::vector<Gap>> stages;
    };
    std::variant<Canonical, Explicit> impl_;

    explicit GapFamily(std::variant<Canonical, Explicit> impl) : impl_(std::move(impl)) {}
};

}  // namespace lpcurves
