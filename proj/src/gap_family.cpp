#include "lpcurves/gap_family.hpp"

#include <algorithm>

#include "lpcurves/errors.hpp"

namespace lpcurves {
namespace fat_cantor {

long length_exponent(long level) { return level * (level + 1) / 2 + 3; }

Rational gap_length(long level) { return Rational::pow2(-length_exponent(level)); }

Rational remaining_length(long level) {
    Rational len = 1;
    for (long m = 1; m < level; ++m) len = (len - gap_length(m)) / Rational(2);
    return len;
}

BigInt index_of(long level, const BigInt& k) {
    BigInt base;
    mpz_ui_pow_ui(base.get_mpz_t(), 2, static_cast<unsigned long>(level - 1));
    return base - 1 + k;
}

TemplateGap gap(const BigInt& g) {
    if (g < 1) throw DomainError("template gap index must be >= 1");
    const long n = static_cast<long>(bit_length(g));
    BigInt half;
    mpz_ui_pow_ui(half.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
    const BigInt k = g - half + 1;
    const BigInt path = k - 1;

    Rational left = 0;
    Rational len = 1;
    for (long m = 1; m < n; ++m) {
        const Rational gm = gap_length(m);
        const Rational child = (len - gm) / Rational(2);
        if (mpz_tstbit(path.get_mpz_t(), static_cast<mp_bitcnt_t>(n - 1 - m))) left += child + gm;
        len = child;
    }
    const Rational c = left + len / Rational(2);
    const Rational h = gap_length(n) / Rational(2);
    return TemplateGap{g, n, k, c - h, c + h};
}

namespace {

// Walks the template descent for u; `visit(level, left, len, path)` returns
// true to stop. Levels are visited while the exact cutoff allows a hit.
template <class Visit>
void walk(const Rational& u, Visit&& visit, long force_levels = 0) {
    const BigInt b = u.den();
    const long dyadic_exp = exact_log2(b);
    Rational left = 0;
    Rational len = 1;
    BigInt path = 0;
    for (long n = 1;; ++n) {
        if (n > force_levels && n >= 2) {
            // Level-n centres are dyadic with denominator 2^(e_{n-1}+2); the gap
            // half-length is 2^-(e_n+1). A rational a/b != centre sits at distance
            // >= 1/(b 2^(e_{n-1}+2)), which clears the gap once b <= 2^(n-1).
            BigInt lim;
            mpz_ui_pow_ui(lim.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
            const bool far_enough = b <= lim;
            const bool centre_possible =
                dyadic_exp >= 0 && length_exponent(n - 1) + 2 <= dyadic_exp;
            if (far_enough && !centre_possible) return;
        }
        if (visit(n, left, len, path)) return;
        const Rational gm = gap_length(n);
        const Rational child = (len - gm) / Rational(2);
        const Rational c = left + len / Rational(2);
        path *= 2;
        if (c < u) {
            left += child + gm;
            path += 1;
        }
        len = child;
    }
}

}  // namespace

std::optional<TemplateGap> locate(const Rational& u) {
    if (u < Rational(0) || Rational(1) < u) throw DomainError("template point outside [0,1]: " + u.str());
    std::optional<TemplateGap> hit;
    walk(u, [&](long n, const Rational& left, const Rational& len, const BigInt& path) {
        const Rational c = left + len / Rational(2);
        const Rational h = gap_length(n) / Rational(2);
        if ((u - c).abs() < h) {
            const BigInt k = path + 1;
            hit = TemplateGap{index_of(n, k), n, k, c - h, c + h};
            return true;
        }
        return false;
    });
    return hit;
}

TemplateGap level_gap_near(const Rational& u, long level) {
    std::optional<TemplateGap> out;
    walk(
        u,
        [&](long n, const Rational& left, const Rational& len, const BigInt& path) {
            const Rational c = left + len / Rational(2);
            const Rational h = gap_length(n) / Rational(2);
            if (n < level && (u - c).abs() < h)
                throw DomainError("point " + u.str() + " lies in a template gap");
            if (n == level) {
                const BigInt k = path + 1;
                out = TemplateGap{index_of(n, k), n, k, c - h, c + h};
                return true;
            }
            return false;
        },
        level);
    return *out;
}

Rational partial_gap_sum(long levels) {
    Rational s;
    for (long n = 1; n <= levels; ++n) s += Rational::pow2(n - 1) * gap_length(n);
    return s;
}

Rational gap_sum_tail_bound(long levels) {
    // Σ_{n>N} 2^(n-1-e_n): consecutive terms shrink by 2^-(n+1)·2 <= 1/2 for n > N >= 1,
    // so the tail is at most twice its first term.
    const long n = levels + 1;
    return Rational(2) * Rational::pow2(n - 1 - length_exponent(n));
}

}  // namespace fat_cantor

BigInt pair_index(const BigInt& a, const BigInt& b) {
    if (a < 1 || b < 1) throw DomainError("pair_index needs positive integers");
    const BigInt s = a + b - 1;
    return s * (s - 1) / 2 + a;
}

std::pair<BigInt, BigInt> unpair_index(const BigInt& j) {
    if (j < 1) throw DomainError("unpair_index needs a positive integer");
    // smallest s with s(s+1)/2 >= j
    BigInt s = sqrt(BigInt(2) * j);
    while (s * (s + 1) / 2 < j) ++s;
    while (s > 1 && (s - 1) * s / 2 >= j) --s;
    const BigInt a = j - s * (s - 1) / 2;
    return {a, s + 1 - a};
}

GapFamily GapFamily::canonical() { return GapFamily(Canonical{}); }

GapFamily GapFamily::explicit_stages(std::vector<std::vector<Interval>> stages) {
    Explicit ex;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        auto& list = stages[i];
        std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Gap> gaps;
        for (std::size_t j = 0; j < list.size(); ++j) {
            const auto& iv = list[j];
            if (!(iv.lo < iv.hi) || iv.lo < Rational(0) || Rational(1) < iv.hi)
                throw DomainError("stage " + std::to_string(i + 1) + ": gap must satisfy 0 <= r < s <= 1");
            if (iv.lo == Rational(0) || iv.hi == Rational(1))
                throw DomainError("stage " + std::to_string(i + 1) + ": 0 and 1 must stay in K");
            if (j > 0 && !(list[j - 1].hi < iv.lo))
                throw DomainError("stage " + std::to_string(i + 1) + ": gaps must be at positive distance");
            gaps.push_back(Gap{BigInt(static_cast<unsigned long>(j + 1)), iv.lo, iv.hi});
        }
        if (i > 0) {
            for (const auto& g : gaps) {
                const bool inside = std::any_of(ex.stages.back().begin(), ex.stages.back().end(),
                                                [&](const Gap& p) { return p.r <= g.r && g.s <= p.s; });
                if (!inside)
                    throw DomainError("stage " + std::to_string(i + 1) + " gap (" + g.r.str() + ", " + g.s.str() +
                                      ") is not inside a stage-" + std::to_string(i) + " gap");
            }
        }
        ex.stages.push_back(std::move(gaps));
    }
    if (ex.stages.empty()) throw DomainError("explicit gap family needs at least one stage");
    return GapFamily(std::move(ex));
}

std::optional<long> GapFamily::max_stage() const {
    if (const auto* ex = std::get_if<Explicit>(&impl_)) return static_cast<long>(ex->stages.size());
    return std::nullopt;
}

namespace {

void check_stage(long stage, std::optional<long> max) {
    if (stage < 1) throw DomainError("stage must be >= 1");
    if (max && stage > *max) throw DomainError("stage " + std::to_string(stage) + " beyond explicit family");
}

Gap nest(const Gap& parent, const fat_cantor::TemplateGap& tg) {
    const Rational l = parent.length();
    return Gap{pair_index(parent.index, tg.index), parent.r + l * tg.r, parent.r + l * tg.s};
}

}  // namespace

Gap GapFamily::gap(long stage, const BigInt& j) const {
    check_stage(stage, max_stage());
    if (j < 1) throw DomainError("gap index must be >= 1");
    if (const auto* ex = std::get_if<Explicit>(&impl_)) {
        const auto& list = ex->stages[static_cast<std::size_t>(stage - 1)];
        if (j > BigInt(static_cast<unsigned long>(list.size())))
            throw DomainError("gap index " + j.get_str() + " beyond stage list");
        return list[j.get_ui() - 1];
    }
    if (stage == 1) {
        const auto tg = fat_cantor::gap(j);
        return Gap{j, tg.r, tg.s};
    }
    const auto [parent_j, g] = unpair_index(j);
    return nest(gap(stage - 1, parent_j), fat_cantor::gap(g));
}

std::optional<Gap> GapFamily::locate(long stage, const Rational& t) const {
    check_stage(stage, max_stage());
    if (t < Rational(0) || Rational(1) < t) throw DomainError("time outside [0,1]: " + t.str());
    if (const auto* ex = std::get_if<Explicit>(&impl_)) {
        const auto& list = ex->stages[static_cast<std::size_t>(stage - 1)];
        auto it = std::upper_bound(list.begin(), list.end(), t,
                                   [](const Rational& v, const Gap& g) { return v < g.r; });
        if (it == list.begin()) return std::nullopt;
        --it;
        return it->contains(t) ? std::optional<Gap>(*it) : std::nullopt;
    }
    std::optional<Gap> cur;
    Rational u = t;
    for (long s = 1; s <= stage; ++s) {
        const auto tg = fat_cantor::locate(u);
        if (!tg) return std::nullopt;
        cur = cur ? nest(*cur, *tg) : Gap{tg->index, tg->r, tg->s};
        u = (u - tg->r) / (tg->s - tg->r);
    }
    return cur;
}

std::optional<long> GapFamily::first_stage_containing(const Rational& t, long max_stage) const {
    for (long s = 1; s <= max_stage; ++s) {
        if (this->max_stage() && s > *this->max_stage()) break;
        if (!locate(s, t)) return s;
    }
    return std::nullopt;
}

std::vector<Gap> GapFamily::accumulating(long stage, const Rational& t, std::size_t count) const {
    check_stage(stage, max_stage());
    if (!is_canonical())
        throw UnsupportedError("explicit gap families are finite; no gaps accumulate at a point");
    if (locate(stage, t)) throw NotInKError(t.str() + " is not in K_" + std::to_string(stage));

    // Enclosing chain down to the first stage whose template does not cover t.
    std::optional<Gap> chain;
    Rational u = t;
    long depth = 1;
    while (auto tg = fat_cantor::locate(u)) {
        chain = chain ? nest(*chain, *tg) : Gap{tg->index, tg->r, tg->s};
        u = (u - tg->r) / (tg->s - tg->r);
        ++depth;
    }

    const auto central = fat_cantor::gap(BigInt(1));
    std::vector<Gap> out;
    for (long level = 1; out.size() < count; ++level) {
        const auto tg = fat_cantor::level_gap_near(u, level);
        Gap g = chain ? nest(*chain, tg) : Gap{tg.index, tg.r, tg.s};
        for (long s = depth + 1; s <= stage; ++s) g = nest(g, central);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace lpcurves
