#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace lpcurves {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "a/b", an integer, or a finite decimal such as "0.125" or "1e-3".
    static Rational parse(std::string_view text);
    /// Exact binary value of a finite double.
    static Rational from_double(double v);
    static Rational pow2(long e);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    double to_double() const { return q_.get_d(); }
    /// Natural log of a positive value, accurate far below the double range.
    double log() const;
    BigInt floor() const;
    BigInt ceil() const;
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    Rational abs() const { return Rational(::abs(q_)); }

    /// "num/den" in lowest terms (integers keep the "/1").
    std::string str() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Number of bits of |v|; 0 for v == 0.
std::size_t bit_length(const BigInt& v);
/// Exponent e if v == 2^e, otherwise -1.
long exact_log2(const BigInt& v);
double log_bigint(const BigInt& v);

}  // namespace lpcurves

template <>
struct std::hash<lpcurves::Rational> {
    std::size_t operator()(const lpcurves::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
