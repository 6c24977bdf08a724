#include "lpcurves/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "lpcurves/errors.hpp"

namespace lpcurves {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::pow2(long e) {
    BigInt one = 1;
    BigInt p;
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p, BigInt(1)) : Rational(BigInt(1), p);
}

namespace {

BigInt parse_int(std::string_view s) {
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw ParseError("malformed integer '" + std::string(s) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    // decimal with optional exponent
    std::string_view mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        exp10 = parse_int(text.substr(e + 1)).get_si();
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_dot) throw ParseError("malformed number '" + std::string(text) + "'");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            throw ParseError("malformed number '" + std::string(text) + "'");
        }
    }
    if (digits.empty()) throw ParseError("malformed number '" + std::string(text) + "'");
    BigInt n(digits, 10);
    if (neg) n = -n;
    const long shift = exp10 - frac_digits;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    return shift >= 0 ? Rational(n * p10, BigInt(1)) : Rational(n, p10);
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw DomainError("non-finite double has no rational value");
    Rational r;
    r.q_ = mpq_class(v);
    r.q_.canonicalize();
    return r;
}

double log_bigint(const BigInt& v) {
    if (v <= 0) throw DomainError("log of non-positive integer");
    long e = 0;
    const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

double Rational::log() const {
    if (sign() <= 0) throw DomainError("log of non-positive rational");
    return log_bigint(q_.get_num()) - log_bigint(q_.get_den());
}

BigInt Rational::floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

BigInt Rational::ceil() const {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

long exact_log2(const BigInt& v) {
    if (v <= 0) return -1;
    const auto low = mpz_scan1(v.get_mpz_t(), 0);
    return (bit_length(v) == low + 1) ? static_cast<long>(low) : -1;
}

}  // namespace lpcurves
