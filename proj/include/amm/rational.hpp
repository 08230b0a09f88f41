#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace amm {

// Exact arbitrary-precision rational, kept in lowest terms with a positive
// denominator. Every amount, reserve and price in the model is carried by
// this type (or one of the sign-restricted wrappers below), so all state
// arithmetic is bit-exact; the only approximate operation in the whole
// library is sqrt_approx.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);

    // Accepts "num/den" or plain "num", with an optional leading sign.
    // The denominator, when present, must be a positive integer.
    static Rational parse(std::string_view s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }

    Rational operator-() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    // Canonical "num/den" form, e.g. "3/2", "-12/1", "0/1".
    std::string str() const;
    // Rounded decimal approximation with `digits` fractional digits.
    std::string decimal(int digits) const;
    double to_double() const { return v_.get_d(); }

    // Namespace-scope operators (not hidden friends) so that the wrapper
    // types below reach them through their implicit conversions.
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    explicit Rational(mpq_class q) : v_(std::move(q)) {}
    mpq_class v_;
};

inline Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
inline Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
inline Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
Rational operator/(const Rational& a, const Rational& b);

inline bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

inline Rational& Rational::operator/=(const Rational& o) { return *this = *this / o; }

// Nonnegative rational. Construction from a negative value throws
// std::domain_error; subtraction lives on Rational, so narrowing back is an
// explicit, checked step.
class NonNegRational {
public:
    NonNegRational() = default;
    NonNegRational(long n) : NonNegRational(Rational(n)) {}
    explicit NonNegRational(Rational r);

    operator const Rational&() const { return v_; }
    const Rational& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }
    std::string str() const { return v_.str(); }

private:
    Rational v_;
};

// Strictly positive rational; no default value exists.
class PosRational {
public:
    PosRational(long n) : PosRational(Rational(n)) {}
    explicit PosRational(Rational r);

    operator const Rational&() const { return v_; }
    operator NonNegRational() const { return NonNegRational(v_); }
    const Rational& value() const { return v_; }
    std::string str() const { return v_.str(); }

private:
    Rational v_;
};

// 10^-18; far below every tolerance used by the arbitrage checks.
PosRational default_sqrt_tol();

// Floor-directed square root with |s*s - v| <= rel_tol * max(v, 1).
// Perfect squares of rationals (integer-square numerator and denominator)
// are returned exactly.
NonNegRational sqrt_approx(const NonNegRational& v, const PosRational& rel_tol);
NonNegRational sqrt_approx(const NonNegRational& v);

} // namespace amm
