#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amm/rational.hpp"

#include <random>
#include <stdexcept>

using amm::NonNegRational;
using amm::PosRational;
using amm::Rational;

namespace {

// Independent integer square root: plain binary search, no GMP sqrt.
mpz_class isqrt_binary(const mpz_class& n) {
    mpz_class lo = 0, hi = n + 1;
    while (hi - lo > 1) {
        const mpz_class mid = (lo + hi) / 2;
        if (mid * mid <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rational rand_rational(std::mt19937_64& rng, long num_range, long den_range) {
    const long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
    const long den = 1 + static_cast<long>(rng() % den_range);
    return Rational(num, den);
}

} // namespace

TEST_CASE("parse and canonical form") {
    CHECK(Rational::parse("3/2").str() == "3/2");
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("6").str() == "6/1");
    CHECK(Rational::parse("-12/8").str() == "-3/2");
    CHECK(Rational::parse("+7/7").str() == "1/1");
    CHECK(Rational::parse("0/5").str() == "0/1");
    CHECK(Rational::parse("340282366920938463463374607431768211456/3").num() ==
          mpz_class(1) << 128);

    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(" 1/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("field arithmetic is exact") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const Rational a = rand_rational(rng, 1000, 50);
        const Rational b = rand_rational(rng, 1000, 50);
        CHECK((a + b) - b == a);
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(a * b == b * a);
        CHECK(a - a == Rational(0));
        CHECK(-(-a) == a);
    }
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("ordering is total and consistent with arithmetic") {
    const Rational a(1, 3), b(1, 2), c(2, 3);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(a < c);
    CHECK(a <= a);
    CHECK(c > b);
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(5, 10) == Rational(1, 2));
    CHECK(Rational(1, 3).abs() == Rational(1, 3));
    CHECK(Rational(-1, 3).abs() == Rational(1, 3));
}

TEST_CASE("decimal rendering rounds half away from zero") {
    CHECK(Rational(3, 2).decimal(2) == "1.50");
    CHECK(Rational(1, 3).decimal(4) == "0.3333");
    CHECK(Rational(2, 3).decimal(4) == "0.6667");
    CHECK(Rational(-12, 1).decimal(2) == "-12.00");
    CHECK(Rational(1, 2).decimal(0) == "1");
    CHECK(Rational(-1, 2).decimal(0) == "-1");
    CHECK(Rational(0).decimal(3) == "0.000");
}

TEST_CASE("sign-restricted wrappers reject out-of-range values") {
    CHECK_THROWS_AS(NonNegRational(Rational(-1, 2)), std::domain_error);
    CHECK_THROWS_AS(PosRational(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(PosRational(Rational(-3)), std::domain_error);
    CHECK(NonNegRational(Rational(0)).is_zero());
    CHECK(PosRational(Rational(3, 2)).str() == "3/2");
    // Arithmetic on wrappers falls through to Rational.
    const PosRational p(Rational(1, 2));
    const NonNegRational n(Rational(3, 2));
    CHECK(p + n == Rational(2));
    CHECK(n - p == Rational(1));
    CHECK(p < n);
}

TEST_CASE("sqrt of zero and of perfect squares is exact") {
    CHECK(amm::sqrt_approx(NonNegRational(Rational(0))) == Rational(0));
    CHECK(amm::sqrt_approx(NonNegRational(Rational(81))) == Rational(9));
    CHECK(amm::sqrt_approx(NonNegRational(Rational(9, 4))) == Rational(3, 2));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const long p = 1 + static_cast<long>(rng() % 100000);
        const long q = 1 + static_cast<long>(rng() % 1000);
        const Rational root(p, q);
        CHECK(amm::sqrt_approx(NonNegRational(root * root)) == root);
    }
}

TEST_CASE("sqrt approximation satisfies its bound from below") {
    std::mt19937_64 rng(13);
    const Rational tol = amm::default_sqrt_tol();
    for (int i = 0; i < 1000; ++i) {
        const long p = 1 + static_cast<long>(rng() % 1000000);
        const long q = 1 + static_cast<long>(rng() % 1000);
        const NonNegRational v(Rational(p, q));
        const Rational s = amm::sqrt_approx(v);
        const Rational err = Rational(v) - s * s;
        CHECK(s * s <= Rational(v)); // floor-directed
        const Rational scale = Rational(v) < Rational(1) ? Rational(1) : Rational(v);
        CHECK(err <= tol * scale);
        CHECK(err >= Rational(0));
    }

    // Tighter and looser tolerances are both honored.
    const NonNegRational two(Rational(2));
    for (long d : {10L, 1000000L, 1000000000L}) {
        const PosRational t(Rational(1, d));
        const Rational s = amm::sqrt_approx(two, t);
        CHECK(s * s <= Rational(2));
        CHECK(Rational(2) - s * s <= Rational(2) * Rational(t));
    }
}

TEST_CASE("library integer sqrt agrees with binary search") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        mpz_class n;
        mpz_class limb(rng());
        n = limb * limb + mpz_class(rng() % 1000); // up to ~128 bits
        mpz_class viaGmp;
        mpz_sqrt(viaGmp.get_mpz_t(), n.get_mpz_t());
        CHECK(viaGmp == isqrt_binary(n));
    }
}
