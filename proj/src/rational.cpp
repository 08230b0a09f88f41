#include "amm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace amm {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    std::string_view num = s;
    std::string_view den = "1";
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    bool neg = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        neg = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational: \"" + std::string(s) + "\"");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("rational with zero denominator: \"" + std::string(s) + "\"");
    if (neg) n = -n;
    return Rational(n, d);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.v_ = -r.v_;
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

std::string Rational::str() const {
    return num().get_str() + "/" + den().get_str();
}

std::string Rational::decimal(int digits) const {
    if (digits < 0) digits = 0;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class mag = num() >= 0 ? num() : mpz_class(-num());
    mpz_class q, r;
    mpz_class shifted = mag * scale;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), shifted.get_mpz_t(), den().get_mpz_t());
    if (r * 2 >= den()) q += 1; // round half away from zero
    mpz_class whole = q / scale;
    mpz_class frac = q % scale;
    std::string out = sign() < 0 ? "-" : "";
    out += whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

NonNegRational::NonNegRational(Rational r) : v_(std::move(r)) {
    if (v_.sign() < 0) throw std::domain_error("negative value for nonnegative rational: " + v_.str());
}

PosRational::PosRational(Rational r) : v_(std::move(r)) {
    if (v_.sign() <= 0) throw std::domain_error("nonpositive value for positive rational: " + v_.str());
}

PosRational default_sqrt_tol() {
    mpz_class e18;
    mpz_ui_pow_ui(e18.get_mpz_t(), 10, 18);
    return PosRational(Rational(1, e18));
}

NonNegRational sqrt_approx(const NonNegRational& v, const PosRational& rel_tol) {
    if (v.is_zero()) return 0;
    const mpz_class& n = v.value().num();
    const mpz_class& d = v.value().den();

    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        return NonNegRational(Rational(sn, sd));
    }

    // s = isqrt(n*d * 4^p) / (d * 2^p). With r = isqrt(n*d*4^p):
    //   v - s^2 = (n*d*4^p - r^2) / (4^p d^2) < (2r + 1) / (4^p d^2)
    //           <= 2*sqrt(v)/(2^p d) + 1/(4^p d^2) <= 2/2^p * max(v, 1) + 4^-p
    // so any p with 2^p >= 4/rel_tol meets the contract with room to spare.
    const Rational need = Rational(4) / rel_tol.value();
    mpz_class bound(need.num() / need.den() + 1);
    const auto p = static_cast<mp_bitcnt_t>(mpz_sizeinbase(bound.get_mpz_t(), 2));

    mpz_class scaled = n * d;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * p);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class denom = d;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), p);
    return NonNegRational(Rational(root, denom));
}

NonNegRational sqrt_approx(const NonNegRational& v) {
    return sqrt_approx(v, default_sqrt_tol());
}

} // namespace amm
