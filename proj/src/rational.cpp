#include "varlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace varlab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_literal(std::string_view text) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

// Signed integer literal with optional leading sign.
mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) bad_literal(whole);
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    q_ = mpq_class(numerator, 1);
    q_ /= denominator;
    q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) bad_literal(text);

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
        const std::string_view den_text = trim(s.substr(slash + 1));
        if (!all_digits(den_text)) bad_literal(text);
        const mpz_class den(std::string(den_text), 10);
        if (den == 0) bad_literal(text);
        return Rational(mpq_class(num, den));
    }

    // Decimal: [sign] digits [. digits] [e [sign] digits]
    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        const mpz_class ez = parse_integer(s.substr(e + 1), text);
        if (!ez.fits_slong_p() || abs(ez) > 10000) bad_literal(text);
        exponent = ez.get_si();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto ip = mantissa.substr(0, dot);
        const auto fp = mantissa.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp))) {
            bad_literal(text);
        }
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) bad_literal(text);
        digits = std::string(mantissa);
    }
    mpq_class q(mpz_class(digits, 10));
    const long scale = exponent - frac_len;
    if (scale > 0) q *= pow10(static_cast<unsigned long>(scale));
    if (scale < 0) q /= pow10(static_cast<unsigned long>(-scale));
    if (negative) q = -q;
    return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
    return Rational(mpq_class(value));
}

std::string Rational::to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal_or_fraction() const {
    mpz_class den = q_.get_den();
    unsigned long twos = 0;
    unsigned long fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1) return to_string();

    const unsigned long places = std::max(twos, fives);
    mpz_class scaled = q_.get_num() * pow10(places) / q_.get_den();
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
        digits.insert(digits.size() - places, ".");
    }
    return negative ? "-" + digits : digits;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace varlab
