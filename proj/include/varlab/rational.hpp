#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace varlab {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always held in lowest terms with a positive denominator, so equality and
/// ordering are exact and structural.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Parses "n", "-n/d", or a decimal literal such as "-12.5e-3" exactly.
    /// Throws std::invalid_argument on anything else.
    static Rational parse(std::string_view text);

    /// Exact binary value of a finite double.
    static Rational from_double(double value);

    const mpq_class& raw() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    int sign() const noexcept { return sgn(q_); }
    bool is_integer() const noexcept { return q_.get_den() == 1; }

    double to_double() const { return q_.get_d(); }

    /// "num/den", denominator always present (e.g. "3/1").
    std::string to_string() const;

    /// Shortest exact decimal when the denominator is 2^a 5^b, else "num/den".
    std::string to_decimal_or_fraction() const;

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
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_{0};
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace varlab
