#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <ostream>
#include <string>
#include <string_view>

namespace hitting {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class BigRational {
  public:
    BigRational() = default;
    BigRational(long value) : q_(value) {} // NOLINT(google-explicit-constructor)
    BigRational(long numerator, long denominator);
    explicit BigRational(mpq_class value);
    BigRational(const mpz_class &numerator, const mpz_class &denominator);

    /// Accepts "12", "-3/4", "0.25", "1e-3", "-2.5E+2". Decimal forms are
    /// converted exactly. Throws SyntaxError on anything else.
    static BigRational parse(std::string_view text);

    /// "a" for integers, "a/b" otherwise.
    std::string to_string() const;
    /// Correctly rounded to the nearest double.
    double to_double() const;

    const mpq_class &value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    BigRational &operator+=(const BigRational &rhs);
    BigRational &operator-=(const BigRational &rhs);
    BigRational &operator*=(const BigRational &rhs);
    BigRational &operator/=(const BigRational &rhs);

    friend BigRational operator+(BigRational lhs, const BigRational &rhs) { return lhs += rhs; }
    friend BigRational operator-(BigRational lhs, const BigRational &rhs) { return lhs -= rhs; }
    friend BigRational operator*(BigRational lhs, const BigRational &rhs) { return lhs *= rhs; }
    friend BigRational operator/(BigRational lhs, const BigRational &rhs) { return lhs /= rhs; }
    BigRational operator-() const;

    friend bool operator==(const BigRational &a, const BigRational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const BigRational &a, const BigRational &b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    mpq_class q_;
};

BigRational abs(const BigRational &x);
BigRational pow(const BigRational &base, unsigned exponent);

std::ostream &operator<<(std::ostream &os, const BigRational &x);

} // namespace hitting
