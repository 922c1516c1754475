#pragma once

#include "hitting/polynomial.hpp"

#include <vector>

namespace hitting {

/// Quotient of two polynomials in lowest terms. The denominator is scaled
/// so that its constant term is 1, or, when it vanishes at s = 0, so that
/// its leading coefficient is 1. The zero function is 0/1.
class RationalFunction {
  public:
    RationalFunction() : den_(BigRational(1)) {}
    RationalFunction(Polynomial numerator); // NOLINT(google-explicit-constructor)
    /// Throws ZeroDenominator when den is the zero polynomial.
    RationalFunction(Polynomial numerator, Polynomial denominator);

    const Polynomial &numerator() const { return num_; }
    const Polynomial &denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Throws PoleAtPoint when the denominator vanishes at s.
    BigRational operator()(const BigRational &s) const;
    double evaluate(double s) const;

    RationalFunction derivative(unsigned order = 1) const;

    RationalFunction &operator+=(const RationalFunction &rhs);
    RationalFunction &operator-=(const RationalFunction &rhs);
    RationalFunction &operator*=(const RationalFunction &rhs);
    RationalFunction &operator/=(const RationalFunction &rhs);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction &b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction &b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction &b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction &b) { return a /= b; }

    friend bool operator==(const RationalFunction &, const RationalFunction &) = default;

  private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

/// Maclaurin coefficients a_0..a_{n_max}, from the recurrence
/// a_n = num_n - sum_{k=1..n} den_k a_{n-k} (den_0 = 1 after normalization).
/// Throws PoleAtZero when the denominator vanishes at 0.
std::vector<BigRational> series_coefficients(const RationalFunction &f, std::size_t n_max);

} // namespace hitting
