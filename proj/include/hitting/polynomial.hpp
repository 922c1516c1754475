#pragma once

#include "hitting/rational.hpp"

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hitting {

/// Univariate polynomial in s with exact rational coefficients, stored in
/// ascending powers. The zero polynomial has no coefficients, and the
/// highest stored coefficient is never zero.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(BigRational constant); // NOLINT(google-explicit-constructor)
    Polynomial(std::initializer_list<BigRational> coefficients);
    explicit Polynomial(std::vector<BigRational> coefficients);

    /// c * s^power
    static Polynomial monomial(const BigRational &c, unsigned power);
    /// The polynomial s.
    static Polynomial variable() { return monomial(BigRational(1), 1); }

    const std::vector<BigRational> &coefficients() const { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of s^k; zero past the degree.
    BigRational coefficient(std::size_t k) const;
    BigRational leading() const;
    /// Smallest k with a nonzero coefficient of s^k; -1 for zero.
    int valuation() const;

    BigRational operator()(const BigRational &s) const;
    double evaluate(double s) const;

    Polynomial derivative() const;

    Polynomial &operator+=(const Polynomial &rhs);
    Polynomial &operator-=(const Polynomial &rhs);
    Polynomial &operator*=(const Polynomial &rhs);
    Polynomial &operator*=(const BigRational &rhs);

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial &b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const BigRational &b) { return a *= b; }
    friend Polynomial operator*(const BigRational &a, Polynomial b) { return b *= a; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    std::vector<double> to_doubles() const;
    std::vector<std::string> to_strings() const;

  private:
    void trim();
    std::vector<BigRational> coeffs_;
};

/// Euclidean division over Q. Throws ZeroDenominator for a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial &dividend, const Polynomial &divisor);
/// Exact quotient; the remainder must be zero.
Polynomial exact_divide(const Polynomial &dividend, const Polynomial &divisor);

/// Greatest common divisor, monic (gcd(0, 0) = 0). Computed with the
/// subresultant remainder sequence on integer-cleared primitive parts.
Polynomial gcd(const Polynomial &a, const Polynomial &b);

/// Expands prod (s - r) for the given rational roots.
Polynomial from_roots(const std::vector<BigRational> &roots);

std::ostream &operator<<(std::ostream &os, const Polynomial &p);

} // namespace hitting
