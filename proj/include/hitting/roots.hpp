#pragma once

#include "hitting/polynomial.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace hitting {

/// A (possibly multiple) root of a polynomial, after clustering.
struct PolynomialRoot {
    std::complex<double> value;
    int multiplicity = 1;
};

/// All complex roots of p, counted with multiplicity, from the eigenvalues
/// of balanced companion matrices of the exact squarefree factors, polished
/// by Newton steps in extended precision. Multiple roots repeat exactly.
/// The zero and constant polynomials have no roots.
std::vector<std::complex<double>> polynomial_roots(const Polynomial &p);

/// Groups roots closer than `tolerance` (relative to max(1, |root|)) and
/// replaces each group by its mean.
std::vector<PolynomialRoot> cluster_roots(const std::vector<std::complex<double>> &roots,
                                          double tolerance = 1e-7);

/// Finds a rational r near x with p(r) == 0 exactly, trying the continued
/// fraction convergents of x.
std::optional<BigRational> snap_rational_root(const Polynomial &p, double x);

} // namespace hitting
