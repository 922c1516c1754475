#pragma once

#include "hitting/chain.hpp"
#include "hitting/roots.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace hitting {

enum class SpectrumClass { all_real_nonneg, real_mixed, complex_present };

std::string_view to_string(SpectrumClass c);

/// Spectrum of the transient block. For a discrete chain char_poly is
/// det A_{d+1}(s) = prod (1 - lambda_i s) and lambda_i are the non-unit
/// eigenvalues of P; for a continuous chain char_poly is det of the
/// transient block of sI - Q = prod (s + lambda_i) and lambda_i are the
/// nonzero eigenvalues of -Q.
struct SpectrumReport {
    ChainKind kind = ChainKind::discrete;
    Polynomial char_poly;
    /// Roots of char_poly, clustered, multiplicities summing to its degree.
    std::vector<PolynomialRoot> roots;
    /// All d eigenvalues with multiplicity, sorted by descending real part.
    /// In the discrete case this includes the zero eigenvalues inferred from
    /// the degree deficit of char_poly.
    std::vector<std::complex<double>> eigenvalues;
    /// d - deg(char_poly); always 0 for continuous chains.
    std::size_t zero_eigenvalues = 0;
    SpectrumClass classification = SpectrumClass::all_real_nonneg;
};

/// True iff no upward jump spans more than one level.
bool is_skip_free(const DiscreteChain &chain);
bool is_skip_free(const ContinuousChain &chain);

SpectrumReport nonunit_spectrum(const DiscreteChain &chain);
SpectrumReport nonunit_spectrum(const ContinuousChain &chain);

struct IdentityCheck {
    std::string name;
    std::string description;
    bool applicable = true;
    bool exact = false;
    bool passed = false;
    /// Relative error of a floating-point check; 0 for exact ones.
    double error = 0.0;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
};

/// Discrete checks:
///   factorization  det(I - sP) = (1 - s) det A_{d+1}(s)                exact
///   char_poly      det A_{d+1}(s) = prod (1 - lambda_i s)               1e-8
///   path_minor     det A_1(s) = (-1)^d p01 p12 ... p_{d-1,d} s^d        exact, skip-free
///   path_product   p01 p12 ... p_{d-1,d} = prod (1 - lambda_i)          1e-8, skip-free
///   path_spectrum  det A_1(s) = (-1)^d prod (1 - lambda_i) s^d          1e-8, skip-free
/// Continuous analogues use sI - Q, s in place of (1 - s), prod (s + lambda_i),
/// alpha in place of p and prod lambda_i in place of prod (1 - lambda_i).
/// Skip-free-only checks are reported as not applicable on general chains.
IdentityReport verify_identities(const DiscreteChain &chain);
IdentityReport verify_identities(const ContinuousChain &chain);

/// Product-form representation of the absorption time from state 0 of a
/// skip-free chain: a sum of d independent geometric (discrete) or
/// exponential (continuous) variables.
struct SkipFreeDecomposition {
    ChainKind kind = ChainKind::discrete;
    SpectrumReport spectrum;
    /// Geometric success probabilities 1 - lambda_i, or exponential rates
    /// lambda_i. Meaningful only when valid.
    std::vector<double> parameters;
    bool valid = false;
    std::string reason;
    IdentityReport identity_checks;
};

/// Throws NotSkipFree.
SkipFreeDecomposition decompose_skip_free(const DiscreteChain &chain);
SkipFreeDecomposition decompose_skip_free(const ContinuousChain &chain);

/// prod (1 - lambda) s / (1 - lambda s) over the eigenvalues, or
/// prod lambda / (s + lambda), evaluated in complex arithmetic.
std::complex<double> product_form(const SpectrumReport &spectrum, double s);

} // namespace hitting
