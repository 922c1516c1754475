#include "hitting/spectral.hpp"

#include "hitting/determinant.hpp"
#include "hitting/errors.hpp"
#include "hitting/hitting.hpp"

#include <algorithm>
#include <cmath>

namespace hitting {

namespace {

constexpr double kImagTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-8;

double relative_error(std::complex<double> value, std::complex<double> reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

/// Coefficients (ascending) of prod (a_k + b_k s).
std::vector<std::complex<double>> expand_linear_factors(
    const std::vector<std::pair<std::complex<double>, std::complex<double>>> &factors) {
    std::vector<std::complex<double>> out{1.0};
    for (const auto &[a, b] : factors) {
        std::vector<std::complex<double>> next(out.size() + 1, 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            next[k] += a * out[k];
            next[k + 1] += b * out[k];
        }
        out = std::move(next);
    }
    return out;
}

double coefficient_error(const Polynomial &exact, const std::vector<std::complex<double>> &approx) {
    const std::size_t n = std::max(exact.coefficients().size(), approx.size());
    double scale = 1.0;
    for (const auto &c : exact.coefficients())
        scale = std::max(scale, std::abs(c.to_double()));
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> a = k < approx.size() ? approx[k] : 0.0;
        err = std::max(err, std::abs(a - exact.coefficient(k).to_double()));
    }
    return err / scale;
}

void classify(SpectrumReport &report) {
    bool complex_present = false;
    bool negative = false;
    for (const auto &ev : report.eigenvalues) {
        const double scale = std::max(1.0, std::abs(ev));
        if (std::abs(ev.imag()) >= kImagTolerance * scale)
            complex_present = true;
        else if (ev.real() < -kImagTolerance * scale)
            negative = true;
    }
    if (complex_present) {
        report.classification = SpectrumClass::complex_present;
        return;
    }
    for (auto &ev : report.eigenvalues)
        ev = {ev.real(), 0.0};
    if (negative) {
        report.classification = SpectrumClass::real_mixed;
        return;
    }
    report.classification = SpectrumClass::all_real_nonneg;
    for (auto &ev : report.eigenvalues)
        ev = {std::max(0.0, ev.real()), 0.0};
}

void sort_eigenvalues(std::vector<std::complex<double>> &ev) {
    std::sort(ev.begin(), ev.end(), [](const auto &a, const auto &b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
}

template <typename ChainT> void require_skip_free(const ChainT &chain) {
    if (!is_skip_free(chain))
        throw NotSkipFree("an upward jump spans more than one level");
}

IdentityCheck exact_check(std::string name, std::string description, bool passed) {
    return {std::move(name), std::move(description), true, true, passed, 0.0};
}

IdentityCheck float_check(std::string name, std::string description, double error) {
    return {std::move(name), std::move(description), true, false, error < kIdentityTolerance, error};
}

IdentityCheck not_applicable(std::string name, std::string description) {
    return {std::move(name), std::move(description), false, false, false, 0.0};
}

/// Product of the superdiagonal entries m(i, i+1), i = 0..d-1.
BigRational path_product(const RationalMatrix &m, std::size_t d) {
    BigRational out(1);
    for (std::size_t i = 0; i < d; ++i)
        out *= m(i, i + 1);
    return out;
}

std::complex<double> product_of(const std::vector<std::complex<double>> &values, bool one_minus) {
    std::complex<double> out = 1.0;
    for (const auto &v : values)
        out *= one_minus ? 1.0 - v : v;
    return out;
}

} // namespace

std::string_view to_string(SpectrumClass c) {
    switch (c) {
    case SpectrumClass::all_real_nonneg:
        return "all_real_nonneg";
    case SpectrumClass::real_mixed:
        return "real_mixed";
    case SpectrumClass::complex_present:
        return "complex_present";
    }
    return "unknown";
}

bool is_skip_free(const DiscreteChain &chain) {
    for (std::size_t i = 0; i < chain.d(); ++i)
        for (std::size_t j = i + 2; j <= chain.d(); ++j)
            if (!chain.P()(i, j).is_zero())
                return false;
    return true;
}

bool is_skip_free(const ContinuousChain &chain) {
    for (std::size_t i = 0; i < chain.d(); ++i)
        for (std::size_t j = i + 2; j <= chain.d(); ++j)
            if (!chain.Q()(i, j).is_zero())
                return false;
    return true;
}

SpectrumReport nonunit_spectrum(const DiscreteChain &chain) {
    SpectrumReport report;
    report.kind = ChainKind::discrete;
    report.char_poly = poly_det_affine(build_submatrix(chain, chain.d() + 1));
    const int degree = report.char_poly.degree();
    report.roots = cluster_roots(polynomial_roots(report.char_poly));
    report.zero_eigenvalues = chain.d() - static_cast<std::size_t>(degree);

    // Nonzero eigenvalues are the roots of the reversal s^m p(1/s), which is
    // the reciprocal of every root of p.
    std::vector<BigRational> reversed(report.char_poly.coefficients().rbegin(),
                                      report.char_poly.coefficients().rend());
    report.eigenvalues = polynomial_roots(Polynomial(std::move(reversed)));
    report.eigenvalues.insert(report.eigenvalues.end(), report.zero_eigenvalues, 0.0);
    classify(report);
    sort_eigenvalues(report.eigenvalues);
    return report;
}

SpectrumReport nonunit_spectrum(const ContinuousChain &chain) {
    SpectrumReport report;
    report.kind = ChainKind::continuous;
    report.char_poly = poly_det_affine(build_submatrix(chain, chain.d() + 1));
    const auto roots = polynomial_roots(report.char_poly);
    report.roots = cluster_roots(roots);
    for (const auto &r : roots)
        report.eigenvalues.push_back(-r);
    classify(report);
    sort_eigenvalues(report.eigenvalues);
    return report;
}

bool IdentityReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const IdentityCheck &c) { return !c.applicable || c.passed; });
}

IdentityReport verify_identities(const DiscreteChain &chain) {
    const std::size_t d = chain.d();
    const PolyMatrix base = base_matrix(chain);
    const SpectrumReport spectrum = nonunit_spectrum(chain);
    IdentityReport report;

    const Polynomial full = poly_det_affine(base);
    report.checks.push_back(exact_check("factorization", "det(I - sP) = (1 - s) det A_{d+1}(s)",
                                        full == Polynomial{BigRational(1), BigRational(-1)} * spectrum.char_poly));

    std::vector<std::pair<std::complex<double>, std::complex<double>>> factors;
    for (const auto &ev : spectrum.eigenvalues)
        factors.emplace_back(1.0, -ev);
    report.checks.push_back(float_check("char_poly", "det A_{d+1}(s) = prod (1 - lambda_i s)",
                                        coefficient_error(spectrum.char_poly, expand_linear_factors(factors))));

    const std::string minor_desc = "det A_1(s) = (-1)^d p_{0,1} ... p_{d-1,d} s^d";
    const std::string product_desc = "p_{0,1} ... p_{d-1,d} = prod (1 - lambda_i)";
    const std::string spectrum_desc = "det A_1(s) = (-1)^d prod (1 - lambda_i) s^d";
    if (!is_skip_free(chain)) {
        report.checks.push_back(not_applicable("path_minor", minor_desc));
        report.checks.push_back(not_applicable("path_product", product_desc));
        report.checks.push_back(not_applicable("path_spectrum", spectrum_desc));
        return report;
    }
    const Polynomial minor = poly_det_affine(build_submatrix(chain, 1));
    const BigRational sign(d % 2 == 0 ? 1 : -1);
    const BigRational upward = path_product(chain.P(), d);
    report.checks.push_back(exact_check("path_minor", minor_desc,
                                        minor == Polynomial::monomial(sign * upward, static_cast<unsigned>(d))));
    const std::complex<double> spectral_product = product_of(spectrum.eigenvalues, true);
    report.checks.push_back(float_check("path_product", product_desc,
                                        relative_error(upward.to_double(), spectral_product)));
    std::vector<std::complex<double>> predicted(d + 1, 0.0);
    predicted[d] = sign.to_double() * spectral_product;
    report.checks.push_back(float_check("path_spectrum", spectrum_desc, coefficient_error(minor, predicted)));
    return report;
}

IdentityReport verify_identities(const ContinuousChain &chain) {
    const std::size_t d = chain.d();
    const PolyMatrix base = base_matrix(chain);
    const SpectrumReport spectrum = nonunit_spectrum(chain);
    IdentityReport report;

    const Polynomial full = poly_det_affine(base);
    report.checks.push_back(exact_check("factorization", "det(sI - Q) = s det B_{d+1}(s)",
                                        full == Polynomial::variable() * spectrum.char_poly));

    std::vector<std::pair<std::complex<double>, std::complex<double>>> factors;
    for (const auto &ev : spectrum.eigenvalues)
        factors.emplace_back(ev, 1.0);
    report.checks.push_back(float_check("char_poly", "det B_{d+1}(s) = prod (s + lambda_i)",
                                        coefficient_error(spectrum.char_poly, expand_linear_factors(factors))));

    const std::string minor_desc = "det B_1 = (-1)^d alpha_{0,1} ... alpha_{d-1,d}";
    const std::string product_desc = "alpha_{0,1} ... alpha_{d-1,d} = prod lambda_i";
    const std::string spectrum_desc = "det B_1 = (-1)^d prod lambda_i";
    if (!is_skip_free(chain)) {
        report.checks.push_back(not_applicable("path_minor", minor_desc));
        report.checks.push_back(not_applicable("path_product", product_desc));
        report.checks.push_back(not_applicable("path_spectrum", spectrum_desc));
        return report;
    }
    const Polynomial minor = poly_det_affine(build_submatrix(chain, 1));
    const BigRational sign(d % 2 == 0 ? 1 : -1);
    const BigRational upward = path_product(chain.Q(), d);
    report.checks.push_back(exact_check("path_minor", minor_desc, minor == Polynomial(sign * upward)));
    const std::complex<double> spectral_product = product_of(spectrum.eigenvalues, false);
    report.checks.push_back(float_check("path_product", product_desc,
                                        relative_error(upward.to_double(), spectral_product)));
    report.checks.push_back(float_check("path_spectrum", spectrum_desc,
                                        coefficient_error(minor, {sign.to_double() * spectral_product})));
    return report;
}

SkipFreeDecomposition decompose_skip_free(const DiscreteChain &chain) {
    require_skip_free(chain);
    SkipFreeDecomposition out;
    out.kind = ChainKind::discrete;
    out.spectrum = nonunit_spectrum(chain);
    out.identity_checks = verify_identities(chain);
    if (out.spectrum.classification != SpectrumClass::all_real_nonneg) {
        out.reason = "eigenvalues are not all real and nonnegative (" +
                     std::string(to_string(out.spectrum.classification)) + ")";
        return out;
    }
    for (const auto &ev : out.spectrum.eigenvalues)
        out.parameters.push_back(1.0 - ev.real());
    out.valid = std::all_of(out.parameters.begin(), out.parameters.end(),
                            [](double p) { return p > 1e-12 && p <= 1.0; });
    if (!out.valid)
        out.reason = "an eigenvalue equals 1: state 0 does not reach the absorbing state surely";
    return out;
}

SkipFreeDecomposition decompose_skip_free(const ContinuousChain &chain) {
    require_skip_free(chain);
    SkipFreeDecomposition out;
    out.kind = ChainKind::continuous;
    out.spectrum = nonunit_spectrum(chain);
    out.identity_checks = verify_identities(chain);
    if (out.spectrum.classification != SpectrumClass::all_real_nonneg) {
        out.reason = "eigenvalues are not all real and nonnegative (" +
                     std::string(to_string(out.spectrum.classification)) + ")";
        return out;
    }
    for (const auto &ev : out.spectrum.eigenvalues)
        out.parameters.push_back(ev.real());
    out.valid = std::all_of(out.parameters.begin(), out.parameters.end(), [](double p) { return p > 1e-12; });
    if (!out.valid)
        out.reason = "a zero eigenvalue: state 0 does not reach the absorbing state surely";
    return out;
}

std::complex<double> product_form(const SpectrumReport &spectrum, double s) {
    std::complex<double> out = 1.0;
    for (const auto &ev : spectrum.eigenvalues) {
        if (spectrum.kind == ChainKind::discrete)
            out *= (1.0 - ev) * s / (1.0 - ev * s);
        else
            out *= ev / (s + ev);
    }
    return out;
}

} // namespace hitting
