#include "hitting/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>

namespace hitting {

namespace {

// Parlett-Reinsch style balancing with power-of-two scalings so the
// eigenvalues are not perturbed.
void balance(Eigen::MatrixXd &m) {
    const Eigen::Index n = m.rows();
    constexpr double gamma = 0.95;
    bool changed = true;
    for (int sweep = 0; changed && sweep < 100; ++sweep) {
        changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double row_norm = m.row(i).lpNorm<1>() - std::abs(m(i, i));
            const double col_norm = m.col(i).lpNorm<1>() - std::abs(m(i, i));
            if (row_norm == 0.0 || col_norm == 0.0)
                continue;
            int exponent = 0;
            std::frexp(row_norm / col_norm, &exponent);
            exponent /= 2;
            if (exponent == 0)
                continue;
            const double scaled_col = std::ldexp(col_norm, exponent);
            const double scaled_row = std::ldexp(row_norm, -exponent);
            if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
                m.col(i) *= std::ldexp(1.0, exponent);
                m.row(i) *= std::ldexp(1.0, -exponent);
                changed = true;
            }
        }
    }
}

// Yun's algorithm: p = c * prod f_i^i with every f_i squarefree and the f_i
// pairwise coprime.
std::vector<std::pair<Polynomial, int>> squarefree_factors(const Polynomial &p) {
    std::vector<std::pair<Polynomial, int>> out;
    const Polynomial dp = p.derivative();
    const Polynomial a0 = gcd(p, dp);
    Polynomial b = exact_divide(p, a0);
    Polynomial c = exact_divide(dp, a0);
    Polynomial d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        const Polynomial a = gcd(b, d);
        b = exact_divide(b, a);
        c = exact_divide(d, a);
        d = c - b.derivative();
        if (a.degree() > 0)
            out.emplace_back(a, i);
    }
    return out;
}

using Complex80 = std::complex<long double>;

// Horner evaluation of f and f' with coefficients split as hi + lo.
std::pair<Complex80, Complex80> horner(const std::vector<long double> &c, Complex80 z) {
    Complex80 f = 0.0L, df = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        df = df * z + f;
        f = f * z + *it;
    }
    return {f, df};
}

// Roots of a squarefree polynomial: companion eigenvalues, then Newton steps
// in extended precision against the exact coefficients.
std::vector<std::complex<double>> simple_roots(const Polynomial &f) {
    const int n = f.degree();
    std::vector<long double> wide;
    for (const auto &coef : f.coefficients()) {
        const double hi = coef.value().get_d();
        const mpq_class rest = coef.value() - mpq_class(hi);
        wide.push_back(static_cast<long double>(hi) + static_cast<long double>(rest.get_d()));
    }
    const std::vector<double> c = f.to_doubles();
    std::vector<std::complex<double>> seeds;
    if (n == 1) {
        seeds.emplace_back(-c[0] / c[1], 0.0);
    } else {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        companion.diagonal(-1).setOnes();
        for (int k = 0; k < n; ++k)
            companion(k, n - 1) = -c[k] / c[n];
        balance(companion);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
            seeds.push_back(solver.eigenvalues()[k]);
    }

    std::vector<std::complex<double>> out;
    for (const auto &seed : seeds) {
        Complex80 z(seed.real(), seed.imag());
        long double residual = std::abs(horner(wide, z).first);
        for (int iter = 0; iter < 8 && residual > 0.0L; ++iter) {
            const auto [fz, dfz] = horner(wide, z);
            if (dfz == Complex80(0.0L))
                break;
            const Complex80 next = z - fz / dfz;
            const long double next_residual = std::abs(horner(wide, next).first);
            if (!(next_residual < residual))
                break;
            z = next;
            residual = next_residual;
        }
        if (seed.imag() == 0.0)
            z = Complex80(z.real(), 0.0L);
        out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> polynomial_roots(const Polynomial &p) {
    std::vector<std::complex<double>> out;
    if (p.degree() < 1)
        return out;

    // Strip exact zero roots first; they are known without rounding.
    const int zeros = p.valuation();
    out.assign(static_cast<std::size_t>(zeros), std::complex<double>(0.0, 0.0));
    std::vector<BigRational> shifted(p.coefficients().begin() + zeros, p.coefficients().end());
    const Polynomial rest(std::move(shifted));

    for (const auto &[factor, multiplicity] : squarefree_factors(rest)) {
        for (const auto &root : simple_roots(factor))
            out.insert(out.end(), static_cast<std::size_t>(multiplicity), root);
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

std::vector<PolynomialRoot> cluster_roots(const std::vector<std::complex<double>> &roots,
                                          double tolerance) {
    std::vector<PolynomialRoot> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        std::complex<double> sum = roots[i];
        int count = 1;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j])
                continue;
            const double scale = std::max(1.0, std::abs(roots[i]));
            if (std::abs(roots[j] - roots[i]) < tolerance * scale) {
                used[j] = true;
                sum += roots[j];
                ++count;
            }
        }
        out.push_back({sum / static_cast<double>(count), count});
    }
    return out;
}

std::optional<BigRational> snap_rational_root(const Polynomial &p, double x) {
    if (!std::isfinite(x))
        return std::nullopt;
    // Convergents h_k / k_k of the continued fraction of x.
    mpz_class h_prev = 1, h_prev2 = 0;
    mpz_class k_prev = 0, k_prev2 = 1;
    double rest = x;
    for (int term = 0; term < 40; ++term) {
        const double a_d = std::floor(rest);
        if (std::abs(a_d) > 1e15)
            break;
        const mpz_class a(a_d);
        const mpz_class h = a * h_prev + h_prev2;
        const mpz_class k = a * k_prev + k_prev2;
        const BigRational candidate(h, k);
        if (p(candidate).is_zero())
            return candidate;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = rest - a_d;
        if (frac < 1e-14)
            break;
        rest = 1.0 / frac;
    }
    return std::nullopt;
}

} // namespace hitting
