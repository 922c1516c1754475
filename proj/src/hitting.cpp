#include "hitting/hitting.hpp"

#include "hitting/determinant.hpp"
#include "hitting/errors.hpp"
#include "hitting/roots.hpp"

#include <cmath>

namespace hitting {

namespace {

PolyMatrix cut_submatrix(const PolyMatrix &base, std::size_t j) {
    const std::size_t d = base.rows() - 1;
    if (j < 1 || j > d + 1)
        throw IndexError("submatrix column index " + std::to_string(j) + " outside [1, " +
                         std::to_string(d + 1) + "]");
    PolyMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        std::size_t oc = 0;
        for (std::size_t c = 0; c <= d; ++c) {
            if (c == j - 1)
                continue;
            out(r, oc++) = base(r, c);
        }
    }
    return out;
}

void check_start(std::size_t d, std::size_t start) {
    if (start >= d)
        throw IndexError("start state " + std::to_string(start) + " outside [0, " +
                         std::to_string(d - 1) + "]");
}

std::vector<HittingTimeTransform> transforms_from_base(const PolyMatrix &base, TransformKind kind) {
    const std::size_t d = base.rows() - 1;
    const Polynomial den = poly_det_affine(cut_submatrix(base, d + 1));
    std::vector<HittingTimeTransform> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        Polynomial num = poly_det_affine(cut_submatrix(base, i + 1));
        if ((d - i) % 2 == 1)
            num = -num;
        HittingTimeTransform t;
        t.start = i;
        t.kind = kind;
        t.func = RationalFunction(std::move(num), den);
        t.absorption_probability =
            kind == TransformKind::generating_function ? t.func(BigRational(1)) : t.func(BigRational(0));
        out.push_back(std::move(t));
    }
    return out;
}

HittingTimeTransform single_from_base(const PolyMatrix &base, TransformKind kind, std::size_t start) {
    const std::size_t d = base.rows() - 1;
    check_start(d, start);
    Polynomial num = poly_det_affine(cut_submatrix(base, start + 1));
    if ((d - start) % 2 == 1)
        num = -num;
    HittingTimeTransform t;
    t.start = start;
    t.kind = kind;
    t.func = RationalFunction(std::move(num), poly_det_affine(cut_submatrix(base, d + 1)));
    t.absorption_probability =
        kind == TransformKind::generating_function ? t.func(BigRational(1)) : t.func(BigRational(0));
    return t;
}

void check_transforms(std::size_t d, TransformKind expected,
                      std::span<const HittingTimeTransform> transforms) {
    if (transforms.size() != d)
        throw KindMismatch("expected " + std::to_string(d) + " transforms, got " +
                           std::to_string(transforms.size()));
    for (std::size_t i = 0; i < d; ++i) {
        if (transforms[i].kind != expected)
            throw KindMismatch("transform for state " + std::to_string(i) + " is a " +
                               std::string(to_string(transforms[i].kind)) + ", expected a " +
                               std::string(to_string(expected)));
        if (transforms[i].start != i)
            throw KindMismatch("transforms must be ordered by start state");
    }
}

RationalFunction constant(const BigRational &c) {
    return RationalFunction(Polynomial(c));
}

double newton_polish(const Polynomial &p, double x) {
    const Polynomial dp = p.derivative();
    for (int it = 0; it < 4; ++it) {
        const double fx = p.evaluate(x);
        const double dfx = dp.evaluate(x);
        if (dfx == 0.0 || !std::isfinite(fx / dfx))
            break;
        const double next = x - fx / dfx;
        if (std::abs(next - x) > 1e-6 * std::max(1.0, std::abs(x)))
            break;
        x = next;
    }
    return x;
}

} // namespace

std::string_view to_string(TransformKind kind) {
    return kind == TransformKind::generating_function ? "generating_function" : "laplace_transform";
}

PolyMatrix base_matrix(const DiscreteChain &chain) {
    const std::size_t n = chain.d() + 1;
    PolyMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = Polynomial{BigRational(r == c ? 1 : 0), -chain.P()(r, c)};
    return out;
}

PolyMatrix base_matrix(const ContinuousChain &chain) {
    const std::size_t n = chain.d() + 1;
    PolyMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = Polynomial{-chain.Q()(r, c), BigRational(r == c ? 1 : 0)};
    return out;
}

PolyMatrix build_submatrix(const DiscreteChain &chain, std::size_t j) {
    return cut_submatrix(base_matrix(chain), j);
}

PolyMatrix build_submatrix(const ContinuousChain &chain, std::size_t j) {
    return cut_submatrix(base_matrix(chain), j);
}

HittingTimeTransform hitting_gf_discrete(const DiscreteChain &chain, std::size_t start) {
    return single_from_base(base_matrix(chain), TransformKind::generating_function, start);
}

HittingTimeTransform hitting_lt_continuous(const ContinuousChain &chain, std::size_t start) {
    return single_from_base(base_matrix(chain), TransformKind::laplace_transform, start);
}

std::vector<HittingTimeTransform> all_transforms(const DiscreteChain &chain) {
    return transforms_from_base(base_matrix(chain), TransformKind::generating_function);
}

std::vector<HittingTimeTransform> all_transforms(const ContinuousChain &chain) {
    return transforms_from_base(base_matrix(chain), TransformKind::laplace_transform);
}

std::vector<RationalFunction> first_step_residual(const DiscreteChain &chain,
                                                  std::span<const HittingTimeTransform> transforms) {
    const std::size_t d = chain.d();
    check_transforms(d, TransformKind::generating_function, transforms);
    const RationalFunction s(Polynomial::variable());
    std::vector<RationalFunction> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        RationalFunction step = constant(chain.P()(i, d));
        for (std::size_t j = 0; j < d; ++j)
            if (!chain.P()(i, j).is_zero())
                step += constant(chain.P()(i, j)) * transforms[j].func;
        out.push_back(transforms[i].func - s * step);
    }
    return out;
}

std::vector<RationalFunction> first_step_residual(const ContinuousChain &chain,
                                                  std::span<const HittingTimeTransform> transforms) {
    const std::size_t d = chain.d();
    check_transforms(d, TransformKind::laplace_transform, transforms);
    std::vector<RationalFunction> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        const RationalFunction hold(Polynomial{chain.exit_rate(i), BigRational(1)});
        RationalFunction residual = hold * transforms[i].func - constant(chain.Q()(i, d));
        for (std::size_t j = 0; j < d; ++j)
            if (j != i && !chain.Q()(i, j).is_zero())
                residual -= constant(chain.Q()(i, j)) * transforms[j].func;
        out.push_back(std::move(residual));
    }
    return out;
}

DistributionTable pmf(const HittingTimeTransform &transform, std::size_t n_max) {
    if (transform.kind != TransformKind::generating_function)
        throw KindMismatch("a PMF needs a generating function, not a Laplace transform");
    DistributionTable table;
    table.kind = TableKind::pmf;
    table.source = TableSource::exact_series;
    table.exact = series_coefficients(transform.func, n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        table.support.push_back(static_cast<double>(n));
        table.values.push_back(table.exact[n].to_double());
    }
    return table;
}

BigRational moment(const HittingTimeTransform &transform, unsigned order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("moment order must be in [1, 4]");
    if (!transform.is_certain())
        throw DefectiveDistribution("absorption probability from state " +
                                    std::to_string(transform.start) + " is " +
                                    transform.absorption_probability.to_string() + " < 1");
    const RationalFunction derivative = transform.func.derivative(order);
    if (transform.kind == TransformKind::generating_function)
        return derivative(BigRational(1));
    const BigRational value = derivative(BigRational(0));
    return order % 2 == 0 ? value : -value;
}

BigRational mean(const HittingTimeTransform &transform) {
    return moment(transform, 1);
}

BigRational variance(const HittingTimeTransform &transform) {
    const BigRational m1 = moment(transform, 1);
    const BigRational m2 = moment(transform, 2);
    if (transform.kind == TransformKind::generating_function)
        return m2 + m1 - m1 * m1;
    return m2 - m1 * m1;
}

std::vector<PartialFractionTerm> density_partial_fractions(const HittingTimeTransform &transform) {
    if (transform.kind != TransformKind::laplace_transform)
        throw KindMismatch("partial fractions need a Laplace transform");
    const RationalFunction &f = transform.func;
    if (f.is_zero())
        return {};
    const Polynomial &num = f.numerator();
    const Polynomial &den = f.denominator();
    if (num.degree() >= den.degree())
        throw ImproperTransform("numerator degree " + std::to_string(num.degree()) +
                                " >= denominator degree " + std::to_string(den.degree()));

    const auto roots = polynomial_roots(den);
    for (const auto &root : cluster_roots(roots)) {
        if (std::abs(root.value.imag()) > 1e-9 * std::max(1.0, std::abs(root.value)))
            throw ComplexPole("pole at " + std::to_string(root.value.real()) + " + " +
                              std::to_string(root.value.imag()) + "i");
        if (root.multiplicity > 1)
            throw RepeatedPole("pole near " + std::to_string(root.value.real()) + " has multiplicity " +
                               std::to_string(root.multiplicity));
    }

    const Polynomial dden = den.derivative();
    std::vector<PartialFractionTerm> terms;
    std::vector<BigRational> exact_poles;
    for (const auto &root : roots) {
        const double pole = newton_polish(den, root.real());
        PartialFractionTerm term;
        term.rate = -pole;
        term.weight = num.evaluate(pole) / dden.evaluate(pole);
        if (auto r = snap_rational_root(den, pole))
            exact_poles.push_back(*r);
        terms.push_back(term);
    }
    if (exact_poles.size() == terms.size()) {
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const BigRational residue = num(exact_poles[k]) / dden(exact_poles[k]);
            terms[k].exact_rate = -exact_poles[k];
            terms[k].exact_weight = residue;
            terms[k].rate = terms[k].exact_rate->to_double();
            terms[k].weight = residue.to_double();
        }
    }
    return terms;
}

RationalFunction recombine(const std::vector<PartialFractionTerm> &terms) {
    RationalFunction out;
    for (const auto &t : terms) {
        if (!t.exact_rate || !t.exact_weight)
            throw MathError("recombine needs exact partial-fraction terms");
        out += RationalFunction(Polynomial(*t.exact_weight), Polynomial{*t.exact_rate, BigRational(1)});
    }
    return out;
}

double density_at(const std::vector<PartialFractionTerm> &terms, double t) {
    double acc = 0.0;
    for (const auto &term : terms)
        acc += term.weight * std::exp(-term.rate * t);
    return acc;
}

double cdf_at(const std::vector<PartialFractionTerm> &terms, double t) {
    double acc = 0.0;
    for (const auto &term : terms)
        acc += term.rate == 0.0 ? term.weight * t : term.weight / term.rate * -std::expm1(-term.rate * t);
    return acc;
}

} // namespace hitting
