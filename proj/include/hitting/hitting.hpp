#pragma once

#include "hitting/chain.hpp"
#include "hitting/distribution.hpp"
#include "hitting/rational_function.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hitting {

enum class TransformKind { generating_function, laplace_transform };

std::string_view to_string(TransformKind kind);

/// Transform of the absorption time tau_{start,d}: E[s^tau] for discrete
/// chains, E[exp(-s tau)] for continuous ones.
struct HittingTimeTransform {
    std::size_t start = 0;
    TransformKind kind = TransformKind::generating_function;
    RationalFunction func;
    /// func(1) for generating functions, func(0) for Laplace transforms.
    BigRational absorption_probability;

    bool is_certain() const { return absorption_probability == BigRational(1); }
};

/// The (d+1)x(d+1) polynomial matrix the submatrices are cut from:
/// I - sP for discrete chains, sI - Q for continuous ones.
PolyMatrix base_matrix(const DiscreteChain &chain);
PolyMatrix base_matrix(const ContinuousChain &chain);

/// Rows 0..d-1 of base_matrix(chain) with column j-1 removed (1 <= j <= d+1).
/// Throws IndexError for j out of range.
PolyMatrix build_submatrix(const DiscreteChain &chain, std::size_t j);
PolyMatrix build_submatrix(const ContinuousChain &chain, std::size_t j);

/// f_i(s) = (-1)^(d-i) det A_{i+1}(s) / det A_{d+1}(s).
HittingTimeTransform hitting_gf_discrete(const DiscreteChain &chain, std::size_t start);
/// Same ratio of minors of sI - Q, giving the Laplace transform.
HittingTimeTransform hitting_lt_continuous(const ContinuousChain &chain, std::size_t start);

/// Transforms for every start state 0..d-1, sharing the denominator minor.
std::vector<HittingTimeTransform> all_transforms(const DiscreteChain &chain);
std::vector<HittingTimeTransform> all_transforms(const ContinuousChain &chain);

/// Residuals of the first-step equations, one per transient state. The
/// transforms must be exactly one per state, in order, of the chain's kind
/// (KindMismatch otherwise). For exact transforms every residual is zero.
///   discrete:   f_i - s (sum_{j<d} P_ij f_j + P_id)
///   continuous: (gamma_i + s) f_i - sum_{j<d, j!=i} Q_ij f_j - Q_id
std::vector<RationalFunction> first_step_residual(const DiscreteChain &chain,
                                                  std::span<const HittingTimeTransform> transforms);
std::vector<RationalFunction> first_step_residual(const ContinuousChain &chain,
                                                  std::span<const HittingTimeTransform> transforms);

/// Exact P(tau = n) for n = 0..n_max from the series coefficients.
/// KindMismatch for Laplace transforms.
DistributionTable pmf(const HittingTimeTransform &transform, std::size_t n_max);

/// Order-k moment, 1 <= k <= 4: the factorial moment E[tau(tau-1)...(tau-k+1)]
/// = f^(k)(1) for generating functions, E[tau^k] = (-1)^k f^(k)(0) for
/// Laplace transforms. DefectiveDistribution when absorption is not certain.
BigRational moment(const HittingTimeTransform &transform, unsigned order);
BigRational mean(const HittingTimeTransform &transform);
BigRational variance(const HittingTimeTransform &transform);

/// One simple pole of a Laplace transform, p = -rate, with its residue. The
/// density contributes weight * exp(-rate t). Exact values are present when
/// every pole of the transform is rational.
struct PartialFractionTerm {
    double rate = 0.0;
    double weight = 0.0;
    std::optional<BigRational> exact_rate;
    std::optional<BigRational> exact_weight;
};

/// Partial-fraction expansion func(s) = sum_k weight_k / (s + rate_k).
/// Needs a proper function (ImproperTransform) with simple (RepeatedPole)
/// real (ComplexPole) poles. The zero function expands to an empty list.
std::vector<PartialFractionTerm> density_partial_fractions(const HittingTimeTransform &transform);

/// Recombines exact terms into sum_k weight_k / (s + rate_k).
RationalFunction recombine(const std::vector<PartialFractionTerm> &terms);

double density_at(const std::vector<PartialFractionTerm> &terms, double t);
/// Closed-form integral of the density over [0, t].
double cdf_at(const std::vector<PartialFractionTerm> &terms, double t);

} // namespace hitting
