#pragma once

#include "hitting/chain.hpp"
#include "hitting/distribution.hpp"

#include <cstdint>
#include <vector>

namespace hitting {

// Ground-truth engines that share nothing with the determinant path:
// exact matrix powers, trajectory simulation and uniformization.

/// Exact P(tau = n), n = 0..n_max, from e_i P^n by rational vector-matrix
/// iteration: P(tau = n) = (e_i P^n)_d - (e_i P^{n-1})_d.
DistributionTable pmf_matrix_power(const DiscreteChain &chain, std::size_t start, std::size_t n_max);

struct McConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    /// Censoring horizon: steps (discrete) or jumps (continuous) per trajectory.
    std::uint64_t max_steps = 1000000;
    /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;
};

struct SampleSummary {
    std::uint64_t samples = 0;
    std::uint64_t censored = 0;
    /// Over uncensored samples.
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    /// counts[n] = number of uncensored trajectories absorbed at step n
    /// (discrete only; empty for continuous).
    std::vector<std::uint64_t> counts;

    std::uint64_t absorbed() const { return samples - censored; }
    double censored_fraction() const {
        return samples ? static_cast<double>(censored) / static_cast<double>(samples) : 0.0;
    }
    /// Empirical P(tau = n) relative to all samples.
    DistributionTable empirical_pmf() const;
};

/// Trajectory t (0-based) draws from CounterStream(seed, t); each step picks
/// the next state by inverse CDF over the row in double precision.
SampleSummary simulate_discrete(const DiscreteChain &chain, std::size_t start, const McConfig &cfg);

/// Holding time -log(U)/gamma_i then a jump chosen by inverse CDF over
/// Q_ij/gamma_i, per trajectory stream as above. gamma_i = 0 is a trap and
/// censors the trajectory.
SampleSummary simulate_continuous(const ContinuousChain &chain, std::size_t start, const McConfig &cfg);

/// Uniformized discrete chain I + Q/Lambda with Lambda = max gamma_i.
/// AllRatesZero when Lambda = 0.
DiscreteChain uniformized_chain(const ContinuousChain &chain);

/// Truncation point N with Poisson(mean) upper tail mass beyond N below eps.
std::size_t poisson_truncation(double mean, double eps);

/// F(t) = sum_{n<=N} Poisson(Lambda t; n) P(tau_unif <= n) with the inner
/// probabilities exact from pmf_matrix_power on the uniformized chain and N
/// chosen per t so the neglected Poisson tail is below eps.
DistributionTable cdf_uniformization(const ContinuousChain &chain, std::size_t start,
                                     const std::vector<double> &t_grid, double eps = 1e-10);

/// Laplace-Stieltjes transform of the uniformization series for F,
/// integrated term by term: sum_n P(tau_unif = n) (Lambda/(Lambda+s))^n.
/// The inner probabilities are iterated in double precision; the series
/// stops once the mass that can still be absorbed, times the remaining
/// factor, is below eps.
double laplace_uniformization(const ContinuousChain &chain, std::size_t start, double s, double eps = 1e-12);

} // namespace hitting
