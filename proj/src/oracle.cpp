#include "hitting/oracle.hpp"

#include "hitting/errors.hpp"
#include "hitting/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace hitting {

namespace {

constexpr std::uint64_t kChunk = 8192;

/// Welford accumulator over one chunk; chunks merge in index order.
struct ChunkStats {
    std::uint64_t count = 0;
    std::uint64_t censored = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::vector<std::uint64_t> counts;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const ChunkStats &other) {
        censored += other.censored;
        if (other.counts.size() > counts.size())
            counts.resize(other.counts.size(), 0);
        for (std::size_t k = 0; k < other.counts.size(); ++k)
            counts[k] += other.counts[k];
        if (other.count == 0)
            return;
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double delta = other.mean - mean;
        const std::uint64_t total = count + other.count;
        mean += delta * n_b / static_cast<double>(total);
        m2 += other.m2 + delta * delta * n_a * n_b / static_cast<double>(total);
        count = total;
    }
};

/// Inverse-CDF table for one row: candidate next states with cumulative
/// probabilities; the last threshold is +inf so rounding never falls off.
struct JumpTable {
    std::vector<std::size_t> states;
    std::vector<double> thresholds;

    std::size_t draw(double u) const {
        for (std::size_t k = 0; k < thresholds.size(); ++k)
            if (u < thresholds[k])
                return states[k];
        return states.back();
    }
};

JumpTable make_jump_table(const std::vector<std::pair<std::size_t, BigRational>> &weights) {
    JumpTable table;
    BigRational total;
    for (const auto &[state, w] : weights)
        total += w;
    BigRational cum;
    for (const auto &[state, w] : weights) {
        cum += w;
        table.states.push_back(state);
        table.thresholds.push_back((cum / total).to_double());
    }
    if (!table.thresholds.empty())
        table.thresholds.back() = std::numeric_limits<double>::infinity();
    return table;
}

template <typename Trajectory>
SampleSummary run_chunks(const McConfig &cfg, bool keep_counts, Trajectory &&trajectory) {
    if (cfg.samples < 1)
        throw std::invalid_argument("McConfig.samples must be >= 1");
    if (cfg.max_steps < 1)
        throw std::invalid_argument("McConfig.max_steps must be >= 1");
    const std::uint64_t n_chunks = (cfg.samples + kChunk - 1) / kChunk;
    std::vector<ChunkStats> chunks(n_chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t c = next++; c < n_chunks; c = next++) {
            ChunkStats &stats = chunks[c];
            const std::uint64_t begin = c * kChunk;
            const std::uint64_t end = std::min(cfg.samples, begin + kChunk);
            for (std::uint64_t t = begin; t < end; ++t) {
                CounterStream rng(cfg.seed, t);
                const auto [absorbed, value, steps] = trajectory(rng);
                if (!absorbed) {
                    ++stats.censored;
                    continue;
                }
                stats.add(value);
                if (keep_counts) {
                    if (steps >= stats.counts.size())
                        stats.counts.resize(steps + 1, 0);
                    ++stats.counts[steps];
                }
            }
        }
    };

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    ChunkStats total;
    for (const auto &c : chunks)
        total.merge(c);
    SampleSummary out;
    out.samples = cfg.samples;
    out.censored = total.censored;
    out.mean = total.mean;
    out.variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    out.std_error = total.count > 0 ? std::sqrt(out.variance / static_cast<double>(total.count)) : 0.0;
    out.counts = std::move(total.counts);
    return out;
}

struct TrajectoryResult {
    bool absorbed;
    double value;
    std::size_t steps;
};

double log_poisson(double mean, std::size_t n) {
    if (mean == 0.0)
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double dn = static_cast<double>(n);
    return -mean + dn * std::log(mean) - std::lgamma(dn + 1.0);
}

void check_start(std::size_t d, std::size_t start) {
    if (start >= d)
        throw IndexError("start state " + std::to_string(start) + " outside [0, " + std::to_string(d - 1) + "]");
}

} // namespace

std::string_view to_string(TableKind kind) {
    switch (kind) {
    case TableKind::pmf:
        return "pmf";
    case TableKind::cdf:
        return "cdf";
    case TableKind::density_samples:
        return "density_samples";
    }
    return "unknown";
}

std::string_view to_string(TableSource source) {
    switch (source) {
    case TableSource::exact_series:
        return "exact_series";
    case TableSource::matrix_power:
        return "matrix_power";
    case TableSource::monte_carlo:
        return "monte_carlo";
    case TableSource::uniformization:
        return "uniformization";
    }
    return "unknown";
}

DistributionTable pmf_matrix_power(const DiscreteChain &chain, std::size_t start, std::size_t n_max) {
    const std::size_t d = chain.d();
    check_start(d, start);
    const RationalMatrix &P = chain.P();
    std::vector<mpq_class> v(d + 1);
    v[start] = 1;

    DistributionTable table;
    table.kind = TableKind::pmf;
    table.source = TableSource::matrix_power;
    table.support.push_back(0.0);
    table.exact.emplace_back();
    table.values.push_back(0.0);

    std::vector<mpq_class> next(d + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (auto &x : next)
            x = 0;
        for (std::size_t i = 0; i <= d; ++i) {
            if (sgn(v[i]) == 0)
                continue;
            for (std::size_t j = 0; j <= d; ++j)
                if (!P(i, j).is_zero())
                    next[j] += v[i] * P(i, j).value();
        }
        BigRational p(mpq_class(next[d] - v[d]));
        std::swap(v, next);
        table.support.push_back(static_cast<double>(n));
        table.values.push_back(p.to_double());
        table.exact.push_back(std::move(p));
    }
    return table;
}

DistributionTable SampleSummary::empirical_pmf() const {
    DistributionTable table;
    table.kind = TableKind::pmf;
    table.source = TableSource::monte_carlo;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        table.support.push_back(static_cast<double>(n));
        table.values.push_back(static_cast<double>(counts[n]) / static_cast<double>(samples));
    }
    return table;
}

SampleSummary simulate_discrete(const DiscreteChain &chain, std::size_t start, const McConfig &cfg) {
    const std::size_t d = chain.d();
    check_start(d, start);
    std::vector<JumpTable> rows(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::pair<std::size_t, BigRational>> weights;
        for (std::size_t j = 0; j <= d; ++j)
            if (!chain.P()(i, j).is_zero())
                weights.emplace_back(j, chain.P()(i, j));
        rows[i] = make_jump_table(weights);
    }
    return run_chunks(cfg, true, [&](CounterStream &rng) {
        std::size_t state = start;
        std::uint64_t steps = 0;
        while (state != d && steps < cfg.max_steps) {
            state = rows[state].draw(rng.next_unit());
            ++steps;
        }
        return TrajectoryResult{state == d, static_cast<double>(steps), static_cast<std::size_t>(steps)};
    });
}

SampleSummary simulate_continuous(const ContinuousChain &chain, std::size_t start, const McConfig &cfg) {
    const std::size_t d = chain.d();
    check_start(d, start);
    std::vector<JumpTable> rows(d);
    std::vector<double> rates(d);
    for (std::size_t i = 0; i < d; ++i) {
        rates[i] = chain.exit_rate(i).to_double();
        std::vector<std::pair<std::size_t, BigRational>> weights;
        for (std::size_t j = 0; j <= d; ++j)
            if (j != i && !chain.Q()(i, j).is_zero())
                weights.emplace_back(j, chain.Q()(i, j));
        rows[i] = make_jump_table(weights);
    }
    return run_chunks(cfg, false, [&](CounterStream &rng) {
        std::size_t state = start;
        std::uint64_t jumps = 0;
        double time = 0.0;
        while (state != d) {
            if (rates[state] == 0.0 || jumps >= cfg.max_steps)
                return TrajectoryResult{false, time, 0};
            time += -std::log(rng.next_unit_open_low()) / rates[state];
            state = rows[state].draw(rng.next_unit());
            ++jumps;
        }
        return TrajectoryResult{true, time, 0};
    });
}

DiscreteChain uniformized_chain(const ContinuousChain &chain) {
    const std::size_t n = chain.d() + 1;
    BigRational lambda;
    for (std::size_t i = 0; i + 1 < n; ++i)
        lambda = std::max(lambda, chain.exit_rate(i));
    if (lambda.is_zero())
        throw AllRatesZero("every exit rate is zero; nothing to uniformize");
    RationalMatrix P(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            P(i, j) = (i == j ? BigRational(1) : BigRational()) + chain.Q()(i, j) / lambda;
    return validate_discrete(std::move(P));
}

std::size_t poisson_truncation(double mean, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    if (mean == 0.0)
        return 0;
    double cum = 0.0;
    for (std::size_t n = 0;; ++n) {
        cum += std::exp(log_poisson(mean, n));
        if (static_cast<double>(n) >= mean && 1.0 - cum < 0.5 * eps)
            return n;
    }
}

DistributionTable cdf_uniformization(const ContinuousChain &chain, std::size_t start,
                                     const std::vector<double> &t_grid, double eps) {
    check_start(chain.d(), start);
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    const DiscreteChain unif = uniformized_chain(chain);
    BigRational lambda_exact;
    for (std::size_t i = 0; i < chain.d(); ++i)
        lambda_exact = std::max(lambda_exact, chain.exit_rate(i));
    const double lambda = lambda_exact.to_double();

    std::vector<std::size_t> horizon;
    std::size_t n_max = 0;
    for (double t : t_grid) {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw InputError("time points must be finite and nonnegative");
        horizon.push_back(poisson_truncation(lambda * t, eps));
        n_max = std::max(n_max, horizon.back());
    }

    const DistributionTable inner = pmf_matrix_power(unif, start, n_max);
    std::vector<double> cdf_disc;
    cdf_disc.reserve(n_max + 1);
    BigRational cum;
    for (const auto &p : inner.exact) {
        cum += p;
        cdf_disc.push_back(cum.to_double());
    }

    DistributionTable table;
    table.kind = TableKind::cdf;
    table.source = TableSource::uniformization;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double mean = lambda * t_grid[k];
        double acc = 0.0;
        for (std::size_t n = 0; n <= horizon[k]; ++n)
            acc += std::exp(log_poisson(mean, n)) * cdf_disc[n];
        table.support.push_back(t_grid[k]);
        table.values.push_back(acc);
    }
    return table;
}

double laplace_uniformization(const ContinuousChain &chain, std::size_t start, double s, double eps) {
    const std::size_t d = chain.d();
    check_start(d, start);
    if (!(s >= 0.0))
        throw std::invalid_argument("laplace_uniformization needs s >= 0");
    const DiscreteChain unif = uniformized_chain(chain);
    double lambda = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        lambda = std::max(lambda, chain.exit_rate(i).to_double());

    std::vector<std::vector<double>> P(d + 1, std::vector<double>(d + 1));
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            P[i][j] = unif.P()(i, j).to_double();
    const auto &live = chain.reaches_absorbing();

    const double ratio = lambda / (lambda + s);
    std::vector<double> v(d + 1, 0.0), next(d + 1);
    v[start] = 1.0;
    double factor = 1.0;
    double sum = 0.0;
    constexpr std::size_t kMaxIterations = 100000000;
    for (std::size_t n = 1; n <= kMaxIterations; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            if (v[i] == 0.0)
                continue;
            for (std::size_t j = 0; j <= d; ++j)
                next[j] += v[i] * P[i][j];
        }
        factor *= ratio;
        sum += next[d] * factor;
        next[d] = 0.0; // absorbed mass has been counted
        std::swap(v, next);
        double remaining = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            if (live[i])
                remaining += v[i];
        if (remaining * factor < eps)
            return sum;
    }
    throw MathError("laplace_uniformization did not converge");
}

} // namespace hitting
