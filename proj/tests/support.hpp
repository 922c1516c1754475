#pragma once

// Test-only helpers: random chain generators and slow reference oracles that
// share no code with the library's determinant path.

#include "hitting/chain.hpp"
#include "hitting/matrix.hpp"

#include <functional>
#include <random>
#include <vector>

namespace hitting::test {

inline BigRational q(long num, long den = 1) { return BigRational(num, den); }

inline Polynomial poly(std::initializer_list<BigRational> c) { return Polynomial(c); }

/// Determinant by Laplace expansion along the first row. Exponential time;
/// fine for n <= 6.
inline Polynomial cofactor_determinant(const PolyMatrix &m) {
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    Polynomial out;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero())
            continue;
        PolyMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t oc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    minor(r - 1, oc++) = m(r, k);
        }
        Polynomial term = m(0, c) * cofactor_determinant(minor);
        if (c % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

/// P(tau = n) for n = 0..n_max by enumerating every path of length <= n_max
/// that avoids d before its last step.
inline std::vector<BigRational> pmf_by_paths(const DiscreteChain &chain, std::size_t start, std::size_t n_max) {
    const std::size_t d = chain.d();
    std::vector<BigRational> out(n_max + 1);
    std::function<void(std::size_t, std::size_t, BigRational)> walk = [&](std::size_t state, std::size_t len,
                                                                          BigRational prob) {
        if (len == n_max)
            return;
        for (std::size_t j = 0; j <= d; ++j) {
            const BigRational &p = chain.P()(state, j);
            if (p.is_zero())
                continue;
            if (j == d)
                out[len + 1] += prob * p;
            else
                walk(j, len + 1, prob * p);
        }
    };
    walk(start, 0, BigRational(1));
    return out;
}

/// Absorption from `start` is certain iff every state reachable from it can
/// still reach d. Works for both chain kinds through the off-diagonal pattern.
template <class Chain>
bool certain_absorption(const Chain &chain, std::size_t start) {
    const auto &m = chain.matrix();
    const auto &reaches = chain.reaches_absorbing();
    std::vector<bool> seen(m.rows(), false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        if (!reaches[i])
            return false;
        if (i == chain.d())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != i && m(i, j).sign() > 0 && !seen[j]) {
                seen[j] = true;
                stack.push_back(j);
            }
        }
    }
    return true;
}

/// Row of nonnegative rationals summing to `total`, from random integer
/// weights in [0, max_weight] with the given density of nonzeros.
inline std::vector<BigRational> random_row(std::mt19937_64 &rng, std::size_t n, long max_weight, double density,
                                           const BigRational &total, const std::vector<bool> &allowed) {
    std::uniform_int_distribution<long> weight(1, max_weight);
    std::bernoulli_distribution keep(density);
    std::vector<long> w(n, 0);
    long sum = 0;
    while (sum == 0) {
        for (std::size_t j = 0; j < n; ++j) {
            w[j] = allowed[j] && keep(rng) ? weight(rng) : 0;
            sum += w[j];
        }
    }
    std::vector<BigRational> row(n);
    for (std::size_t j = 0; j < n; ++j)
        row[j] = BigRational(w[j], sum) * total;
    return row;
}

/// Dense-ish random discrete chain on d+1 states.
inline DiscreteChain random_discrete(std::mt19937_64 &rng, std::size_t d, long max_weight = 9,
                                     double density = 0.7) {
    RationalMatrix m(d + 1, d + 1);
    std::vector<bool> allowed(d + 1, true);
    for (std::size_t i = 0; i < d; ++i) {
        const auto row = random_row(rng, d + 1, max_weight, density, BigRational(1), allowed);
        for (std::size_t j = 0; j <= d; ++j)
            m(i, j) = row[j];
    }
    m(d, d) = BigRational(1);
    return validate_discrete(std::move(m));
}

/// Random skip-free discrete chain; `birth_death` restricts downward jumps
/// to one level, `lazy` puts at least 1/2 on the diagonal.
inline DiscreteChain random_skip_free(std::mt19937_64 &rng, std::size_t d, bool birth_death, bool lazy) {
    RationalMatrix m(d + 1, d + 1);
    std::uniform_int_distribution<long> weight(1, 9);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<long> w(d + 1, 0);
        long sum = 0;
        for (std::size_t j = 0; j <= i + 1; ++j) {
            if (birth_death && j + 1 < i)
                continue;
            w[j] = weight(rng);
            sum += w[j];
        }
        const BigRational scale = lazy ? BigRational(1, 2) : BigRational(1);
        for (std::size_t j = 0; j <= d; ++j)
            m(i, j) = BigRational(w[j], sum) * scale;
        if (lazy)
            m(i, i) += BigRational(1, 2);
    }
    m(d, d) = BigRational(1);
    return validate_discrete(std::move(m));
}

/// Random generator: off-diagonal rates a/b with a in [0, 6], b in [1, 3].
inline ContinuousChain random_continuous(std::mt19937_64 &rng, std::size_t d, double density = 0.7) {
    RationalMatrix m(d + 1, d + 1);
    std::uniform_int_distribution<long> num(1, 6), den(1, 3);
    std::bernoulli_distribution keep(density);
    for (std::size_t i = 0; i < d; ++i) {
        BigRational total;
        for (std::size_t j = 0; j <= d; ++j) {
            if (j == i || !keep(rng))
                continue;
            m(i, j) = BigRational(num(rng), den(rng));
            total += m(i, j);
        }
        if (total.is_zero()) {
            m(i, d) = BigRational(1);
            total = BigRational(1);
        }
        m(i, i) = -total;
    }
    return validate_continuous(std::move(m));
}

/// Continuous birth-death chain with all birth rates and all death rates
/// (from states >= 1) strictly positive.
inline ContinuousChain random_birth_death(std::mt19937_64 &rng, std::size_t d) {
    RationalMatrix m(d + 1, d + 1);
    std::uniform_int_distribution<long> num(1, 8), den(1, 4);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i + 1) = BigRational(num(rng), den(rng));
        BigRational total = m(i, i + 1);
        if (i > 0) {
            m(i, i - 1) = BigRational(num(rng), den(rng));
            total += m(i, i - 1);
        }
        m(i, i) = -total;
    }
    return validate_continuous(std::move(m));
}

} // namespace hitting::test
