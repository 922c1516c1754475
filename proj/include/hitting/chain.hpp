#pragma once

#include "hitting/matrix.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hitting {

enum class ChainKind { discrete, continuous };

std::string_view to_string(ChainKind kind);

/// Discrete-time chain on states 0..d with state d absorbing. Entries of P
/// hold the holding probabilities r_i on the diagonal, upward jumps p_{i,j}
/// (j > i) and downward jumps q_{i,j} (j < i).
///
/// Instances only come out of validate_discrete and are immutable.
class DiscreteChain {
  public:
    static constexpr ChainKind kind = ChainKind::discrete;

    /// Index of the absorbing state; the number of transient states.
    std::size_t d() const { return matrix_.rows() - 1; }
    const RationalMatrix &P() const { return matrix_; }
    const RationalMatrix &matrix() const { return matrix_; }

    /// reaches_absorbing()[i] is true iff d is reachable from i on the
    /// support of P.
    const std::vector<bool> &reaches_absorbing() const { return reaches_; }
    bool all_reach_absorbing() const;

    friend DiscreteChain validate_discrete(RationalMatrix matrix);

  private:
    DiscreteChain(RationalMatrix matrix, std::vector<bool> reaches)
        : matrix_(std::move(matrix)), reaches_(std::move(reaches)) {}
    RationalMatrix matrix_;
    std::vector<bool> reaches_;
};

/// Continuous-time chain with generator Q on states 0..d, state d
/// absorbing. Row i has diagonal -gamma_i, upward rates alpha_{i,j} and
/// downward rates beta_{i,j}.
class ContinuousChain {
  public:
    static constexpr ChainKind kind = ChainKind::continuous;

    std::size_t d() const { return matrix_.rows() - 1; }
    const RationalMatrix &Q() const { return matrix_; }
    const RationalMatrix &matrix() const { return matrix_; }
    /// Total exit rate of state i.
    BigRational exit_rate(std::size_t i) const { return -matrix_(i, i); }

    const std::vector<bool> &reaches_absorbing() const { return reaches_; }
    bool all_reach_absorbing() const;

    friend ContinuousChain validate_continuous(RationalMatrix matrix);

  private:
    ContinuousChain(RationalMatrix matrix, std::vector<bool> reaches)
        : matrix_(std::move(matrix)), reaches_(std::move(reaches)) {}
    RationalMatrix matrix_;
    std::vector<bool> reaches_;
};

using Chain = std::variant<DiscreteChain, ContinuousChain>;

/// Checks shape, d >= 1, entries in [0,1], unit row sums and the absorbing
/// last row. Chains with states that cannot reach d are accepted; see
/// reaches_absorbing().
DiscreteChain validate_discrete(RationalMatrix matrix);
DiscreteChain validate_discrete(const std::vector<std::vector<BigRational>> &rows);

/// Checks shape, d >= 1, nonnegative off-diagonal rates, zero row sums and
/// the all-zero last row.
ContinuousChain validate_continuous(RationalMatrix matrix);
ContinuousChain validate_continuous(const std::vector<std::vector<BigRational>> &rows);

/// Parses a JSON chain document:
///   {"kind": "discrete" | "continuous", "matrix": [[entry, ...], ...]}
/// with each entry an integer, a decimal string or a fraction string "a/b".
/// Non-integer JSON numbers are rejected.
Chain parse_chain(std::string_view text);

/// Canonical JSON form: fixed key order, entries as strings in lowest terms.
std::string serialize_chain(const Chain &chain);

ChainKind kind_of(const Chain &chain);
std::size_t absorbing_index(const Chain &chain);

/// Hex SHA-256 of serialize_chain(chain).
std::string chain_digest(const Chain &chain);

} // namespace hitting
