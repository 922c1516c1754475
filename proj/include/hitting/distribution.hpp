#pragma once

#include "hitting/rational.hpp"

#include <string_view>
#include <vector>

namespace hitting {

enum class TableKind { pmf, cdf, density_samples };
enum class TableSource { exact_series, matrix_power, monte_carlo, uniformization };

std::string_view to_string(TableKind kind);
std::string_view to_string(TableSource source);

/// Sampled distribution of an absorption time. `values` always holds the
/// double rendering; `exact` is filled (same length) when the source is
/// exact.
struct DistributionTable {
    TableKind kind = TableKind::pmf;
    TableSource source = TableSource::exact_series;
    std::vector<double> support;
    std::vector<double> values;
    std::vector<BigRational> exact;

    bool is_exact() const { return !exact.empty(); }
    std::size_t size() const { return support.size(); }
};

} // namespace hitting
