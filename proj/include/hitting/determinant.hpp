#pragma once

#include "hitting/matrix.hpp"

#include <optional>
#include <vector>

namespace hitting {

/// Exact determinant of a rational matrix. Each row is scaled to integers,
/// then reduced with fraction-free (Bareiss) elimination with row pivoting.
BigRational bareiss_determinant(const RationalMatrix &m);

/// Determinant of a square matrix of polynomials in s. The matrix is
/// evaluated at deg_bound + 1 distinct rational points, where deg_bound is
/// n times the largest entry degree, each evaluation goes through
/// bareiss_determinant, and the results are interpolated (Newton form).
///
/// By default the points are 0, 1, ..., deg_bound. A caller-supplied set
/// must contain at least deg_bound + 1 distinct points; extras are ignored.
Polynomial poly_det_affine(const PolyMatrix &m,
                           const std::optional<std::vector<BigRational>> &points = std::nullopt);

/// Interpolating polynomial through (xs[k], ys[k]); xs must be distinct.
Polynomial interpolate(const std::vector<BigRational> &xs, const std::vector<BigRational> &ys);

} // namespace hitting
