#include "hitting/determinant.hpp"

#include "hitting/errors.hpp"

#include <algorithm>
#include <set>

namespace hitting {

RationalMatrix make_matrix(const std::vector<std::vector<BigRational>> &rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n ? rows.front().size() : 0;
    RationalMatrix out(n, m);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != m)
            throw ShapeError("ragged matrix: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(m));
        for (std::size_t c = 0; c < m; ++c)
            out(r, c) = rows[r][c];
    }
    return out;
}

BigRational bareiss_determinant(const RationalMatrix &m) {
    if (!m.is_square())
        throw ShapeError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return BigRational(1);

    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        mpz_class lcm = 1;
        for (std::size_t c = 0; c < n; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).value().get_den_mpz_t());
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = m(r, c).value().get_num() * (lcm / m(r, c).value().get_den());
        scale *= lcm;
    }

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return BigRational();
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mpz_class det = a[n - 1][n - 1];
    if (sign < 0)
        det = -det;
    return BigRational(det, scale);
}

Polynomial interpolate(const std::vector<BigRational> &xs, const std::vector<BigRational> &ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n)
        throw ShapeError("interpolate: xs and ys differ in length");
    // Newton divided differences, in place.
    std::vector<BigRational> coef = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t k = n - 1; k >= level; --k)
            coef[k] = (coef[k] - coef[k - 1]) / (xs[k] - xs[k - level]);

    Polynomial out;
    for (std::size_t k = n; k-- > 0;) {
        out *= Polynomial{-xs[k], BigRational(1)};
        out += Polynomial(coef[k]);
    }
    return out;
}

Polynomial poly_det_affine(const PolyMatrix &m, const std::optional<std::vector<BigRational>> &points) {
    if (!m.is_square() || m.rows() == 0)
        throw ShapeError("poly_det_affine needs a non-empty square matrix");
    const std::size_t n = m.rows();
    int max_degree = 0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            max_degree = std::max(max_degree, m(r, c).degree());
    const std::size_t needed = n * static_cast<std::size_t>(max_degree) + 1;

    std::vector<BigRational> xs;
    if (points) {
        std::set<BigRational> seen;
        for (const auto &p : *points) {
            if (xs.size() == needed)
                break;
            if (seen.insert(p).second)
                xs.push_back(p);
        }
        if (xs.size() < needed)
            throw ShapeError("poly_det_affine needs " + std::to_string(needed) +
                             " distinct evaluation points");
    } else {
        for (std::size_t k = 0; k < needed; ++k)
            xs.emplace_back(static_cast<long>(k));
    }

    std::vector<BigRational> ys;
    ys.reserve(needed);
    RationalMatrix at(n, n);
    for (const auto &x : xs) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                at(r, c) = m(r, c)(x);
        ys.push_back(bareiss_determinant(at));
    }
    return interpolate(xs, ys);
}

} // namespace hitting
