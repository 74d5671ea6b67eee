#pragma once

#include <Eigen/Core>

#include <type_traits>
#include <utility>

#include "ctvol/errors.hpp"
#include "ctvol/rational.hpp"

namespace ctvol {

namespace detail {

struct EliminationResult {
    int rank = 0;
    Integer det = 0;   // meaningful for square inputs only
    bool complete = false;
};

/**
 * Fraction-free (Bareiss) elimination with full pivoting on an integer
 * working copy. Every intermediate entry is a minor of the input, so the
 * divisions are exact. Pivot search is deterministic: leftmost column first,
 * then topmost row.
 */
inline EliminationResult bareissEliminate(MatrixXz m)
{
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    const Eigen::Index steps = rows < cols ? rows : cols;
    Integer sign = 1;
    Integer prev = 1;
    EliminationResult res;
    for (Eigen::Index k = 0; k < steps; ++k) {
        Eigen::Index pr = -1, pc = -1;
        for (Eigen::Index j = k; j < cols && pr < 0; ++j)
            for (Eigen::Index i = k; i < rows; ++i)
                if (m(i, j) != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) {
            res.rank = static_cast<int>(k);
            res.det = 0;
            res.complete = false;
            return res;
        }
        if (pr != k) {
            m.row(pr).swap(m.row(k));
            sign = -sign;
        }
        if (pc != k) {
            m.col(pc).swap(m.col(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < rows; ++i) {
            for (Eigen::Index j = k + 1; j < cols; ++j) {
                Integer num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = num / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    res.rank = static_cast<int>(steps);
    res.det = sign * prev;
    res.complete = true;
    return res;
}

/**
 * Integerize a rational matrix row by row; returns the scaled matrix and the
 * product of the row scaling factors (so det(input) = det(out) / factor).
 */
inline std::pair<MatrixXz, Integer> scaleRowsToInteger(const MatrixXr& m)
{
    MatrixXz out(m.rows(), m.cols());
    Integer factor = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * Rational(l);
            out(i, j) = numerator(scaled);
        }
        factor *= l;
    }
    return {std::move(out), std::move(factor)};
}

template <typename Derived>
MatrixXz integerCopy(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    if constexpr (std::is_same_v<Scalar, Integer>) {
        return m.derived();
    } else {
        return scaleRowsToInteger(m.derived()).first;
    }
}

}  // namespace detail

/**
 * Exact rank via fraction-free elimination. Works for integer and rational
 * matrices (and any Eigen expression over those scalars).
 */
template <typename Derived>
int rank(const Eigen::MatrixBase<Derived>& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return detail::bareissEliminate(detail::integerCopy(m)).rank;
}

/**
 * Exact determinant via fraction-free elimination.
 *
 * @throws DimensionError If the matrix is not square.
 */
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols())
        throw DimensionError("det requires a square matrix");
    if (m.rows() == 0)
        return Scalar(1);
    if constexpr (std::is_same_v<Scalar, Integer>) {
        return detail::bareissEliminate(m.derived()).det;
    } else {
        auto [scaled, factor] = detail::scaleRowsToInteger(m.derived());
        detail::EliminationResult res = detail::bareissEliminate(std::move(scaled));
        return Rational(res.det, factor);
    }
}

/**
 * det(m^T m): the squared volume of the parallelepiped spanned by the
 * columns of m. Returns 0 exactly when the columns are dependent.
 */
template <typename Derived>
typename Derived::Scalar gramDetSq(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram =
        m.derived().transpose() * m.derived();
    return det(gram);
}

/**
 * Exact solution of a x = rhs for square invertible a.
 *
 * @throws DimensionError If shapes do not match.
 * @throws SingularMatrixError If a is singular.
 */
inline MatrixXr solve(const MatrixXr& a, const MatrixXr& rhs)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n)
        throw DimensionError("solve requires a square matrix");
    if (rhs.rows() != n)
        throw DimensionError("solve: right-hand side has mismatched row count");
    MatrixXr work(n, n + rhs.cols());
    work << a, rhs;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = k; i < n; ++i)
            if (work(i, k) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            throw SingularMatrixError("solve: singular matrix");
        if (pivot != k)
            work.row(pivot).swap(work.row(k));
        work.row(k) /= work(k, k);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k || work(i, k) == 0)
                continue;
            work.row(i) -= work(i, k) * work.row(k);
        }
    }
    return work.rightCols(rhs.cols());
}

inline VectorXr solve(const MatrixXr& a, const VectorXr& rhs)
{
    MatrixXr out = solve(a, MatrixXr(rhs));
    return out.col(0);
}

/**
 * Exact inverse of a square invertible rational matrix.
 */
inline MatrixXr inverse(const MatrixXr& a)
{
    return solve(a, MatrixXr(MatrixXr::Identity(a.rows(), a.rows())));
}

}  // namespace ctvol
