#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ctvol/rational.hpp"

namespace ctvol {

/**
 * State of the signed elimination. The working matrix stacks an identity
 * block (one row per input column, tracking the accumulated column
 * operations) on top of the constraint rows. Pivoted constraint rows and the
 * columns used as their pivots are frozen: eliminations never change them
 * again, and every frozen constraint row is zero outside the frozen columns.
 */
struct ElimState {
    MatrixXr m;                     // (topRows + r) x topRows
    int topRows = 0;
    std::vector<int> ignoredRows;   // pivoted constraint indices, sorted
    std::vector<int> ignoredCols;   // frozen pivot columns, sorted
    int sign = 1;
    Rational pivotProduct = 1;      // product of the raw pivot entries

    int constraintRows() const { return static_cast<int>(m.rows()) - topRows; }
    bool rowIgnored(int i) const;
    bool colIgnored(int j) const;
};

/**
 * One simplicial cone of a signed decomposition. Generators are the live
 * columns of a final elimination state restricted to the identity block;
 * for a homogenized system the last row carries the generator heights.
 */
struct SignedCone {
    int sign = 0;
    MatrixXr generators;
    std::optional<Rational> pivotProduct;
};

/**
 * Signed simplicial decomposition of {x >= 0 : B x = 0} for a homogenized
 * full-row-rank B with a positive kernel vector.
 */
struct Decomposition {
    std::vector<SignedCone> cones;
    Integer invariantFactorProduct = 1;
    int n = 0;   // input columns minus one
    int r = 0;
    int d() const { return n - r; }
};

/**
 * Column classification for a constraint row: a live column with a nonzero
 * entry in that row is contributing when the row entry and the first nonzero
 * of the column (scanning identity rows top to bottom, then live constraint
 * rows) have equal signs, dually contributing otherwise. The stored weight is
 * the sign the state acquires if that column is chosen as the pivot: the sign
 * of the row entry on the contributing side, its negation on the dual side.
 */
struct ColumnClassification {
    std::vector<std::pair<int, int>> contributing;
    std::vector<std::pair<int, int>> dual;
};

/**
 * Initial state [identity; B] for an integral full-row-rank B whose kernel
 * cone contains a positive vector.
 *
 * @throws RankError If B is rank deficient.
 * @throws PreconditionError If the cone has no positive vector.
 */
ElimState initState(const MatrixXz& b);

/**
 * Eliminate constraint row i using live column j as the pivot: every other
 * live column gets a multiple of column j added so that its entry in row i
 * becomes zero; column j and row i are then frozen and the raw pivot entry
 * multiplies into pivot_product.
 *
 * @throws DegenerateInputError If (i, j) is frozen or the pivot entry is zero.
 */
ElimState pivotEliminate(const ElimState& st, int i, int j);

ColumnClassification classifyColumns(const ElimState& st, int i);

/**
 * Constant-term extraction over constraint row i: branch over the smaller
 * classification side (ties go to the dual side), one successor state per
 * chosen column. An empty chosen side means the extraction vanishes and no
 * successors are produced.
 *
 * @throws DegenerateInputError If row i has no live nonzero entry at all.
 */
std::vector<ElimState> ctRow(const ElimState& st, int i);

/**
 * Run the full signed elimination: r rounds of constant-term extraction with
 * the documented deterministic row choice (live row minimizing the smaller
 * classification side, ties to the smallest row index), merging states with
 * identical frozen row and column sets by summing signs and dropping states
 * whose signs cancel to zero.
 */
Decomposition simpcone(const MatrixXz& b);

/**
 * Weighted lattice membership of a point in one cone of a decomposition.
 *
 * Each cone stands for the series expansion of 1 / prod_j (1 - y^{g_j}) over
 * its generator columns g_j. A generator whose leading nonzero entry is
 * positive expands as the ordinary geometric series (coefficient t_j >= 0); a
 * generator with negative leading entry expands on the reciprocal side, which
 * counts points with t_j < 0 and flips the sign of the whole term. Summing
 * this weight over all cones of a decomposition of {x >= 0 : B x = 0}
 * reproduces the indicator of that cone at every integer point x with B x = 0.
 *
 * Returns sign * (-1)^{#negative-leading generators} if x lies in the term's
 * half-open cone, and 0 otherwise (including x outside the generators' span).
 *
 * @throws DimensionError If x's size differs from the generator row count.
 * @throws RankError If the generator columns are linearly dependent.
 */
int coneCountingWeight(const SignedCone& c, const VectorXr& x);

/**
 * Square of the elimination invariant of a stacked matrix [C; B] with square
 * C: det(B1)^2 * det(N^T N) for N = C2 - C1 B1^{-1} B2, where B1 is the
 * leading square block of B. Invariant under elementary column operations on
 * the stack and unimodular row operations on B (wherever both sides are
 * defined).
 *
 * @throws SingularMatrixError If B1 is singular (invariant undefined).
 */
Rational invariantISq(const MatrixXr& m, int topRows);

/**
 * Exact square root of invariantISq when it is rational.
 *
 * @throws PreconditionError If the square root is irrational.
 */
Rational invariantI(const MatrixXr& m, int topRows);

}  // namespace ctvol
