#pragma once

#include <vector>

#include "ctvol/rational.hpp"

namespace ctvol {

/**
 * Smith normal form U B V = S of a full-row-rank integer matrix B (r x n):
 * U is r x r unimodular, V is n x n unimodular, and S = (diag(d_1..d_r) | 0)
 * with each d_i > 0 and d_1 | d_2 | ... | d_r.
 */
struct SmithNormalForm {
    MatrixXz u;
    MatrixXz s;
    MatrixXz v;
    std::vector<Integer> invariantFactors;
};

/**
 * Compute the Smith normal form with a deterministic pivot rule: among the
 * remaining entries, the one of smallest absolute value, ties broken by
 * (row, column) lexicographic order.
 *
 * @throws RankError If b does not have full row rank.
 * @throws InternalError If the transform identity u*b*v == s fails.
 */
SmithNormalForm smithNormalForm(const MatrixXz& b);

/**
 * Basis of the lattice {x integral : b x = 0} for full-row-rank b, as the
 * last n - r columns of the Smith normal form's V.
 */
MatrixXz latticeBasisOfNullspace(const MatrixXz& b);

/**
 * Product d_1 * ... * d_r of the invariant factors.
 */
Integer invariantFactorProduct(const MatrixXz& b);

}  // namespace ctvol
