#pragma once

#include <utility>
#include <vector>

#include "ctvol/polytope.hpp"
#include "ctvol/rational.hpp"
#include "ctvol/volume.hpp"

namespace ctvol {

/**
 * Exact polynomial fit of the lattice-point counting function of a polytope,
 * sampled at multiples of its vertex-denominator period.
 */
struct EhrhartFit {
    std::vector<std::pair<Integer, Integer>> samples;   // (dilation, count)
    VectorXr coefficients;                              // coefficients[k] multiplies s^k
    Integer periodUsed = 1;
};

/**
 * Fit the counting function s -> #(sP cap Z^n) exactly.
 *
 * The counting function restricted to multiples of the least common multiple
 * of the vertex coordinate denominators is a degree-d polynomial in the
 * dilation factor. The fit interpolates d + 1 samples and is then checked
 * against two further samples.
 *
 * @throws PreconditionError If the verification samples disagree with the
 *         interpolant (quasi-polynomial period misdetected).
 * @throws BudgetExceededError If a count exceeds the enumeration budget.
 */
EhrhartFit ehrhartFit(const PolytopeStd& p, long budget = 10000000);

/**
 * Leading coefficient of the fitted counting polynomial: the volume of the
 * polytope relative to the lattice of its affine span.
 */
Rational ehrhartVolume(const PolytopeStd& p, long budget = 10000000);

/**
 * Constant-term functional evaluated through truncated Laurent-series
 * arithmetic: each pair (m, b) contributes the factor 1/(m - b q), expanded
 * as a series (a single q^{-1} monomial when m = 0), and the value is the
 * q^0 coefficient of the product. Agrees with ctq by construction of the
 * latter; implemented independently for cross-checking.
 *
 * @throws InadmissibleBetaError If some pair is (0, 0).
 */
Rational seriesCtq(const std::vector<HeightPair>& pairs);

/**
 * Count integer points in the half-open parallelepiped
 * {sum_j t_j g_j : 0 <= t_j < 1} spanned by the columns of generators, by
 * direct enumeration of the integer bounding box.
 *
 * @throws RankError If the columns are dependent.
 * @throws BudgetExceededError If the bounding box holds more than cap points.
 */
Integer parallelepipedEnumerate(const MatrixXz& generators, long cap = 2000000);

}  // namespace ctvol
