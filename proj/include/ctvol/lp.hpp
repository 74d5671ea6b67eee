#pragma once

#include "ctvol/rational.hpp"

namespace ctvol {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value = 0;   // objective value, valid when status == Optimal
    VectorXr x;           // an optimal point, valid when status == Optimal
};

/**
 * Exact rational simplex method (Bland's rule, two phases) for
 *   max c.x  subject to  a x = b, x >= 0.
 * Bland's rule makes every run deterministic and cycle-free; all arithmetic
 * is exact.
 */
LpResult maximizeStandardForm(const MatrixXr& a, const VectorXr& b, const VectorXr& c);

/**
 * Whether {x >= 0 : a x = b} is nonempty (phase one only).
 */
bool standardFormFeasible(const MatrixXr& a, const VectorXr& b);

/**
 * max c.x subject to a x <= b with x free, by splitting x into positive and
 * negative parts and slacking the rows. The reported point has the original
 * dimension.
 */
LpResult maximizeInequalityForm(const MatrixXr& a, const VectorXr& b, const VectorXr& c);

/**
 * Whether {x : a x <= b} is nonempty.
 */
bool inequalityFormFeasible(const MatrixXr& a, const VectorXr& b);

}  // namespace ctvol
