#pragma once

#include <functional>
#include <vector>

#include "ctvol/rational.hpp"

namespace ctvol {

/**
 * Rational polytope in standard form {alpha >= 0 : A alpha = b} with integer
 * data. Construction validates that A has full row rank, that the polytope is
 * nonempty and bounded, and that its dimension is exactly n - r (every
 * coordinate that vanishes identically on the polytope must already be
 * implied by the equality rows).
 */
class PolytopeStd {
public:
    PolytopeStd(MatrixXz a, VectorXz b);

    int n() const { return static_cast<int>(a_.cols()); }
    int r() const { return static_cast<int>(a_.rows()); }
    int d() const { return n() - r(); }
    const MatrixXz& a() const { return a_; }
    const VectorXz& b() const { return b_; }

    /** Exact per-coordinate maxima max{alpha_j : alpha in P}, cached. */
    const VectorXr& coordinateMaxima() const { return maxima_; }

    /** The dilation sP, realized as {alpha >= 0 : A alpha = s b}, s >= 1. */
    PolytopeStd dilate(const Integer& s) const;

private:
    MatrixXz a_;
    VectorXz b_;
    VectorXr maxima_;
};

/**
 * Homogenization B = (A | -b) of a standard-form polytope; the cone
 * {x >= 0 : B x = 0} meets the open positive orthant (validated).
 */
class ConedSystem {
public:
    explicit ConedSystem(MatrixXz b);

    const MatrixXz& b() const { return b_; }
    int n() const { return static_cast<int>(b_.cols()) - 1; }
    int r() const { return static_cast<int>(b_.rows()); }

private:
    MatrixXz b_;
};

/**
 * Rational polytope {x : A' x <= b'}. Construction validates that no row is
 * zero and that the set is nonempty, bounded, and full-dimensional.
 */
class PolytopeH {
public:
    PolytopeH(MatrixXr a, VectorXr b);

    const MatrixXr& a() const { return a_; }
    const VectorXr& b() const { return b_; }
    int d() const { return static_cast<int>(a_.cols()); }
    int m() const { return static_cast<int>(a_.rows()); }

    PolytopeH dilate(const Integer& s) const;

private:
    MatrixXr a_;
    VectorXr b_;
};

/**
 * Vertex list; columns of the matrix are the points.
 */
struct PolytopeV {
    MatrixXr vertices;
};

/**
 * Homogenize: B = (A | -b).
 *
 * @throws PreconditionError If the cone over p has no positive vector.
 */
ConedSystem coneOver(const PolytopeStd& p);

/**
 * Whether {x >= 0 : B x = 0} contains a strictly positive vector
 * (equivalently, whether {y >= 0 : B y = -B 1} is nonempty).
 */
bool positiveVectorExists(const MatrixXz& b);

/**
 * Convert an inequality description contained in the nonnegative orthant to
 * standard form. Rows expressing plain nonnegativity of one coordinate
 * (zero right-hand side, single negative coefficient) are absorbed by the
 * orthant; every other row receives one slack variable after exact
 * integerization.
 *
 * @throws PreconditionError If p leaves the nonnegative orthant.
 */
PolytopeStd stdFromH(const PolytopeH& p);

struct VertexInfo {
    VectorXr v;
    std::vector<int> binding;   // indices of rows satisfied with equality
};

struct VertexEnumeration {
    std::vector<VertexInfo> vertices;   // sorted lexicographically
    bool simple = false;                // every vertex binds exactly d rows
};

/**
 * All vertices of an inequality-form polytope by enumeration of row subsets,
 * with their binding row sets.
 */
VertexEnumeration verticesOfH(const PolytopeH& p);

/**
 * All basic feasible points of a standard-form polytope (its vertex set) by
 * enumeration of column subsets, sorted lexicographically.
 */
std::vector<VectorXr> enumerateBasicVertices(const PolytopeStd& p);

/**
 * Exact count of {alpha integral >= 0 : A alpha = s b} by pruned search over
 * the LP-derived bounding box.
 *
 * @throws BudgetExceededError If more than budget search nodes are visited.
 */
Integer latticeCount(const PolytopeStd& p, const Integer& s, long budget = 10000000);

/**
 * Smallest dilation factor s >= 1 for which the affine span {A alpha = s b}
 * contains integer points; every dilation with lattice points is a multiple
 * of it. Computed from the Smith Normal Form of A. Equals 1 whenever the
 * polytope is full-dimensional or has an integer point itself.
 */
Integer affineSpanPeriod(const PolytopeStd& p);

/**
 * Enumerate all integer x with lo <= x <= hi and a x = rhs, invoking visit on
 * each. Depth-first with exact per-row achievable-interval pruning; every
 * visited search node counts against the budget.
 */
void enumerateIntegerSolutions(const MatrixXz& a, const VectorXz& rhs,
                               const VectorXz& lo, const VectorXz& hi, long budget,
                               const std::function<void(const VectorXz&)>& visit);

}  // namespace ctvol
