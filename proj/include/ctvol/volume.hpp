#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ctvol/polytope.hpp"
#include "ctvol/rational.hpp"
#include "ctvol/simpcone.hpp"

namespace ctvol {

/** Dual test vector; pairs against the non-height coordinates of generators. */
using Beta = VectorXz;

enum class Method { Simpcone, FulldimBrion, Lawrence, Triangulation, GeneralRelative, EhrhartOracle };

struct VolumeResult {
    Rational value = 0;
    Method method = Method::Simpcone;
    std::optional<Beta> beta;
    int coneCount = 0;
};

/** One generator's (height, beta.direction) pair. */
using HeightPair = std::pair<Rational, Rational>;

/**
 * One summand of the constant-term volume formula: a numerator value times
 * ct_q over the generator pairs. Terms carrying fewer than d + 1 pairs
 * contribute zero.
 */
struct VolTerm {
    Rational numeratorValue = 0;
    std::vector<HeightPair> pairs;
};

/**
 * beta is admissible for a cone when no generator has both height zero and a
 * zero pairing beta.direction.
 */
bool isAdmissible(const Beta& beta, const SignedCone& cone);
bool isAdmissible(const Beta& beta, const std::vector<SignedCone>& cones);

/**
 * The constant term
 *   (prod over height-zero pairs of -b)^{-1} * [q^r] prod over the rest of
 *   (m - b q)^{-1},
 * where r counts the height-zero pairs.
 *
 * @throws InadmissibleBetaError If some pair is (0, 0).
 */
Rational ctq(const std::vector<HeightPair>& pairs);

/**
 * Evaluate one volume term of dimension d: zero when the term has fewer than
 * d + 1 pairs, numerator * ct_q otherwise.
 */
Rational volTerm(const VolTerm& term, int d);

/**
 * (height, beta.direction) pairs of a cone's generator columns; the height is
 * the last coordinate.
 */
std::vector<HeightPair> conePairs(const SignedCone& cone, const Beta& beta);

/**
 * Deterministic seeded search for an admissible beta: the zero vector is
 * tried first (when enabled), then uniform draws from [-range, range]^dim
 * with the range growing fourfold every 250 failures.
 *
 * @throws PreconditionError If maxAttempts draws all fail.
 */
Beta sampleBeta(int dim, const std::vector<SignedCone>& cones, unsigned long seed,
                int range = 50, bool tryZeroFirst = true, int maxAttempts = 1000);

/**
 * Volume contribution of a full-dimensional simplicial cone in homogenizing
 * coordinates: |det(generators)| * ct_q(pairs). Zero when the cone has fewer
 * generators than the ambient dimension.
 */
Rational volConeFull(const SignedCone& cone, const Beta& beta);

/**
 * (1/d!) * sum of sign * volConeFull over a signed family of full-dimensional
 * cones (the Brion-style sum).
 */
VolumeResult volumeFulldim(const std::vector<SignedCone>& cones, int d, const Beta& beta);

/**
 * Volume contribution of a lower-dimensional decomposition cone:
 * |D / pivot_product| * ct_q(pairs), with D the invariant factor product of
 * the homogenized system. Zero when the generators are rank-deficient.
 *
 * @throws PreconditionError If the cone carries no pivot product.
 */
Rational volConeRelative(const SignedCone& cone, const Integer& invariantFactorProduct,
                         const Beta& beta);

/**
 * (1/d!) * signed sum of volConeRelative over a decomposition.
 *
 * For a decomposition of cone_over(p) this equals the relative volume of p
 * divided by affineSpanPeriod(p); the two coincide whenever the affine span
 * of p itself contains integer points.
 *
 * @throws InadmissibleBetaError If beta is inadmissible for some cone.
 */
Rational decompositionVolume(const Decomposition& dec, const Beta& beta);

/**
 * Relative volume by signed elimination: homogenize, decompose, draw an
 * admissible beta from the seed, evaluate, and rescale by the affine span
 * period so the result is the volume measured against the lattice of the
 * affine span (the leading growth rate of the lattice-point count along the
 * dilations that meet the lattice).
 */
VolumeResult volumeSimpcone(const PolytopeStd& p, unsigned long seed = 0);
VolumeResult volumeSimpcone(const PolytopeStd& p, const Decomposition& dec, const Beta& beta);

/**
 * Relative volume of a signed cone family against an explicit lattice basis
 * of the common span: the Det ratio sqrt(gram(V)/gram(basis)) replaces the
 * |D / pivot_product| factor, so no pivot data is needed.
 */
VolumeResult volumeGeneralRelative(const std::vector<SignedCone>& cones,
                                   const MatrixXr& latticeBasis, int d, const Beta& beta);

/**
 * Map each rational column to the unique primitive integer vector with the
 * same direction (clear denominators, divide by the entry gcd).
 *
 * @throws DegenerateInputError On a zero column.
 */
MatrixXz primitiveColumns(const MatrixXr& m);

/**
 * Number of lattice points in the half-open parallelepiped spanned by the
 * given integer generator columns, computed as the Det ratio against a basis
 * of the lattice of the generators' span. Columns are taken as given.
 *
 * @throws PreconditionError If the ratio is not a positive integer (basis
 * does not generate the span lattice).
 */
Integer parallelepipedCount(const MatrixXz& generators, const MatrixXz& basis);

/**
 * Supporting cones of a simple integral inequality-form polytope at its
 * vertices, in homogenizing coordinates: at vertex v with binding rows A_v
 * the generator matrix is ((-A_v^{-1}, v), (0, 1)), all signs +1.
 *
 * @throws PreconditionError On a non-simple vertex or a non-integral vertex.
 */
std::vector<SignedCone> supportingConesSimple(const PolytopeH& p);

/**
 * Vertex-sum volume formula for simple integral polytopes:
 *   (1/d!) sum over vertices of (beta.v)^d / (|det A_v| prod_j a_vj)
 * with a_v = beta^T A_v^{-1}.
 *
 * @throws BetaRejectedError If some entry of beta^T A_v^{-1} vanishes
 * (resample with a fresh draw).
 */
VolumeResult volumeLawrence(const PolytopeH& p, const Beta& beta);

/**
 * Seeded variant: draws until accepted, mirroring sampleBeta's schedule.
 */
VolumeResult volumeLawrenceSeeded(const PolytopeH& p, unsigned long seed,
                                  int range = 50, int maxAttempts = 1000);

/**
 * Driver for the supporting-cone route: build the vertex cones, draw an
 * admissible beta, evaluate the Brion-style sum.
 */
VolumeResult volumeBrion(const PolytopeH& p, unsigned long seed);

struct Simplex {
    int sign = 1;
    MatrixXr vertices;   // d x (d+1), columns are vertices
};

/**
 * Signed sum of exact simplex volumes |det(v_2 - v_1, ..., v_{d+1} - v_1)|/d!.
 */
VolumeResult volumeTriangulation(const std::vector<Simplex>& simplices);

/**
 * Fan triangulation of a convex polygon given by its vertices. Unless the
 * caller marks them ordered, vertices are sorted counterclockwise around the
 * centroid with exact cross-product comparisons.
 *
 * @throws PreconditionError With fewer than three distinct vertices.
 */
std::vector<Simplex> fanTriangulatePolygon(const PolytopeV& p, bool ordered = false);

/**
 * Homogenized cone over a simplex: columns (v_i; 1).
 */
SignedCone simplexCone(const MatrixXr& vertexCols);

}  // namespace ctvol
