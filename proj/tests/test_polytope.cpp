#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "ctvol/errors.hpp"
#include "ctvol/linalg.hpp"
#include "ctvol/polytope.hpp"

using namespace ctvol;

namespace {

MatrixXz imat(int rows, int cols, std::initializer_list<long> vals)
{
    MatrixXz m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = *it++;
    return m;
}

VectorXz ivec(std::initializer_list<long> vals)
{
    VectorXz v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (long x : vals)
        v(i++) = x;
    return v;
}

MatrixXr qmat(int rows, int cols, std::initializer_list<Rational> vals)
{
    MatrixXr m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = *it++;
    return m;
}

VectorXr qvec(std::initializer_list<Rational> vals)
{
    VectorXr v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (const Rational& q : vals)
        v(i++) = q;
    return v;
}

// Pentagon with vertices (0,0), (1,0), (0,1), (3,1), (1,3); area 5.
PolytopeH pentagon()
{
    return PolytopeH(qmat(5, 2, {-1, 0, 0, -1, 1, -2, -2, 1, 1, 1}),
                     qvec({0, 0, 1, 1, 4}));
}

// Brute-force lattice count over an explicit box, no pruning.
Integer naiveCount(const MatrixXz& a, const VectorXz& rhs, const VectorXz& hi)
{
    const int n = static_cast<int>(a.cols());
    VectorXz x = VectorXz::Zero(n);
    Integer count = 0;
    while (true) {
        if (VectorXz(a * x) == rhs)
            ++count;
        int j = 0;
        while (j < n && x(j) == hi(j)) {
            x(j) = 0;
            ++j;
        }
        if (j == n)
            break;
        ++x(j);
    }
    return count;
}

}  // namespace

TEST_CASE("PolytopeStd validates shape, rank, feasibility, boundedness, dimension")
{
    // Valid: segment conv{(0,0), (4,2)} lifted to standard form.
    PolytopeStd seg(imat(2, 3, {1, -2, 0, 1, 0, 1}), ivec({0, 4}));
    CHECK(seg.n() == 3);
    CHECK(seg.r() == 2);
    CHECK(seg.d() == 1);
    CHECK(seg.coordinateMaxima()(0) == 4);
    CHECK(seg.coordinateMaxima()(1) == 2);
    CHECK(seg.coordinateMaxima()(2) == 4);

    // Rank-deficient A.
    CHECK_THROWS_AS(PolytopeStd(imat(2, 3, {1, 2, 3, 2, 4, 6}), ivec({1, 2})),
                    RankError);
    // Empty: x1 + x2 = -1.
    CHECK_THROWS_AS(PolytopeStd(imat(1, 2, {1, 1}), ivec({-1})), PreconditionError);
    // Unbounded: x1 - x2 = 0.
    CHECK_THROWS_AS(PolytopeStd(imat(1, 2, {1, -1}), ivec({0})), PreconditionError);
    // Dimension deficient: x1 + x2 = 0 forces x = 0, a point of dimension 0
    // inside n - r = 1 expected dimensions.
    CHECK_THROWS_AS(PolytopeStd(imat(1, 2, {1, 1}), ivec({0})), PreconditionError);
    // Shape mismatch.
    CHECK_THROWS_AS(PolytopeStd(imat(1, 2, {1, 1}), ivec({1, 2})), DimensionError);
}

TEST_CASE("PolytopeStd::dilate scales the right-hand side")
{
    PolytopeStd seg(imat(2, 3, {1, -2, 0, 1, 0, 1}), ivec({0, 4}));
    PolytopeStd seg3 = seg.dilate(3);
    CHECK(seg3.b() == ivec({0, 12}));
    CHECK(seg3.a() == seg.a());
    CHECK_THROWS_AS(seg.dilate(0), PreconditionError);
    CHECK_THROWS_AS(seg.dilate(-2), PreconditionError);
}

TEST_CASE("coneOver appends -b and requires an interior ray")
{
    PolytopeStd seg(imat(2, 3, {1, -2, 0, 1, 0, 1}), ivec({0, 4}));
    ConedSystem cone = coneOver(seg);
    CHECK(cone.n() == 3);
    CHECK(cone.r() == 2);
    CHECK(cone.b() == imat(2, 4, {1, -2, 0, 0, 1, 0, 1, -4}));
    CHECK(positiveVectorExists(cone.b()));

    // x1 = 0, x2 free-slack: cone over it has no strictly positive vector
    // because the first coordinate must vanish.
    MatrixXz flat = imat(1, 2, {1, 0});
    CHECK_FALSE(positiveVectorExists(MatrixXz(imat(1, 3, {1, 0, 0}))));
    CHECK(positiveVectorExists(flat) == false);
}

TEST_CASE("PolytopeH validates and stdFromH produces the expected system")
{
    PolytopeH pent = pentagon();
    CHECK(pent.d() == 2);
    CHECK(pent.m() == 5);

    PolytopeStd std5 = stdFromH(pent);
    // Two nonnegativity rows absorbed; three rows slacked.
    CHECK(std5.n() == 5);
    CHECK(std5.r() == 3);
    CHECK(std5.d() == 2);
    CHECK(std5.a() == imat(3, 5, {1, -2, 1, 0, 0, -2, 1, 0, 1, 0, 1, 1, 0, 0, 1}));
    CHECK(std5.b() == ivec({1, 1, 4}));

    // Fractional coefficients integerize exactly: x/2 <= 1/3 -> 3x + s = 2.
    PolytopeH frac(qmat(2, 1, {Rational(1, 2), -1}), qvec({Rational(1, 3), 0}));
    PolytopeStd fs = stdFromH(frac);
    CHECK(fs.a() == imat(1, 2, {3, 1}));
    CHECK(fs.b() == ivec({2}));

    // A polytope leaving the nonnegative orthant is rejected.
    CHECK_THROWS_AS(stdFromH(PolytopeH(qmat(2, 1, {1, -1}), qvec({1, 1}))),
                    PreconditionError);

    // Unbounded and empty H-forms are rejected at construction.
    CHECK_THROWS_AS(PolytopeH(qmat(1, 1, {1}), qvec({1})), PreconditionError);
    CHECK_THROWS_AS(PolytopeH(qmat(2, 1, {1, -1}), qvec({-2, 1})), PreconditionError);
    CHECK_THROWS_AS(PolytopeH(qmat(1, 2, {0, 0}), qvec({1})), PreconditionError);
}

TEST_CASE("verticesOfH enumerates the pentagon's vertices with binding rows")
{
    VertexEnumeration e = verticesOfH(pentagon());
    REQUIRE(e.vertices.size() == 5);
    CHECK(e.simple);

    std::vector<VectorXr> expected = {
        qvec({0, 0}), qvec({0, 1}), qvec({1, 0}), qvec({1, 3}), qvec({3, 1})};
    for (size_t i = 0; i < expected.size(); ++i)
        CHECK(e.vertices[i].v == expected[i]);

    // (0,0) binds the two nonnegativity rows 0 and 1.
    CHECK(e.vertices[0].binding == std::vector<int>{0, 1});
    // (1,3) binds -2x+y<=1 and x+y<=4 (rows 3 and 4).
    CHECK(e.vertices[3].binding == std::vector<int>{3, 4});
}

TEST_CASE("verticesOfH flags the square pyramid apex as non-simple")
{
    // Apex (0,0,1) binds all four slanted facets.
    PolytopeH pyr(qmat(5, 3, {0, 0, -1, 1, 0, 1, -1, 0, 1, 0, 1, 1, 0, -1, 1}),
                  qvec({0, 1, 1, 1, 1}));
    VertexEnumeration e = verticesOfH(pyr);
    REQUIRE(e.vertices.size() == 5);
    CHECK_FALSE(e.simple);
    bool sawApex = false;
    for (const VertexInfo& vi : e.vertices)
        if (vi.v == qvec({0, 0, 1})) {
            sawApex = true;
            CHECK(vi.binding.size() == 4);
        }
    CHECK(sawApex);
}

TEST_CASE("enumerateBasicVertices matches the vertex geometry")
{
    // Standard-form pentagon: project basic vertices to the first two
    // coordinates and compare with the H-form vertex list.
    PolytopeStd p = stdFromH(pentagon());
    std::vector<VectorXr> basics = enumerateBasicVertices(p);
    std::set<std::pair<Rational, Rational>> projected;
    for (const VectorXr& v : basics)
        projected.insert({v(0), v(1)});
    std::set<std::pair<Rational, Rational>> expected = {
        {0, 0}, {0, 1}, {1, 0}, {1, 3}, {3, 1}};
    CHECK(projected == expected);

    // Fractional vertex: halfseg conv{(1/2,0), (0,1/2)}.
    PolytopeStd half(imat(1, 2, {2, 2}), ivec({1}));
    std::vector<VectorXr> hv = enumerateBasicVertices(half);
    REQUIRE(hv.size() == 2);
    CHECK(hv[0] == qvec({0, Rational(1, 2)}));
    CHECK(hv[1] == qvec({Rational(1, 2), 0}));
}

TEST_CASE("enumerateIntegerSolutions agrees with naive box enumeration")
{
    std::mt19937_64 gen(2718);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> rhsDist(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(gen() % 2);
        int cols = 2 + static_cast<int>(gen() % 3);
        MatrixXz a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                a(i, j) = entry(gen);
        VectorXz rhs(rows);
        for (int i = 0; i < rows; ++i)
            rhs(i) = rhsDist(gen);
        VectorXz lo = VectorXz::Zero(cols);
        VectorXz hi = VectorXz::Constant(cols, 4);

        Integer pruned = 0;
        std::set<std::vector<long>> seen;
        enumerateIntegerSolutions(a, rhs, lo, hi, 1000000, [&](const VectorXz& x) {
            ++pruned;
            std::vector<long> key;
            for (int j = 0; j < cols; ++j)
                key.push_back(x(j).convert_to<long>());
            CHECK(seen.insert(key).second);   // no duplicates
            CHECK(VectorXz(a * x) == rhs);    // genuine solutions only
        });
        CHECK(pruned == naiveCount(a, rhs, hi));
    }
}

TEST_CASE("enumerateIntegerSolutions respects bounds and budget")
{
    // Negative lower bounds.
    MatrixXz a = imat(1, 2, {1, 1});
    Integer count = 0;
    enumerateIntegerSolutions(a, ivec({0}), ivec({-2, -2}), ivec({2, 2}), 1000,
                              [&](const VectorXz&) { ++count; });
    CHECK(count == 5);   // (-2,2), (-1,1), (0,0), (1,-1), (2,-2)

    // Empty interval short-circuits.
    count = 0;
    enumerateIntegerSolutions(a, ivec({0}), ivec({1, 1}), ivec({0, 0}), 1000,
                              [&](const VectorXz&) { ++count; });
    CHECK(count == 0);

    // Tiny budget trips on a large box.
    MatrixXz zero = MatrixXz::Zero(1, 6);
    CHECK_THROWS_AS(enumerateIntegerSolutions(zero, ivec({0}), VectorXz::Zero(6),
                                              VectorXz::Constant(6, 20), 10,
                                              [](const VectorXz&) {}),
                    BudgetExceededError);
}

TEST_CASE("latticeCount reproduces hand counts and Ehrhart values")
{
    // Pentagon: L(s) = 5 s^2 + 3 s + 1 (area 5, boundary lattice points 6).
    PolytopeStd p = stdFromH(pentagon());
    CHECK(latticeCount(p, 0) == 1);
    CHECK(latticeCount(p, 1) == 9);
    CHECK(latticeCount(p, 2) == 27);
    CHECK(latticeCount(p, 3) == 55);

    // Halfseg: odd dilations hit no lattice point.
    PolytopeStd half(imat(1, 2, {2, 2}), ivec({1}));
    CHECK(latticeCount(half, 0) == 1);
    CHECK(latticeCount(half, 1) == 0);
    CHECK(latticeCount(half, 2) == 2);
    CHECK(latticeCount(half, 3) == 0);
    CHECK(latticeCount(half, 4) == 3);

    CHECK_THROWS_AS(latticeCount(p, -1), PreconditionError);
}

TEST_CASE("affineSpanPeriod detects lattice-free spans")
{
    PolytopeStd half(imat(1, 2, {2, 2}), ivec({1}));
    CHECK(affineSpanPeriod(half) == 2);
    CHECK(affineSpanPeriod(half.dilate(2)) == 1);

    PolytopeStd seg(imat(2, 3, {1, -2, 0, 1, 0, 1}), ivec({0, 4}));
    CHECK(affineSpanPeriod(seg) == 1);

    // 3x + 3y = 2: span has integer points only at dilations divisible by 3.
    PolytopeStd third(imat(1, 2, {3, 3}), ivec({2}));
    CHECK(affineSpanPeriod(third) == 3);

    // Slack rows always make the span integral.
    CHECK(affineSpanPeriod(stdFromH(pentagon())) == 1);
}
