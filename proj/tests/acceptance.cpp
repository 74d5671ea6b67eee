// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctvol/errors.hpp"
#include "ctvol/io.hpp"
#include "ctvol/linalg.hpp"
#include "ctvol/lp.hpp"
#include "ctvol/oracles.hpp"
#include "ctvol/polytope.hpp"
#include "ctvol/simpcone.hpp"
#include "ctvol/snf.hpp"
#include "ctvol/volume.hpp"

using namespace ctvol;

namespace {

std::string dataPath(const std::string& name)
{
    return std::string(TEST_DATA_DIR) + "/" + name;
}

PolytopeStd loadStd(const std::string& name)
{
    LoadedPolytope p = loadPolytope(dataPath(name));
    if (std::holds_alternative<PolytopeStd>(p))
        return std::get<PolytopeStd>(p);
    return stdFromH(std::get<PolytopeH>(p));
}

PolytopeH loadH(const std::string& name)
{
    return std::get<PolytopeH>(loadPolytope(dataPath(name)));
}

// The ten-polytope corpus used by the beta-independence and property criteria.
std::vector<std::pair<std::string, PolytopeStd>> corpus()
{
    std::vector<std::pair<std::string, PolytopeStd>> out;
    out.emplace_back("pentagon", loadStd("pentagon.hrep.json"));
    out.emplace_back("vol_31_98", loadStd("vol_31_98.std.json"));
    out.emplace_back("knapsack_1_2_3_6", loadStd("knapsack_1_2_3_6.std.json"));
    out.emplace_back("knapsack_2_3_5_30", loadStd("knapsack_2_3_5_30.std.json"));
    out.emplace_back("knapsack_1_1_1_1_4", loadStd("knapsack_1_1_1_1_4.std.json"));
    out.emplace_back("segment_4_2", loadStd("segment_4_2.std.json"));
    out.emplace_back("halfseg", loadStd("halfseg.std.json"));
    out.emplace_back("square_unit", loadStd("square_unit.hrep.json"));
    out.emplace_back("cube_shifted", loadStd("cube_shifted.hrep.json"));
    out.emplace_back("simplex3", loadStd("simplex3.hrep.json"));
    return out;
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

std::string betaKey(const Beta& b)
{
    std::ostringstream os;
    for (Eigen::Index i = 0; i < b.size(); ++i)
        os << b(i).str() << ",";
    return os.str();
}

long long elapsedMs(const std::chrono::steady_clock::time_point& start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------

bool criterionPentagon(std::string& detail)
{
    auto start = std::chrono::steady_clock::now();
    PolytopeH pent = loadH("pentagon.hrep.json");
    PolytopeStd ps = stdFromH(pent);

    Rational viaSimpcone = volumeSimpcone(ps, 0).value;
    Rational viaLawrence = volumeLawrenceSeeded(pent, 0).value;
    Rational viaBrion = volumeBrion(pent, 0).value;

    VertexEnumeration e = verticesOfH(pent);
    MatrixXr verts(2, static_cast<Eigen::Index>(e.vertices.size()));
    for (size_t i = 0; i < e.vertices.size(); ++i)
        verts.col(static_cast<Eigen::Index>(i)) = e.vertices[i].v;
    Rational viaTriangulation =
        volumeTriangulation(fanTriangulatePolygon(PolytopeV{verts})).value;

    Rational viaOracle = ehrhartVolume(ps);
    long long ms = elapsedMs(start);

    std::ostringstream os;
    os << "simpcone " << viaSimpcone << ", lawrence " << viaLawrence << ", triangulation "
       << viaTriangulation << ", fulldim-brion " << viaBrion << ", oracle " << viaOracle
       << " in " << ms << " ms";
    detail = os.str();
    return viaSimpcone == 5 && viaLawrence == 5 && viaBrion == 5 &&
           viaTriangulation == 5 && viaOracle == 5 && ms < 1000;
}

bool criterion3198(std::string& detail)
{
    auto start = std::chrono::steady_clock::now();
    PolytopeStd p = loadStd("vol_31_98.std.json");
    Decomposition dec = simpcone(coneOver(p).b());
    Rational value = volumeSimpcone(p, 0).value;
    long long ms = elapsedMs(start);

    std::set<Rational> magnitudes;
    for (const SignedCone& c : dec.cones)
        magnitudes.insert(abs(*c.pivotProduct));

    std::ostringstream os;
    os << "volume " << value << ", " << dec.cones.size()
       << " cones, pivot magnitudes {";
    for (const Rational& m : magnitudes)
        os << m << " ";
    os << "} in " << ms << " ms";
    detail = os.str();
    return value == Rational(31, 98) && dec.cones.size() == 2 &&
           magnitudes == std::set<Rational>{3, 9} && ms < 1000;
}

bool criterionEliminationConformance(std::string& detail)
{
    MatrixXz a(2, 5);
    a << 5, 6, -1, -2, -3, -1, 1, -3, 1, 1;
    Decomposition dec = simpcone(a);

    // Frozen pivot column sets {1,3} and {2,3} (1-based) with the published
    // generator matrices; live columns are the generators' unit rows.
    MatrixXr g1 = qmat(5, 3,
                       {Rational(-17, 16), Rational(7, 16), Rational(5, 8),
                        1, 0, 0,
                        Rational(11, 16), Rational(3, 16), Rational(1, 8),
                        0, 1, 0,
                        0, 0, 1});
    MatrixXr g2 = qmat(5, 3,
                       {1, 0, 0,
                        Rational(-16, 17), Rational(7, 17), Rational(10, 17),
                        Rational(-11, 17), Rational(8, 17), Rational(9, 17),
                        0, 1, 0,
                        0, 0, 1});

    auto frozenSet = [](const MatrixXr& gens) {
        std::set<int> frozen;
        for (int i = 0; i < gens.rows(); ++i) {
            bool unit = false;
            for (int j = 0; j < gens.cols(); ++j)
                if (gens(i, j) == 1 && gens.row(i).cwiseAbs().sum() == 1)
                    unit = true;
            if (!unit)
                frozen.insert(i + 1);   // report 1-based
        }
        return frozen;
    };

    bool saw1 = false;
    bool saw2 = false;
    for (const SignedCone& c : dec.cones) {
        if (c.sign == 1 && c.generators == g1)
            saw1 = true;
        if (c.sign == 1 && c.generators == g2)
            saw2 = true;
    }
    std::ostringstream os;
    os << dec.cones.size() << " cones after cancellation";
    if (dec.cones.size() == 2) {
        os << ", frozen column sets {";
        for (int v : frozenSet(dec.cones[0].generators))
            os << v << " ";
        os << "} {";
        for (int v : frozenSet(dec.cones[1].generators))
            os << v << " ";
        os << "}";
    }
    detail = os.str();
    if (dec.cones.size() != 2 || !saw1 || !saw2)
        return false;
    std::set<std::set<int>> sets = {frozenSet(dec.cones[0].generators),
                                    frozenSet(dec.cones[1].generators)};
    return sets == std::set<std::set<int>>{{1, 3}, {2, 3}};
}

bool criterionKnapsacks(std::string& detail)
{
    struct Case {
        std::string file;
        std::vector<long> a;
        long b;
    };
    std::vector<Case> cases = {
        {"knapsack_1_2_3_6.std.json", {1, 2, 3}, 6},
        {"knapsack_2_3_5_30.std.json", {2, 3, 5}, 30},
        {"knapsack_1_1_1_1_4.std.json", {1, 1, 1, 1}, 4},
    };
    std::ostringstream os;
    bool ok = true;
    for (const Case& c : cases) {
        PolytopeStd p = loadStd(c.file);
        int n = static_cast<int>(c.a.size());
        Rational denom = Rational(factorial(n - 1));
        for (long ai : c.a)
            denom *= ai;
        Rational closed = powRational(Rational(c.b), n - 1) / denom;
        Rational viaSimpcone = volumeSimpcone(p, 0).value;
        Rational viaOracle = ehrhartVolume(p);
        os << c.file << " -> " << viaSimpcone << " ";
        ok = ok && viaSimpcone == closed && viaOracle == closed;
    }
    detail = os.str();
    return ok;
}

bool criterionSegment(std::string& detail)
{
    PolytopeStd seg = loadStd("segment_4_2.std.json");
    Rational value = volumeSimpcone(seg, 0).value;
    Rational oracle = ehrhartVolume(seg);
    std::ostringstream os;
    os << "simpcone " << value << ", oracle " << oracle;
    detail = os.str();
    return value == 2 && oracle == 2;
}

bool criterionBetaIndependence(std::string& detail)
{
    std::ostringstream os;
    for (const auto& [name, p] : corpus()) {
        Decomposition dec = simpcone(coneOver(p).b());
        std::set<std::string> seen;
        Rational reference = volumeSimpcone(p, 0).value;
        int distinct = 0;
        for (unsigned long seed = 0; seed < 400 && distinct < 20; ++seed) {
            Beta b = sampleBeta(p.n(), dec.cones, seed, 50, /*tryZeroFirst=*/false);
            if (!seen.insert(betaKey(b)).second)
                continue;
            ++distinct;
            Rational v = volumeSimpcone(p, dec, b).value;
            if (v != reference) {
                os << name << ": beta " << betaKey(b) << " gave " << v
                   << " instead of " << reference;
                detail = os.str();
                return false;
            }
        }
        if (distinct < 20) {
            os << name << ": only " << distinct << " distinct admissible betas found";
            detail = os.str();
            return false;
        }
        os << name << " ";
    }
    os << ": 20 distinct betas each, volumes identical";
    detail = os.str();
    return true;
}

// --- criterion 7 sub-suites -------------------------------------------------

bool invarianceSuite(std::string& fail)
{
    std::mt19937_64 gen(714);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::uniform_int_distribution<int> smallInt(-3, 3);
    int compared = 0;
    int iterations = 0;
    while (compared < 100 && ++iterations < 3000) {
        int n = 2 + static_cast<int>(gen() % 3);
        int r = 1 + static_cast<int>(gen() % (n - 1));
        MatrixXr m(n + r, n);
        for (int i = 0; i < n + r; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = entry(gen);

        MatrixXr t = m;
        int ops = 1 + static_cast<int>(gen() % 6);
        for (int k = 0; k < ops; ++k) {
            switch (gen() % 6) {
            case 0: {   // swap two constraint rows
                if (r < 2)
                    break;
                int i1 = n + static_cast<int>(gen() % r);
                int i2 = n + static_cast<int>(gen() % r);
                if (i1 != i2)
                    t.row(i1).swap(t.row(i2));
                break;
            }
            case 1: {   // negate a constraint row
                t.row(n + static_cast<int>(gen() % r)) *= Rational(-1);
                break;
            }
            case 2: {   // add an integer multiple of one constraint row to another
                if (r < 2)
                    break;
                int i1 = n + static_cast<int>(gen() % r);
                int i2 = n + static_cast<int>(gen() % r);
                if (i1 != i2)
                    t.row(i2) += Rational(smallInt(gen)) * t.row(i1);
                break;
            }
            case 3: {   // negate a column of the whole stack
                t.col(gen() % n) *= Rational(-1);
                break;
            }
            case 4: {   // swap two columns
                int j1 = static_cast<int>(gen() % n);
                int j2 = static_cast<int>(gen() % n);
                if (j1 != j2)
                    t.col(j1).swap(t.col(j2));
                break;
            }
            default: {   // add a rational multiple of one column to another
                int j1 = static_cast<int>(gen() % n);
                int j2 = static_cast<int>(gen() % n);
                if (j1 != j2)
                    t.col(j2) += Rational(smallInt(gen), 2) * t.col(j1);
                break;
            }
            }
        }

        Rational before, after;
        try {
            before = invariantISq(m, n);
            after = invariantISq(t, n);
        } catch (const SingularMatrixError&) {
            continue;   // invariant undefined on this draw
        }
        if (before != after) {
            fail = "invariant changed under elementary operations";
            return false;
        }
        ++compared;
    }
    if (compared < 100) {
        fail = "fewer than 100 comparable invariant draws";
        return false;
    }
    return true;
}

bool detRatioSuite(std::string& fail)
{
    for (const auto& [name, p] : corpus()) {
        ConedSystem cone = coneOver(p);
        Decomposition dec = simpcone(cone.b());
        Rational baseGram = gramDetSq(toRational(latticeBasisOfNullspace(cone.b())));
        Rational dsq = Rational(dec.invariantFactorProduct) *
                       Rational(dec.invariantFactorProduct);
        for (const SignedCone& c : dec.cones) {
            Rational pp = *c.pivotProduct;
            if (gramDetSq(c.generators) * pp * pp != dsq * baseGram) {
                fail = "det ratio identity failed on " + name;
                return false;
            }
        }
    }
    return true;
}

bool seriesSuite(std::string& fail)
{
    std::mt19937_64 gen(515253);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        int count = 1 + static_cast<int>(gen() % 5);
        std::vector<HeightPair> pairs;
        for (int i = 0; i < count; ++i) {
            bool zeroHeight = (gen() % 4) == 0;
            Rational m = zeroHeight ? Rational(0) : Rational(num(gen), den(gen));
            if (!zeroHeight && m == 0)
                m = Rational(-2, 3);
            Rational b = Rational(num(gen), den(gen));
            if (zeroHeight && b == 0)
                b = 1;
            pairs.push_back({m, b});
        }
        if (ctq(pairs) != seriesCtq(pairs)) {
            fail = "ctq and seriesCtq disagreed";
            return false;
        }
    }
    return true;
}

bool parallelepipedSuite(std::string& fail)
{
    std::mt19937_64 gen(99887);
    std::uniform_int_distribution<int> entry(-3, 3);
    int done = 0;
    while (done < 50) {
        int rows = 2 + static_cast<int>(gen() % 3);
        int cols = 1 + static_cast<int>(gen() % rows);
        MatrixXz g(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                g(i, j) = entry(gen);
        if (rank(g) < cols)
            continue;

        MatrixXz basis;
        if (cols == rows) {
            basis = MatrixXz::Identity(rows, rows);
        } else {
            // Lattice of the column span: integer points orthogonal to the
            // integer kernel of g^T.
            MatrixXz normals = latticeBasisOfNullspace(MatrixXz(g.transpose()));
            basis = latticeBasisOfNullspace(MatrixXz(normals.transpose()));
        }
        Integer viaRatio = parallelepipedCount(g, basis);
        Integer viaEnumeration = parallelepipedEnumerate(g);
        if (viaRatio != viaEnumeration) {
            fail = "parallelepiped count mismatch (ratio " + viaRatio.str() +
                   ", enumeration " + viaEnumeration.str() + ")";
            return false;
        }
        ++done;
    }
    return true;
}

bool dilationSuite(std::string& fail)
{
    for (const auto& [name, p] : corpus()) {
        Rational base = volumeSimpcone(p, 0).value;
        for (long s = 1; s <= 3; ++s) {
            Rational scaled = volumeSimpcone(p.dilate(s), 0).value;
            if (scaled != powRational(Rational(s), p.d()) * base) {
                fail = "dilation scaling failed on " + name + " at s = " +
                       std::to_string(s);
                return false;
            }
        }
    }
    return true;
}

bool criterionProperties(std::string& detail)
{
    std::string fail;
    if (!invarianceSuite(fail) || !detRatioSuite(fail) || !seriesSuite(fail) ||
        !parallelepipedSuite(fail) || !dilationSuite(fail)) {
        detail = fail;
        return false;
    }
    detail = "invariance x100, det ratios, ct series x200, parallelepipeds x50, dilation s^d";
    return true;
}

bool criterionSignedCounts(std::string& detail)
{
    for (const auto& [name, p] : corpus()) {
        ConedSystem cone = coneOver(p);
        Decomposition dec = simpcone(cone.b());
        const int n = p.n();

        for (long s = 0; s <= 3; ++s) {
            VectorXz lo = VectorXz::Constant(n, -2);
            VectorXz hi(n);
            for (int j = 0; j < n; ++j)
                hi(j) = floorOf(p.coordinateMaxima()(j) * Rational(3)) + 2;
            VectorXz rhs = p.b() * Integer(s);

            Integer direct = 0;
            bool ok = true;
            enumerateIntegerSolutions(
                p.a(), rhs, lo, hi, 100000000, [&](const VectorXz& alpha) {
                    if (!ok)
                        return;
                    VectorXr x(n + 1);
                    for (int j = 0; j < n; ++j)
                        x(j) = Rational(alpha(j));
                    x(n) = s;

                    bool inside = true;
                    for (int j = 0; j < n; ++j)
                        if (alpha(j) < 0)
                            inside = false;
                    if (inside)
                        ++direct;

                    int signedCount = 0;
                    for (const SignedCone& c : dec.cones)
                        signedCount += coneCountingWeight(c, x);
                    if (signedCount != (inside ? 1 : 0))
                        ok = false;
                });
            if (!ok) {
                detail = "signed membership mismatch on " + name + " at height " +
                         std::to_string(s);
                return false;
            }
            if (direct != latticeCount(p, s)) {
                detail = "direct count mismatch on " + name;
                return false;
            }
        }
    }
    detail = "heights 0..3, every kernel lattice point, over the ten-polytope corpus";
    return true;
}

}  // namespace

int main()
{
    struct Criterion {
        std::string name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria = {
        {"pentagon volume 5 by four methods plus oracle", criterionPentagon},
        {"five-variable instance 31/98 with two cones", criterion3198},
        {"elimination cancellation conformance", criterionEliminationConformance},
        {"knapsack closed forms", criterionKnapsacks},
        {"segment relative volume 2", criterionSegment},
        {"beta independence across the corpus", criterionBetaIndependence},
        {"property suites", criterionProperties},
        {"signed per-height lattice counts", criterionSignedCounts},
    };

    bool allPass = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        allPass = allPass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
                  << criteria[i].name << " (" << detail << ")" << std::endl;
    }
    return allPass ? 0 : 1;
}
