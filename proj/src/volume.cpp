#include "ctvol/volume.hpp"

#include <limits>
#include <random>

#include "ctvol/errors.hpp"
#include "ctvol/linalg.hpp"

namespace ctvol {

namespace {

using boost::multiprecision::abs;

Rational betaDotDirection(const Beta& beta, const MatrixXr& generators, Eigen::Index col)
{
    Rational acc = 0;
    for (Eigen::Index t = 0; t + 1 < generators.rows(); ++t)
        acc += Rational(beta(t)) * generators(t, col);
    return acc;
}

void checkBetaSize(const Beta& beta, const SignedCone& cone)
{
    if (beta.size() + 1 != cone.generators.rows())
        throw DimensionError("beta length must be one less than the generator row count");
}

}  // namespace

bool isAdmissible(const Beta& beta, const SignedCone& cone)
{
    checkBetaSize(beta, cone);
    const Eigen::Index last = cone.generators.rows() - 1;
    for (Eigen::Index j = 0; j < cone.generators.cols(); ++j)
        if (cone.generators(last, j) == 0 && betaDotDirection(beta, cone.generators, j) == 0)
            return false;
    return true;
}

bool isAdmissible(const Beta& beta, const std::vector<SignedCone>& cones)
{
    for (const SignedCone& c : cones)
        if (!isAdmissible(beta, c))
            return false;
    return true;
}

Rational ctq(const std::vector<HeightPair>& pairs)
{
    int zeros = 0;
    Rational prefactor = 1;
    for (const auto& [m, b] : pairs)
        if (m == 0) {
            if (b == 0)
                throw InadmissibleBetaError("ctq: generator with height 0 and pairing 0");
            ++zeros;
            prefactor *= -b;
        }
    // [q^zeros] of the product of the truncated expansions
    // (m - b q)^{-1} = sum_k (b^k / m^{k+1}) q^k over the nonzero heights.
    std::vector<Rational> coeff(static_cast<std::size_t>(zeros) + 1, Rational(0));
    coeff[0] = 1;
    for (const auto& [m, b] : pairs) {
        if (m == 0)
            continue;
        std::vector<Rational> factor(coeff.size());
        Rational mk = m;           // m^{k+1}
        Rational bk = 1;           // b^k
        for (std::size_t k = 0; k < factor.size(); ++k) {
            factor[k] = bk / mk;
            mk *= m;
            bk *= b;
        }
        std::vector<Rational> next(coeff.size(), Rational(0));
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i] == 0)
                continue;
            for (std::size_t k = 0; i + k < next.size(); ++k)
                next[i + k] += coeff[i] * factor[k];
        }
        coeff = std::move(next);
    }
    return coeff[static_cast<std::size_t>(zeros)] / prefactor;
}

Rational volTerm(const VolTerm& term, int d)
{
    const std::size_t need = static_cast<std::size_t>(d) + 1;
    if (term.pairs.size() < need)
        return 0;
    if (term.pairs.size() > need)
        throw DimensionError("volTerm: more pairs than the dimension allows");
    return term.numeratorValue * ctq(term.pairs);
}

std::vector<HeightPair> conePairs(const SignedCone& cone, const Beta& beta)
{
    checkBetaSize(beta, cone);
    const Eigen::Index last = cone.generators.rows() - 1;
    std::vector<HeightPair> pairs;
    pairs.reserve(static_cast<std::size_t>(cone.generators.cols()));
    for (Eigen::Index j = 0; j < cone.generators.cols(); ++j)
        pairs.emplace_back(cone.generators(last, j), betaDotDirection(beta, cone.generators, j));
    return pairs;
}

namespace {

// Uniform integer in [lo, hi] from a standardized engine; rejection keeps the
// draw unbiased and the standardized engine keeps it reproducible everywhere.
long uniformInt(std::mt19937_64& gen, long lo, long hi)
{
    const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
    const unsigned long long limit =
        std::numeric_limits<unsigned long long>::max() / span * span;
    unsigned long long v = gen();
    while (v >= limit)
        v = gen();
    return lo + static_cast<long>(v % span);
}

template <typename Accept>
Beta sampleBetaWhere(int dim, unsigned long seed, int range, bool tryZeroFirst,
                     int maxAttempts, const Accept& accept)
{
    if (tryZeroFirst) {
        Beta zero = Beta::Zero(dim);
        if (accept(zero))
            return zero;
    }
    std::mt19937_64 gen(seed);
    long r = range;
    for (int attempt = 1; attempt <= maxAttempts; ++attempt) {
        Beta beta(dim);
        for (int t = 0; t < dim; ++t)
            beta(t) = uniformInt(gen, -r, r);
        if (accept(beta))
            return beta;
        if (attempt % 250 == 0)
            r *= 4;
    }
    throw PreconditionError(
        "sampleBeta: no admissible beta found in " + std::to_string(maxAttempts) +
        " attempts; retry with a larger range");
}

}  // namespace

Beta sampleBeta(int dim, const std::vector<SignedCone>& cones, unsigned long seed, int range,
                bool tryZeroFirst, int maxAttempts)
{
    return sampleBetaWhere(dim, seed, range, tryZeroFirst, maxAttempts,
                           [&](const Beta& beta) { return isAdmissible(beta, cones); });
}

Rational volConeFull(const SignedCone& cone, const Beta& beta)
{
    const Eigen::Index rows = cone.generators.rows();
    if (cone.generators.cols() < rows)
        return 0;
    if (cone.generators.cols() > rows)
        throw DimensionError("volConeFull: more generators than the ambient dimension");
    Rational d = det(cone.generators);
    return abs(d) * ctq(conePairs(cone, beta));
}

VolumeResult volumeFulldim(const std::vector<SignedCone>& cones, int d, const Beta& beta)
{
    Rational sum = 0;
    for (const SignedCone& c : cones)
        sum += Rational(c.sign) * volConeFull(c, beta);
    VolumeResult res;
    res.value = sum / Rational(factorial(d));
    res.method = Method::FulldimBrion;
    res.beta = beta;
    res.coneCount = static_cast<int>(cones.size());
    return res;
}

Rational volConeRelative(const SignedCone& cone, const Integer& invariantFactorProduct,
                         const Beta& beta)
{
    if (!cone.pivotProduct)
        throw PreconditionError("volConeRelative: cone carries no pivot product");
    if (rank(cone.generators) < cone.generators.cols())
        return 0;
    Rational factor = abs(Rational(invariantFactorProduct) / *cone.pivotProduct);
    return factor * ctq(conePairs(cone, beta));
}

Rational decompositionVolume(const Decomposition& dec, const Beta& beta)
{
    Rational sum = 0;
    for (const SignedCone& c : dec.cones)
        sum += Rational(c.sign) * volConeRelative(c, dec.invariantFactorProduct, beta);
    return sum / Rational(factorial(dec.d()));
}

VolumeResult volumeSimpcone(const PolytopeStd& p, unsigned long seed)
{
    Decomposition dec = simpcone(coneOver(p).b());
    Beta beta = sampleBeta(p.n(), dec.cones, seed);
    VolumeResult res;
    res.value = Rational(affineSpanPeriod(p)) * decompositionVolume(dec, beta);
    res.method = Method::Simpcone;
    res.beta = beta;
    res.coneCount = static_cast<int>(dec.cones.size());
    return res;
}

VolumeResult volumeSimpcone(const PolytopeStd& p, const Decomposition& dec, const Beta& beta)
{
    if (beta.size() != p.n())
        throw DimensionError("volumeSimpcone: beta length must match the variable count");
    if (!isAdmissible(beta, dec.cones))
        throw InadmissibleBetaError("volumeSimpcone: beta is inadmissible for the decomposition");
    VolumeResult res;
    res.value = Rational(affineSpanPeriod(p)) * decompositionVolume(dec, beta);
    res.method = Method::Simpcone;
    res.beta = beta;
    res.coneCount = static_cast<int>(dec.cones.size());
    return res;
}

VolumeResult volumeGeneralRelative(const std::vector<SignedCone>& cones,
                                   const MatrixXr& latticeBasis, int d, const Beta& beta)
{
    Rational base = gramDetSq(latticeBasis);
    if (base == 0)
        throw RankError("volumeGeneralRelative: lattice basis is rank deficient");
    Rational sum = 0;
    for (const SignedCone& c : cones) {
        if (c.generators.cols() < d + 1)
            continue;
        Rational g = gramDetSq(c.generators);
        if (g == 0)
            continue;
        std::optional<Rational> root = exactSqrt(g / base);
        if (!root)
            throw InternalError(
                "volumeGeneralRelative: Det ratio is not rational; basis does not "
                "generate the span lattice");
        sum += Rational(c.sign) * *root * ctq(conePairs(c, beta));
    }
    VolumeResult res;
    res.value = sum / Rational(factorial(d));
    res.method = Method::GeneralRelative;
    res.beta = beta;
    res.coneCount = static_cast<int>(cones.size());
    return res;
}

MatrixXz primitiveColumns(const MatrixXr& m)
{
    MatrixXz out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Integer l = 1;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        Integer g = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Rational scaled = m(i, j) * Rational(l);
            out(i, j) = numerator(scaled);
            g = boost::multiprecision::gcd(g, out(i, j));
        }
        if (g == 0)
            throw DegenerateInputError("primitiveColumns: zero column");
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            out(i, j) /= g;
    }
    return out;
}

Integer parallelepipedCount(const MatrixXz& generators, const MatrixXz& basis)
{
    Integer gGen = gramDetSq(generators);
    Integer gBase = gramDetSq(basis);
    if (gGen == 0)
        throw RankError("parallelepipedCount: dependent generator columns");
    if (gBase == 0)
        throw RankError("parallelepipedCount: dependent basis columns");
    std::optional<Rational> root = exactSqrt(Rational(gGen, gBase));
    if (!root || denominator(*root) != 1 || *root <= 0)
        throw PreconditionError(
            "parallelepipedCount: Det ratio is not a positive integer; the basis does "
            "not generate the lattice of the span");
    return numerator(*root);
}

namespace {

struct VertexConeData {
    VectorXr v;
    MatrixXr bindingRows;   // d x d
};

std::vector<VertexConeData> simpleIntegralVertexData(const PolytopeH& p)
{
    VertexEnumeration ve = verticesOfH(p);
    if (!ve.simple)
        throw PreconditionError("non-simple vertex encountered; the vertex-sum formula "
                                "requires a simple polytope");
    const int d = p.d();
    std::vector<VertexConeData> out;
    out.reserve(ve.vertices.size());
    for (const VertexInfo& info : ve.vertices) {
        for (Eigen::Index t = 0; t < info.v.size(); ++t)
            if (denominator(info.v(t)) != 1)
                throw PreconditionError("non-integral vertex encountered; the vertex-sum "
                                        "formula requires integral vertices");
        VertexConeData data;
        data.v = info.v;
        data.bindingRows = MatrixXr(d, d);
        for (int i = 0; i < d; ++i)
            data.bindingRows.row(i) = p.a().row(info.binding[static_cast<std::size_t>(i)]);
        out.push_back(std::move(data));
    }
    return out;
}

}  // namespace

std::vector<SignedCone> supportingConesSimple(const PolytopeH& p)
{
    const int d = p.d();
    std::vector<SignedCone> cones;
    for (const VertexConeData& data : simpleIntegralVertexData(p)) {
        MatrixXr w = -inverse(data.bindingRows);
        SignedCone cone;
        cone.sign = 1;
        cone.generators = MatrixXr::Zero(d + 1, d + 1);
        cone.generators.block(0, 0, d, d) = w;
        cone.generators.block(0, d, d, 1) = data.v;
        cone.generators(d, d) = 1;
        cones.push_back(std::move(cone));
    }
    return cones;
}

VolumeResult volumeLawrence(const PolytopeH& p, const Beta& beta)
{
    const int d = p.d();
    if (beta.size() != d)
        throw DimensionError("volumeLawrence: beta length must match the dimension");
    std::vector<VertexConeData> data = simpleIntegralVertexData(p);
    Rational sum = 0;
    for (const VertexConeData& vd : data) {
        MatrixXr inv = inverse(vd.bindingRows);
        Rational detAbs = abs(det(vd.bindingRows));
        Rational denomProd = 1;
        for (int j = 0; j < d; ++j) {
            Rational aj = 0;
            for (int t = 0; t < d; ++t)
                aj += Rational(beta(t)) * inv(t, j);
            if (aj == 0)
                throw BetaRejectedError(
                    "volumeLawrence: beta pairs to zero against a vertex cone edge; "
                    "resample beta");
            denomProd *= aj;
        }
        Rational bv = 0;
        for (int t = 0; t < d; ++t)
            bv += Rational(beta(t)) * vd.v(t);
        sum += powRational(bv, d) / (detAbs * denomProd);
    }
    VolumeResult res;
    res.value = sum / Rational(factorial(d));
    res.method = Method::Lawrence;
    res.beta = beta;
    res.coneCount = static_cast<int>(data.size());
    return res;
}

VolumeResult volumeLawrenceSeeded(const PolytopeH& p, unsigned long seed, int range,
                                  int maxAttempts)
{
    VolumeResult out;
    Beta used = sampleBetaWhere(p.d(), seed, range, false, maxAttempts, [&](const Beta& beta) {
        try {
            out = volumeLawrence(p, beta);
            return true;
        } catch (const BetaRejectedError&) {
            return false;
        }
    });
    (void)used;
    return out;
}

VolumeResult volumeBrion(const PolytopeH& p, unsigned long seed)
{
    std::vector<SignedCone> cones = supportingConesSimple(p);
    Beta beta = sampleBeta(p.d(), cones, seed);
    VolumeResult res = volumeFulldim(cones, p.d(), beta);
    return res;
}

VolumeResult volumeTriangulation(const std::vector<Simplex>& simplices)
{
    VolumeResult res;
    res.method = Method::Triangulation;
    res.coneCount = static_cast<int>(simplices.size());
    if (simplices.empty())
        return res;
    const Eigen::Index d = simplices.front().vertices.rows();
    Rational sum = 0;
    for (const Simplex& s : simplices) {
        if (s.vertices.rows() != d || s.vertices.cols() != d + 1)
            throw DimensionError("volumeTriangulation: simplex must have d + 1 vertices");
        MatrixXr edges(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            edges.col(j) = s.vertices.col(j + 1) - s.vertices.col(0);
        sum += Rational(s.sign) * abs(det(edges));
    }
    res.value = sum / Rational(factorial(static_cast<int>(d)));
    return res;
}

std::vector<Simplex> fanTriangulatePolygon(const PolytopeV& p, bool ordered)
{
    if (p.vertices.rows() != 2)
        throw DimensionError("fanTriangulatePolygon: vertices must be planar points");
    std::vector<VectorXr> verts;
    for (Eigen::Index j = 0; j < p.vertices.cols(); ++j) {
        VectorXr v = p.vertices.col(j);
        bool dup = false;
        for (const VectorXr& u : verts)
            dup = dup || u == v;
        if (!dup)
            verts.push_back(std::move(v));
    }
    if (verts.size() < 3)
        throw PreconditionError("fanTriangulatePolygon: need at least three distinct vertices");
    if (!ordered) {
        // Exact counterclockwise angular order around the centroid, starting
        // from the positive x half-plane.
        VectorXr centroid = VectorXr::Zero(2);
        for (const VectorXr& v : verts)
            centroid += v;
        centroid /= Rational(static_cast<int>(verts.size()));
        auto half = [&](const VectorXr& v) {
            Rational dy = v(1) - centroid(1);
            Rational dx = v(0) - centroid(0);
            return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
        };
        std::sort(verts.begin(), verts.end(), [&](const VectorXr& a, const VectorXr& b) {
            int ha = half(a), hb = half(b);
            if (ha != hb)
                return ha < hb;
            Rational cross = (a(0) - centroid(0)) * (b(1) - centroid(1)) -
                             (a(1) - centroid(1)) * (b(0) - centroid(0));
            return cross > 0;
        });
    }
    std::vector<Simplex> out;
    for (std::size_t i = 1; i + 1 < verts.size(); ++i) {
        Simplex s;
        s.sign = 1;
        s.vertices = MatrixXr(2, 3);
        s.vertices.col(0) = verts[0];
        s.vertices.col(1) = verts[i];
        s.vertices.col(2) = verts[i + 1];
        out.push_back(std::move(s));
    }
    return out;
}

SignedCone simplexCone(const MatrixXr& vertexCols)
{
    const Eigen::Index d = vertexCols.rows();
    if (vertexCols.cols() != d + 1)
        throw DimensionError("simplexCone: need d + 1 vertices");
    SignedCone cone;
    cone.sign = 1;
    cone.generators = MatrixXr::Ones(d + 1, d + 1);
    cone.generators.topRows(d) = vertexCols;
    return cone;
}

}  // namespace ctvol
