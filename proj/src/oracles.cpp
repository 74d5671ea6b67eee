#include "ctvol/oracles.hpp"

#include "ctvol/errors.hpp"
#include "ctvol/linalg.hpp"

namespace ctvol {

EhrhartFit ehrhartFit(const PolytopeStd& p, long budget)
{
    std::vector<VectorXr> vertices = enumerateBasicVertices(p);
    if (vertices.empty())
        throw InternalError("ehrhartFit: validated polytope has no basic vertex");
    Integer period = 1;
    for (const VectorXr& v : vertices)
        for (Eigen::Index i = 0; i < v.size(); ++i)
            period = boost::multiprecision::lcm(period, denominator(v(i)));

    const int d = p.d();
    EhrhartFit fit;
    fit.periodUsed = period;
    for (int i = 0; i <= d + 2; ++i) {
        Integer s = period * i;
        fit.samples.emplace_back(s, latticeCount(p, s, budget));
    }

    MatrixXr vand(d + 1, d + 1);
    VectorXr rhs(d + 1);
    for (int i = 0; i <= d; ++i) {
        Rational s(fit.samples[static_cast<std::size_t>(i)].first);
        Rational power = 1;
        for (int k = 0; k <= d; ++k) {
            vand(i, k) = power;
            power *= s;
        }
        rhs(i) = Rational(fit.samples[static_cast<std::size_t>(i)].second);
    }
    fit.coefficients = solve(vand, rhs);

    auto evaluate = [&](const Rational& s) {
        Rational value = 0;
        Rational power = 1;
        for (int k = 0; k <= d; ++k) {
            value += fit.coefficients(k) * power;
            power *= s;
        }
        return value;
    };
    for (int i = d + 1; i <= d + 2; ++i) {
        const auto& [s, count] = fit.samples[static_cast<std::size_t>(i)];
        if (evaluate(Rational(s)) != Rational(count))
            throw PreconditionError("ehrhartFit: quasi-polynomial period misdetected");
    }
    return fit;
}

Rational ehrhartVolume(const PolytopeStd& p, long budget)
{
    EhrhartFit fit = ehrhartFit(p, budget);
    Rational lead = fit.coefficients(p.d());
    if (lead <= 0)
        throw InternalError("ehrhartVolume: counting polynomial has nonpositive leading "
                            "coefficient");
    return lead;
}

namespace {

// Truncated Laurent series: coeffs[t] multiplies q^{minExp + t}.
struct LaurentSeries {
    int minExp = 0;
    std::vector<Rational> coeffs;
};

LaurentSeries multiplyTruncated(const LaurentSeries& a, const LaurentSeries& b, int keepUpTo)
{
    LaurentSeries out;
    out.minExp = a.minExp + b.minExp;
    const int len = keepUpTo - out.minExp + 1;
    out.coeffs.assign(static_cast<std::size_t>(len), Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs.size() && i + j < out.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return out;
}

}  // namespace

Rational seriesCtq(const std::vector<HeightPair>& pairs)
{
    int zeros = 0;
    for (const auto& [m, b] : pairs) {
        if (m == 0 && b == 0)
            throw InadmissibleBetaError("seriesCtq: factor 1/(0 - 0 q) is undefined");
        if (m == 0)
            ++zeros;
    }
    // Every further factor can lower an exponent by at most one, and only the
    // zero-height monomials do: terms above q^zeros never reach q^0.
    const int keep = zeros;
    LaurentSeries prod;
    prod.coeffs = {Rational(1)};
    for (const auto& [m, b] : pairs) {
        LaurentSeries factor;
        if (m == 0) {
            factor.minExp = -1;
            factor.coeffs = {Rational(-1) / b};
        } else {
            factor.coeffs.resize(static_cast<std::size_t>(keep) + 1);
            Rational mk = m;   // m^{k+1}
            Rational bk = 1;   // b^k
            for (int k = 0; k <= keep; ++k) {
                factor.coeffs[static_cast<std::size_t>(k)] = bk / mk;
                mk *= m;
                bk *= b;
            }
        }
        prod = multiplyTruncated(prod, factor, keep);
    }
    const int idx = -prod.minExp;
    if (idx < 0 || idx >= static_cast<int>(prod.coeffs.size()))
        return 0;
    return prod.coeffs[static_cast<std::size_t>(idx)];
}

Integer parallelepipedEnumerate(const MatrixXz& generators, long cap)
{
    const Eigen::Index n = generators.rows();
    const Eigen::Index k = generators.cols();
    if (k == 0)
        return 1;
    if (rank(generators) < k)
        throw RankError("parallelepipedEnumerate: dependent generator columns");

    VectorXz lo(n), hi(n);
    Integer boxPoints = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        Integer neg = 0, pos = 0;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (generators(i, j) < 0)
                neg += generators(i, j);
            else
                pos += generators(i, j);
        }
        lo(i) = neg;
        hi(i) = pos;
        boxPoints *= hi(i) - lo(i) + 1;
        if (boxPoints > cap)
            throw BudgetExceededError("parallelepipedEnumerate: bounding box too large");
    }

    MatrixXz gram = generators.transpose() * generators;
    MatrixXr gramInv = inverse(toRational(gram));

    VectorXz z = lo;
    Integer count = 0;
    while (true) {
        VectorXr gtz(k);
        for (Eigen::Index j = 0; j < k; ++j) {
            Integer acc = 0;
            for (Eigen::Index i = 0; i < n; ++i)
                acc += generators(i, j) * z(i);
            gtz(j) = Rational(acc);
        }
        VectorXr t = gramInv * gtz;
        bool inside = true;
        for (Eigen::Index j = 0; j < k && inside; ++j)
            inside = t(j) >= 0 && t(j) < 1;
        if (inside) {
            // z must also lie in the span: G t reproduces z exactly.
            bool spanned = true;
            for (Eigen::Index i = 0; i < n && spanned; ++i) {
                Rational acc = 0;
                for (Eigen::Index j = 0; j < k; ++j)
                    acc += Rational(generators(i, j)) * t(j);
                spanned = acc == Rational(z(i));
            }
            if (spanned)
                ++count;
        }
        Eigen::Index pos = 0;
        while (pos < n && z(pos) == hi(pos)) {
            z(pos) = lo(pos);
            ++pos;
        }
        if (pos == n)
            break;
        z(pos) += 1;
    }
    return count;
}

}  // namespace ctvol
