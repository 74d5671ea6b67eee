#include "ctvol/snf.hpp"

#include "ctvol/errors.hpp"

namespace ctvol {

namespace {

using boost::multiprecision::abs;

// Smallest-|value| nonzero entry of a(k.., k..); ties resolved by (row, col)
// lexicographic order. Returns false if the submatrix is zero.
bool findPivot(const MatrixXz& a, Eigen::Index k, Eigen::Index& pr, Eigen::Index& pc)
{
    bool found = false;
    Integer best = 0;
    for (Eigen::Index i = k; i < a.rows(); ++i)
        for (Eigen::Index j = k; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            Integer mag = abs(a(i, j));
            if (!found || mag < best) {
                found = true;
                best = mag;
                pr = i;
                pc = j;
            }
        }
    return found;
}

}  // namespace

SmithNormalForm smithNormalForm(const MatrixXz& b)
{
    const Eigen::Index m = b.rows();
    const Eigen::Index n = b.cols();
    MatrixXz a = b;
    MatrixXz u = MatrixXz::Identity(m, m);
    MatrixXz v = MatrixXz::Identity(n, n);

    Eigen::Index k = 0;
    for (; k < m && k < n; ++k) {
        Eigen::Index pr, pc;
        if (!findPivot(a, k, pr, pc))
            break;
        for (;;) {
            if (pr != k) {
                a.row(pr).swap(a.row(k));
                u.row(pr).swap(u.row(k));
            }
            if (pc != k) {
                a.col(pc).swap(a.col(k));
                v.col(pc).swap(v.col(k));
            }
            // Reduce the pivot column and row by truncated division. Any
            // nonzero remainder is strictly smaller than the pivot, so the
            // outer loop terminates.
            bool clean = true;
            for (Eigen::Index i = k + 1; i < m; ++i) {
                if (a(i, k) == 0)
                    continue;
                Integer q = a(i, k) / a(k, k);
                if (q != 0) {
                    a.row(i) -= q * a.row(k);
                    u.row(i) -= q * u.row(k);
                }
                if (a(i, k) != 0)
                    clean = false;
            }
            for (Eigen::Index j = k + 1; j < n; ++j) {
                if (a(k, j) == 0)
                    continue;
                Integer q = a(k, j) / a(k, k);
                if (q != 0) {
                    a.col(j) -= q * a.col(k);
                    v.col(j) -= q * v.col(k);
                }
                if (a(k, j) != 0)
                    clean = false;
            }
            if (!clean) {
                findPivot(a, k, pr, pc);
                continue;
            }
            // Divisibility pass: the pivot must divide every remaining entry
            // so that the diagonal forms a divisor chain. Folding a violating
            // row into row k reintroduces a smaller pivot candidate.
            Eigen::Index vi = -1;
            for (Eigen::Index i = k + 1; i < m && vi < 0; ++i)
                for (Eigen::Index j = k + 1; j < n; ++j)
                    if (a(i, j) % a(k, k) != 0) {
                        vi = i;
                        break;
                    }
            if (vi < 0)
                break;
            a.row(k) += a.row(vi);
            u.row(k) += u.row(vi);
            findPivot(a, k, pr, pc);
        }
        if (a(k, k) < 0) {
            a.row(k) = -a.row(k);
            u.row(k) = -u.row(k);
        }
    }
    if (k < m)
        throw RankError("smithNormalForm requires full row rank");

    if (u * b * v != a)
        throw InternalError("smithNormalForm: transform identity violated");

    SmithNormalForm out;
    out.u = std::move(u);
    out.v = std::move(v);
    out.s = std::move(a);
    out.invariantFactors.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        out.invariantFactors.push_back(out.s(i, i));
        if (i > 0 && out.s(i, i) % out.s(i - 1, i - 1) != 0)
            throw InternalError("smithNormalForm: divisor chain violated");
    }
    return out;
}

MatrixXz latticeBasisOfNullspace(const MatrixXz& b)
{
    SmithNormalForm snf = smithNormalForm(b);
    const Eigen::Index n = b.cols();
    const Eigen::Index r = b.rows();
    MatrixXz basis = snf.v.rightCols(n - r);
    MatrixXz check = b * basis;
    for (Eigen::Index i = 0; i < check.rows(); ++i)
        for (Eigen::Index j = 0; j < check.cols(); ++j)
            if (check(i, j) != 0)
                throw InternalError("latticeBasisOfNullspace: basis not in kernel");
    return basis;
}

Integer invariantFactorProduct(const MatrixXz& b)
{
    Integer prod = 1;
    for (const Integer& d : smithNormalForm(b).invariantFactors)
        prod *= d;
    return prod;
}

}  // namespace ctvol
