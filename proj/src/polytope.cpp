#include "ctvol/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ctvol/errors.hpp"
#include "ctvol/linalg.hpp"
#include "ctvol/lp.hpp"
#include "ctvol/snf.hpp"

namespace ctvol {

namespace {

bool lexLess(const VectorXr& a, const VectorXr& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i))
            return a(i) < b(i);
    }
    return false;
}

// All k-subsets of {0..n-1} in lexicographic order.
void forEachSubset(int n, int k, const std::function<void(const std::vector<int>&)>& visit)
{
    if (k > n || k < 0)
        return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos)
            --pos;
        if (pos < 0)
            return;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

}  // namespace

PolytopeStd::PolytopeStd(MatrixXz a, VectorXz b) : a_(std::move(a)), b_(std::move(b))
{
    if (b_.size() != a_.rows())
        throw DimensionError("PolytopeStd: b length must match the row count of A");
    const int nv = n();
    const int rows = r();
    if (rank(a_) != rows)
        throw RankError("PolytopeStd: A must have full row rank");
    MatrixXr ar = toRational(a_);
    VectorXr br = toRational(b_);
    if (!standardFormFeasible(ar, br))
        throw PreconditionError("PolytopeStd: the polytope is empty");
    // Bounded iff the recession cone {x >= 0 : A x = 0} is trivial, i.e. the
    // normalized version {A x = 0, sum x = 1, x >= 0} is infeasible.
    MatrixXr rec(rows + 1, nv);
    rec.topRows(rows) = ar;
    rec.row(rows).setOnes();
    VectorXr recRhs = VectorXr::Zero(rows + 1);
    recRhs(rows) = 1;
    if (standardFormFeasible(rec, recRhs))
        throw PreconditionError("PolytopeStd: the polytope is unbounded");
    maxima_ = VectorXr(nv);
    for (int j = 0; j < nv; ++j) {
        VectorXr c = VectorXr::Zero(nv);
        c(j) = 1;
        LpResult res = maximizeStandardForm(ar, br, c);
        if (res.status != LpStatus::Optimal)
            throw InternalError("PolytopeStd: coordinate maximum LP failed on a bounded polytope");
        maxima_(j) = res.value;
    }
    // Dimension must be exactly n - r: a coordinate vanishing identically on
    // the polytope is acceptable only when already implied by the rows of A.
    for (int j = 0; j < nv; ++j) {
        if (maxima_(j) != 0)
            continue;
        MatrixXz ext(rows + 1, nv);
        ext.topRows(rows) = a_;
        ext.row(rows).setZero();
        ext(rows, j) = 1;
        if (rank(ext) != rows)
            throw PreconditionError(
                "PolytopeStd: dimension is less than n - r (coordinate " + std::to_string(j) +
                " vanishes on the polytope without being implied by the equalities)");
    }
}

PolytopeStd PolytopeStd::dilate(const Integer& s) const
{
    if (s < 1)
        throw PreconditionError("PolytopeStd::dilate requires s >= 1");
    return PolytopeStd(a_, VectorXz(b_ * s));
}

ConedSystem::ConedSystem(MatrixXz b) : b_(std::move(b))
{
    if (rank(b_) != b_.rows())
        throw RankError("ConedSystem: matrix must have full row rank");
    if (!positiveVectorExists(b_))
        throw PreconditionError("ConedSystem: the cone contains no positive vector");
}

ConedSystem coneOver(const PolytopeStd& p)
{
    MatrixXz b(p.r(), p.n() + 1);
    b.leftCols(p.n()) = p.a();
    b.col(p.n()) = -p.b();
    return ConedSystem(std::move(b));
}

bool positiveVectorExists(const MatrixXz& b)
{
    // x >= 1 with B x = 0 via the shift x = 1 + y, y >= 0.
    MatrixXr br = toRational(b);
    VectorXr rhs = -br.rowwise().sum();
    return standardFormFeasible(br, rhs);
}

PolytopeH::PolytopeH(MatrixXr a, VectorXr b) : a_(std::move(a)), b_(std::move(b))
{
    if (b_.size() != a_.rows())
        throw DimensionError("PolytopeH: b length must match the row count of A");
    const int dim = d();
    const int rows = m();
    for (int i = 0; i < rows; ++i) {
        bool allZero = true;
        for (int j = 0; j < dim && allZero; ++j)
            allZero = a_(i, j) == 0;
        if (allZero)
            throw PreconditionError("PolytopeH: zero inequality row " + std::to_string(i));
    }
    if (!inequalityFormFeasible(a_, b_))
        throw PreconditionError("PolytopeH: the polytope is empty");
    // Bounded iff the recession cone {u : A u <= 0} is trivial; probe every
    // signed coordinate direction with an exact feasibility test.
    for (int j = 0; j < dim; ++j) {
        for (int sigma : {1, -1}) {
            MatrixXr sys = MatrixXr::Zero(rows + 1, 2 * dim + rows);
            sys.block(0, 0, rows, dim) = a_;
            sys.block(0, dim, rows, dim) = -a_;
            sys.block(0, 2 * dim, rows, rows) = MatrixXr::Identity(rows, rows);
            sys(rows, j) = 1;
            sys(rows, dim + j) = -1;
            VectorXr rhs = VectorXr::Zero(rows + 1);
            rhs(rows) = sigma;
            if (standardFormFeasible(sys, rhs))
                throw PreconditionError("PolytopeH: the polytope is unbounded");
        }
    }
    // Full-dimensional iff some point clears every inequality by a positive
    // margin: max t subject to A x + t 1 <= b, t >= 0.
    MatrixXr sys = MatrixXr::Zero(rows, 2 * dim + 1 + rows);
    sys.block(0, 0, rows, dim) = a_;
    sys.block(0, dim, rows, dim) = -a_;
    sys.col(2 * dim).setOnes();
    sys.block(0, 2 * dim + 1, rows, rows) = MatrixXr::Identity(rows, rows);
    VectorXr c = VectorXr::Zero(2 * dim + 1 + rows);
    c(2 * dim) = 1;
    LpResult res = maximizeStandardForm(sys, b_, c);
    if (res.status != LpStatus::Optimal)
        throw InternalError("PolytopeH: interior margin LP failed on a bounded polytope");
    if (res.value == 0)
        throw PreconditionError("PolytopeH: the polytope is not full-dimensional");
}

PolytopeH PolytopeH::dilate(const Integer& s) const
{
    if (s < 1)
        throw PreconditionError("PolytopeH::dilate requires s >= 1");
    return PolytopeH(a_, VectorXr(b_ * Rational(s)));
}

PolytopeStd stdFromH(const PolytopeH& p)
{
    const int dim = p.d();
    const int rows = p.m();
    for (int j = 0; j < dim; ++j) {
        VectorXr c = VectorXr::Zero(dim);
        c(j) = -1;
        LpResult res = maximizeInequalityForm(p.a(), p.b(), c);
        if (res.status != LpStatus::Optimal)
            throw InternalError("stdFromH: coordinate minimum LP failed");
        if (res.value > 0)
            throw PreconditionError(
                "stdFromH: the polytope leaves the nonnegative orthant (coordinate " +
                std::to_string(j) + " takes negative values); translate it first");
    }
    // A row expressing nonnegativity of one coordinate is absorbed by the
    // orthant constraint of the standard form.
    std::vector<int> kept;
    for (int i = 0; i < rows; ++i) {
        bool nonnegRow = false;
        if (p.b()(i) == 0) {
            int nonzero = -1;
            bool single = true;
            for (int j = 0; j < dim && single; ++j) {
                if (p.a()(i, j) == 0)
                    continue;
                if (nonzero >= 0)
                    single = false;
                else
                    nonzero = j;
            }
            nonnegRow = single && nonzero >= 0 && p.a()(i, nonzero) < 0;
        }
        if (!nonnegRow)
            kept.push_back(i);
    }
    const int k = static_cast<int>(kept.size());
    MatrixXz a = MatrixXz::Zero(k, dim + k);
    VectorXz b(k);
    for (int i = 0; i < k; ++i) {
        MatrixXr row(1, dim + 1);
        row.leftCols(dim) = p.a().row(kept[static_cast<std::size_t>(i)]);
        row(0, dim) = p.b()(kept[static_cast<std::size_t>(i)]);
        MatrixXz cleared = clearDenominators(row);
        a.block(i, 0, 1, dim) = cleared.leftCols(dim);
        a(i, dim + i) = 1;
        b(i) = cleared(0, dim);
    }
    return PolytopeStd(std::move(a), std::move(b));
}

VertexEnumeration verticesOfH(const PolytopeH& p)
{
    const int dim = p.d();
    const int rows = p.m();
    std::map<std::vector<Rational>, VertexInfo> found;
    forEachSubset(rows, dim, [&](const std::vector<int>& subset) {
        MatrixXr as(dim, dim);
        VectorXr bs(dim);
        for (int i = 0; i < dim; ++i) {
            as.row(i) = p.a().row(subset[static_cast<std::size_t>(i)]);
            bs(i) = p.b()(subset[static_cast<std::size_t>(i)]);
        }
        if (det(as) == 0)
            return;
        VectorXr v = solve(as, bs);
        VectorXr slack = p.b() - p.a() * v;
        std::vector<int> binding;
        for (int i = 0; i < rows; ++i) {
            if (slack(i) < 0)
                return;
            if (slack(i) == 0)
                binding.push_back(i);
        }
        std::vector<Rational> key(v.data(), v.data() + v.size());
        found.emplace(std::move(key), VertexInfo{v, std::move(binding)});
    });
    VertexEnumeration out;
    out.simple = true;
    for (auto& [key, info] : found) {
        out.simple = out.simple && static_cast<int>(info.binding.size()) == dim;
        out.vertices.push_back(std::move(info));
    }
    if (out.vertices.empty())
        throw InternalError("verticesOfH: a validated polytope must have vertices");
    return out;
}

std::vector<VectorXr> enumerateBasicVertices(const PolytopeStd& p)
{
    const int nv = p.n();
    const int rows = p.r();
    MatrixXr ar = toRational(p.a());
    VectorXr br = toRational(p.b());
    std::vector<VectorXr> out;
    forEachSubset(nv, rows, [&](const std::vector<int>& subset) {
        MatrixXr as(rows, rows);
        for (int i = 0; i < rows; ++i)
            as.col(i) = ar.col(subset[static_cast<std::size_t>(i)]);
        if (det(as) == 0)
            return;
        VectorXr xs = solve(as, br);
        for (int i = 0; i < rows; ++i)
            if (xs(i) < 0)
                return;
        VectorXr alpha = VectorXr::Zero(nv);
        for (int i = 0; i < rows; ++i)
            alpha(subset[static_cast<std::size_t>(i)]) = xs(i);
        out.push_back(std::move(alpha));
    });
    std::sort(out.begin(), out.end(), lexLess);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const VectorXr& a, const VectorXr& b) { return a == b; }),
              out.end());
    return out;
}

namespace {

Integer floorDiv(const Integer& p, const Integer& q)
{
    Integer quot = p / q;
    if (p % q != 0 && (p < 0) != (q < 0))
        --quot;
    return quot;
}

Integer ceilDiv(const Integer& p, const Integer& q)
{
    return -floorDiv(-p, q);
}

}  // namespace

void enumerateIntegerSolutions(const MatrixXz& a, const VectorXz& rhs, const VectorXz& lo,
                               const VectorXz& hi, long budget,
                               const std::function<void(const VectorXz&)>& visit)
{
    const Eigen::Index rows = a.rows();
    const Eigen::Index n = a.cols();
    if (rhs.size() != rows || lo.size() != n || hi.size() != n)
        throw DimensionError("enumerateIntegerSolutions: mismatched shapes");
    for (Eigen::Index j = 0; j < n; ++j)
        if (lo(j) > hi(j))
            return;

    // Assign narrow coordinates first; the equation rows then pin the wide
    // coordinates to single values instead of the search sweeping them.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return hi(x) - lo(x) < hi(y) - lo(y);
    });
    MatrixXz ap(rows, n);
    VectorXz lop(n), hip(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        ap.col(j) = a.col(order[static_cast<std::size_t>(j)]);
        lop(j) = lo(order[static_cast<std::size_t>(j)]);
        hip(j) = hi(order[static_cast<std::size_t>(j)]);
    }

    // suffixMin/suffixMax(i, j): extreme achievable values of
    // sum_{k >= j} ap(i,k) x_k over the box.
    MatrixXz suffixMin = MatrixXz::Zero(rows, n + 1);
    MatrixXz suffixMax = MatrixXz::Zero(rows, n + 1);
    for (Eigen::Index j = n - 1; j >= 0; --j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            Integer atLo = ap(i, j) * lop(j);
            Integer atHi = ap(i, j) * hip(j);
            suffixMin(i, j) = suffixMin(i, j + 1) + (atLo < atHi ? atLo : atHi);
            suffixMax(i, j) = suffixMax(i, j + 1) + (atLo < atHi ? atHi : atLo);
        }

    VectorXz x(n);             // assembled in the caller's coordinate order
    VectorXz residual = rhs;   // rhs minus the contribution of coords < depth
    long visited = 0;
    std::function<void(Eigen::Index)> descend = [&](Eigen::Index depth) {
        if (++visited > budget)
            throw BudgetExceededError("enumerateIntegerSolutions: budget exceeded");
        if (depth == n) {
            for (Eigen::Index i = 0; i < rows; ++i)
                if (residual(i) != 0)
                    return;
            visit(x);
            return;
        }
        for (Eigen::Index i = 0; i < rows; ++i)
            if (residual(i) < suffixMin(i, depth) || residual(i) > suffixMax(i, depth))
                return;
        // Tighten the current coordinate's range: row i needs ap(i,depth) * v
        // within residual(i) minus the reachable interval of later coords.
        Integer vlo = lop(depth), vhi = hip(depth);
        for (Eigen::Index i = 0; i < rows && vlo <= vhi; ++i) {
            const Integer& c = ap(i, depth);
            if (c == 0)
                continue;
            Integer wmin = residual(i) - suffixMax(i, depth + 1);
            Integer wmax = residual(i) - suffixMin(i, depth + 1);
            Integer cLo = c > 0 ? ceilDiv(wmin, c) : ceilDiv(wmax, c);
            Integer cHi = c > 0 ? floorDiv(wmax, c) : floorDiv(wmin, c);
            if (cLo > vlo)
                vlo = cLo;
            if (cHi < vhi)
                vhi = cHi;
        }
        for (Integer v = vlo; v <= vhi; ++v) {
            x(order[static_cast<std::size_t>(depth)]) = v;
            for (Eigen::Index i = 0; i < rows; ++i)
                residual(i) -= ap(i, depth) * v;
            descend(depth + 1);
            for (Eigen::Index i = 0; i < rows; ++i)
                residual(i) += ap(i, depth) * v;
        }
    };
    descend(0);
}

Integer latticeCount(const PolytopeStd& p, const Integer& s, long budget)
{
    if (s < 0)
        throw PreconditionError("latticeCount requires s >= 0");
    const int nv = p.n();
    VectorXz lo = VectorXz::Zero(nv);
    VectorXz hi(nv);
    for (int j = 0; j < nv; ++j)
        hi(j) = floorOf(p.coordinateMaxima()(j) * Rational(s));
    VectorXz rhs = p.b() * s;
    Integer count = 0;
    enumerateIntegerSolutions(p.a(), rhs, lo, hi, budget, [&](const VectorXz&) { ++count; });
    return count;
}

Integer affineSpanPeriod(const PolytopeStd& p)
{
    // A alpha = s b has an integer solution iff every invariant factor d_i of
    // A divides s * (U b)_i, where U A V = (D | 0) is the Smith Normal Form.
    // The admissible s form the subgroup generated by
    // lcm_i(d_i / gcd(d_i, (U b)_i)).
    const SmithNormalForm snf = smithNormalForm(p.a());
    const VectorXz ub = snf.u * p.b();
    Integer period = 1;
    for (int i = 0; i < p.r(); ++i) {
        const Integer di = snf.s(i, i);
        const Integer step = di / boost::multiprecision::gcd(di, ub(i));
        period = boost::multiprecision::lcm(period, step);
    }
    return period;
}

}  // namespace ctvol
