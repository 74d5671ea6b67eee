#include "ctvol/simpcone.hpp"

#include <algorithm>
#include <map>

#include "ctvol/errors.hpp"
#include "ctvol/linalg.hpp"
#include "ctvol/polytope.hpp"
#include "ctvol/snf.hpp"

namespace ctvol {

namespace {

int signOf(const Rational& q)
{
    if (q > 0)
        return 1;
    if (q < 0)
        return -1;
    return 0;
}

void insertSorted(std::vector<int>& v, int x)
{
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

}  // namespace

bool ElimState::rowIgnored(int i) const
{
    return std::binary_search(ignoredRows.begin(), ignoredRows.end(), i);
}

bool ElimState::colIgnored(int j) const
{
    return std::binary_search(ignoredCols.begin(), ignoredCols.end(), j);
}

ElimState initState(const MatrixXz& b)
{
    const Eigen::Index rows = b.rows();
    const Eigen::Index cols = b.cols();
    if (rank(b) != rows)
        throw RankError("initState: input must have full row rank");
    if (!positiveVectorExists(b))
        throw PreconditionError("initState: the cone contains no positive vector");
    ElimState st;
    st.topRows = static_cast<int>(cols);
    st.m = MatrixXr(cols + rows, cols);
    st.m.topRows(cols) = MatrixXr::Identity(cols, cols);
    st.m.bottomRows(rows) = toRational(b);
    return st;
}

ElimState pivotEliminate(const ElimState& st, int i, int j)
{
    if (i < 0 || i >= st.constraintRows() || j < 0 || j >= st.topRows)
        throw DegenerateInputError("pivotEliminate: pivot position out of range");
    if (st.rowIgnored(i) || st.colIgnored(j))
        throw DegenerateInputError("pivotEliminate: pivot position already frozen");
    const Eigen::Index row = st.topRows + i;
    const Rational pivot = st.m(row, j);
    if (pivot == 0)
        throw DegenerateInputError("pivotEliminate: zero pivot entry");
    ElimState out = st;
    for (int jj = 0; jj < st.topRows; ++jj) {
        if (jj == j || st.colIgnored(jj))
            continue;
        Rational factor = st.m(row, jj) / pivot;
        if (factor != 0)
            out.m.col(jj) -= factor * st.m.col(j);
    }
    insertSorted(out.ignoredRows, i);
    insertSorted(out.ignoredCols, j);
    out.pivotProduct *= pivot;
    return out;
}

ColumnClassification classifyColumns(const ElimState& st, int i)
{
    if (i < 0 || i >= st.constraintRows() || st.rowIgnored(i))
        throw DegenerateInputError("classifyColumns: row out of range or frozen");
    const Eigen::Index row = st.topRows + i;
    ColumnClassification out;
    for (int j = 0; j < st.topRows; ++j) {
        if (st.colIgnored(j))
            continue;
        const Rational entry = st.m(row, j);
        if (entry == 0)
            continue;
        // First nonzero of the live part of column j: identity rows first,
        // then the live constraint rows, top to bottom.
        int lead = 0;
        for (int t = 0; t < st.topRows && lead == 0; ++t)
            lead = signOf(st.m(t, j));
        for (int c = 0; c < st.constraintRows() && lead == 0; ++c)
            if (!st.rowIgnored(c))
                lead = signOf(st.m(st.topRows + c, j));
        if (lead == 0)
            throw DegenerateInputError("classifyColumns: live column is entirely zero");
        const int entrySign = signOf(entry);
        if (entrySign * lead > 0)
            out.contributing.emplace_back(j, entrySign);
        else
            out.dual.emplace_back(j, -entrySign);
    }
    return out;
}

std::vector<ElimState> ctRow(const ElimState& st, int i)
{
    ColumnClassification cls = classifyColumns(st, i);
    if (cls.contributing.empty() && cls.dual.empty())
        throw DegenerateInputError("ctRow: constraint row has no live nonzero entry");
    const bool useContributing = cls.contributing.size() < cls.dual.size();
    const auto& side = useContributing ? cls.contributing : cls.dual;
    std::vector<ElimState> out;
    out.reserve(side.size());
    for (const auto& [col, weight] : side) {
        ElimState next = pivotEliminate(st, i, col);
        next.sign = st.sign * weight;
        out.push_back(std::move(next));
    }
    return out;
}

namespace {

using StateKey = std::pair<std::vector<int>, std::vector<int>>;

StateKey keyOf(const ElimState& st)
{
    return {st.ignoredRows, st.ignoredCols};
}

// Deterministic row choice: the live row whose smaller classification side
// is smallest, ties to the lowest row index.
int chooseRow(const ElimState& st)
{
    int best = -1;
    std::size_t bestScore = 0;
    for (int i = 0; i < st.constraintRows(); ++i) {
        if (st.rowIgnored(i))
            continue;
        ColumnClassification cls = classifyColumns(st, i);
        std::size_t score = std::min(cls.contributing.size(), cls.dual.size());
        if (best < 0 || score < bestScore) {
            best = i;
            bestScore = score;
        }
    }
    return best;
}

}  // namespace

Decomposition simpcone(const MatrixXz& b)
{
    const int r = static_cast<int>(b.rows());
    const int cols = static_cast<int>(b.cols());
    std::map<StateKey, ElimState> states;
    {
        ElimState init = initState(b);
        states.emplace(keyOf(init), std::move(init));
    }
    for (int round = 0; round < r; ++round) {
        std::map<StateKey, ElimState> next;
        for (const auto& [key, st] : states) {
            int row = chooseRow(st);
            if (row < 0)
                throw InternalError("simpcone: no live row before the final round");
            for (ElimState& succ : ctRow(st, row)) {
                StateKey k = keyOf(succ);
                auto it = next.find(k);
                if (it == next.end())
                    next.emplace(std::move(k), std::move(succ));
                else
                    it->second.sign += succ.sign;
            }
        }
        for (auto it = next.begin(); it != next.end();) {
            if (it->second.sign == 0)
                it = next.erase(it);
            else
                ++it;
        }
        states = std::move(next);
    }

    Decomposition dec;
    dec.n = cols - 1;
    dec.r = r;
    dec.invariantFactorProduct = invariantFactorProduct(b);
    for (const auto& [key, st] : states) {
        const auto& live = st.m;
        std::vector<int> cols_;
        for (int j = 0; j < st.topRows; ++j)
            if (!st.colIgnored(j))
                cols_.push_back(j);
        SignedCone cone;
        cone.sign = st.sign;
        cone.generators = MatrixXr(st.topRows, static_cast<int>(cols_.size()));
        for (std::size_t c = 0; c < cols_.size(); ++c)
            cone.generators.col(static_cast<Eigen::Index>(c)) =
                live.col(cols_[c]).head(st.topRows);
        // The constraint block must be fully eliminated on live columns and
        // the generators independent; both are guaranteed by the algebra.
        for (int i = 0; i < st.constraintRows(); ++i)
            for (int c : cols_)
                if (st.m(st.topRows + i, c) != 0)
                    throw InternalError("simpcone: live column not eliminated");
        if (rank(cone.generators) != cols - r)
            throw InternalError("simpcone: dependent generators");
        cone.pivotProduct = st.pivotProduct;
        dec.cones.push_back(std::move(cone));
    }
    return dec;
}

int coneCountingWeight(const SignedCone& c, const VectorXr& x)
{
    const MatrixXr& g = c.generators;
    const int rows = static_cast<int>(g.rows());
    const int cols = static_cast<int>(g.cols());
    if (x.size() != rows)
        throw DimensionError("coneCountingWeight: point size does not match generators");

    int weight = c.sign;
    std::vector<bool> reciprocal(static_cast<std::size_t>(cols), false);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            if (g(i, j) != 0) {
                reciprocal[static_cast<std::size_t>(j)] = g(i, j) < 0;
                break;
            }
        }
        if (reciprocal[static_cast<std::size_t>(j)])
            weight = -weight;
    }

    // Coordinates of x in the generator basis, via a nonsingular row block.
    std::vector<int> picked;
    MatrixXr block(0, cols);
    for (int i = 0; i < rows && static_cast<int>(picked.size()) < cols; ++i) {
        MatrixXr trial(block.rows() + 1, cols);
        trial.topRows(block.rows()) = block;
        trial.row(block.rows()) = g.row(i);
        if (rank(trial) == trial.rows()) {
            block = std::move(trial);
            picked.push_back(i);
        }
    }
    if (static_cast<int>(picked.size()) != cols)
        throw RankError("coneCountingWeight: generator columns are dependent");
    VectorXr sub(cols);
    for (int k = 0; k < cols; ++k)
        sub(k) = x(picked[static_cast<std::size_t>(k)]);
    VectorXr t = solve(block, sub);
    VectorXr back = g * t;
    for (int i = 0; i < rows; ++i)
        if (back(i) != x(i))
            return 0;
    for (int j = 0; j < cols; ++j) {
        const bool ok = reciprocal[static_cast<std::size_t>(j)] ? t(j) < 0 : t(j) >= 0;
        if (!ok)
            return 0;
    }
    return weight;
}

Rational invariantISq(const MatrixXr& m, int topRows)
{
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    if (topRows < 0 || topRows > rows || cols != topRows)
        throw DimensionError("invariantISq: top block must be square");
    const Eigen::Index r = rows - topRows;
    if (r > cols)
        throw DimensionError("invariantISq: more constraint rows than columns");
    MatrixXr c2 = m.block(0, r, topRows, cols - r);
    if (r == 0)
        return gramDetSq(c2);
    MatrixXr c1 = m.block(0, 0, topRows, r);
    MatrixXr b1 = m.block(topRows, 0, r, r);
    MatrixXr b2 = m.block(topRows, r, r, cols - r);
    Rational detB1 = det(b1);
    if (detB1 == 0)
        throw SingularMatrixError("invariantISq: leading constraint block is singular");
    MatrixXr n = c2 - c1 * solve(b1, b2);
    return detB1 * detB1 * gramDetSq(n);
}

Rational invariantI(const MatrixXr& m, int topRows)
{
    std::optional<Rational> root = exactSqrt(invariantISq(m, topRows));
    if (!root)
        throw PreconditionError("invariantI: the invariant is irrational; use invariantISq");
    return *root;
}

}  // namespace ctvol
