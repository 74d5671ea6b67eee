#include "ctvol/lp.hpp"

#include <vector>

#include "ctvol/errors.hpp"

namespace ctvol {

namespace {

// Dense tableau: row 0 holds reduced costs and the objective value in the
// last column; rows 1..m hold the constraints in canonical form (each basic
// column is a unit column with zero reduced cost).
class Tableau {
public:
    Tableau(MatrixXr t, std::vector<int> basis)
        : t_(std::move(t)), basis_(std::move(basis))
    {
    }

    // Bland's rule: entering variable is the lowest-index column with a
    // negative reduced cost; leaving row minimizes the ratio, ties broken by
    // the lowest basic variable index. Returns false on unboundedness.
    bool maximize()
    {
        const Eigen::Index cols = t_.cols() - 1;
        for (;;) {
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < cols; ++j)
                if (t_(0, j) < 0) {
                    entering = j;
                    break;
                }
            if (entering < 0)
                return true;
            Eigen::Index leaving = -1;
            Rational bestRatio = 0;
            for (Eigen::Index i = 1; i < t_.rows(); ++i) {
                if (t_(i, entering) <= 0)
                    continue;
                Rational ratio = t_(i, cols) / t_(i, entering);
                if (leaving < 0 || ratio < bestRatio ||
                    (ratio == bestRatio && basis_[static_cast<std::size_t>(i - 1)] <
                                               basis_[static_cast<std::size_t>(leaving - 1)])) {
                    leaving = i;
                    bestRatio = ratio;
                }
            }
            if (leaving < 0)
                return false;
            pivot(leaving, entering);
        }
    }

    void pivot(Eigen::Index row, Eigen::Index col)
    {
        t_.row(row) /= t_(row, col);
        for (Eigen::Index i = 0; i < t_.rows(); ++i) {
            if (i == row || t_(i, col) == 0)
                continue;
            t_.row(i) -= t_(i, col) * t_.row(row);
        }
        basis_[static_cast<std::size_t>(row - 1)] = static_cast<int>(col);
    }

    void dropRow(Eigen::Index row)
    {
        const Eigen::Index last = t_.rows() - 1;
        if (row != last)
            t_.row(row).swap(t_.row(last));
        std::swap(basis_[static_cast<std::size_t>(row - 1)],
                  basis_[static_cast<std::size_t>(last - 1)]);
        basis_.pop_back();
        t_.conservativeResize(last, Eigen::NoChange);
    }

    Rational objective() const { return t_(0, t_.cols() - 1); }
    Rational rhs(Eigen::Index row) const { return t_(row, t_.cols() - 1); }
    Rational at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
    Eigen::Index rows() const { return t_.rows(); }
    const std::vector<int>& basis() const { return basis_; }

    // Install a fresh objective (maximize c over the structural columns) and
    // restore canonical form against the current basis.
    void setObjective(const VectorXr& c)
    {
        const Eigen::Index cols = t_.cols() - 1;
        t_.row(0).setZero();
        for (Eigen::Index j = 0; j < c.size() && j < cols; ++j)
            t_(0, j) = -c(j);
        for (Eigen::Index i = 1; i < t_.rows(); ++i) {
            int bv = basis_[static_cast<std::size_t>(i - 1)];
            if (t_(0, bv) != 0)
                t_.row(0) -= t_(0, bv) * t_.row(i);
        }
    }

    void dropColumns(Eigen::Index keep)
    {
        MatrixXr nt(t_.rows(), keep + 1);
        nt.leftCols(keep) = t_.leftCols(keep);
        nt.col(keep) = t_.col(t_.cols() - 1);
        t_ = std::move(nt);
    }

private:
    MatrixXr t_;
    std::vector<int> basis_;
};

// Phase one: artificial basis for a x = b with b made nonnegative. Returns
// the tableau in canonical form with objective max(-sum of artificials).
Tableau phaseOne(const MatrixXr& a, const VectorXr& b)
{
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    MatrixXr t = MatrixXr::Zero(m + 1, n + m + 1);
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        Rational sign = (b(i) < 0) ? Rational(-1) : Rational(1);
        t.block(i + 1, 0, 1, n) = sign * a.row(i);
        t(i + 1, n + i) = 1;
        t(i + 1, n + m) = sign * b(i);
        basis[static_cast<std::size_t>(i)] = static_cast<int>(n + i);
    }
    // Objective max(-sum of artificials): reduced costs start at +1 on the
    // artificial columns; subtracting every constraint row restores canonical
    // form (each artificial is basic in its own row).
    for (Eigen::Index i = 0; i < m; ++i)
        t(0, n + i) = 1;
    for (Eigen::Index i = 1; i <= m; ++i)
        t.row(0) -= t.row(i);
    return Tableau(std::move(t), std::move(basis));
}

// Pivot artificial variables out of the basis (their values are zero at a
// feasible phase-one optimum); rows that cannot pivot are redundant.
void purgeArtificials(Tableau& tab, Eigen::Index n)
{
    for (Eigen::Index i = tab.rows() - 1; i >= 1; --i) {
        if (tab.basis()[static_cast<std::size_t>(i - 1)] < static_cast<int>(n))
            continue;
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) {
                col = j;
                break;
            }
        if (col >= 0)
            tab.pivot(i, col);
        else
            tab.dropRow(i);
    }
}

}  // namespace

LpResult maximizeStandardForm(const MatrixXr& a, const VectorXr& b, const VectorXr& c)
{
    if (a.rows() != b.size() || a.cols() != c.size())
        throw DimensionError("maximizeStandardForm: mismatched shapes");
    const Eigen::Index n = a.cols();
    Tableau tab = phaseOne(a, b);
    tab.maximize();
    LpResult res;
    if (tab.objective() != 0) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    purgeArtificials(tab, n);
    tab.dropColumns(n);
    tab.setObjective(c);
    if (!tab.maximize()) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.value = tab.objective();
    res.x = VectorXr::Zero(n);
    for (Eigen::Index i = 1; i < tab.rows(); ++i)
        res.x(tab.basis()[static_cast<std::size_t>(i - 1)]) = tab.rhs(i);
    return res;
}

bool standardFormFeasible(const MatrixXr& a, const VectorXr& b)
{
    Tableau tab = phaseOne(a, b);
    tab.maximize();
    return tab.objective() == 0;
}

namespace {

// a x <= b with free x becomes [a, -a, I][xp; xn; s] = b over nonnegatives.
void inequalityToStandard(const MatrixXr& a, MatrixXr& as)
{
    const Eigen::Index m = a.rows();
    const Eigen::Index d = a.cols();
    as = MatrixXr::Zero(m, 2 * d + m);
    as.leftCols(d) = a;
    as.middleCols(d, d) = -a;
    as.rightCols(m) = MatrixXr::Identity(m, m);
}

}  // namespace

LpResult maximizeInequalityForm(const MatrixXr& a, const VectorXr& b, const VectorXr& c)
{
    if (a.rows() != b.size() || a.cols() != c.size())
        throw DimensionError("maximizeInequalityForm: mismatched shapes");
    const Eigen::Index m = a.rows();
    const Eigen::Index d = a.cols();
    MatrixXr as;
    inequalityToStandard(a, as);
    VectorXr cs = VectorXr::Zero(2 * d + m);
    cs.head(d) = c;
    cs.segment(d, d) = -c;
    LpResult inner = maximizeStandardForm(as, b, cs);
    LpResult res;
    res.status = inner.status;
    if (inner.status == LpStatus::Optimal) {
        res.value = inner.value;
        res.x = inner.x.head(d) - inner.x.segment(d, d);
    }
    return res;
}

bool inequalityFormFeasible(const MatrixXr& a, const VectorXr& b)
{
    if (a.rows() != b.size())
        throw DimensionError("inequalityFormFeasible: mismatched shapes");
    MatrixXr as;
    inequalityToStandard(a, as);
    return standardFormFeasible(as, b);
}

}  // namespace ctvol
