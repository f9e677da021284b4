#pragma once

// Bounded-variable revised primal simplex.
//
// The model min c'x, L <= Ax <= U-ish rows is put in computational form
// Ax + s = b with one slack per row (<=: s in [0,inf), >=: s in (-inf,0],
// =: s fixed at 0). The basis is maintained as an Eigen SparseLU
// factorization refreshed periodically, with product-form eta updates
// between refactorizations. Phase 1 is the composite method: basic
// variables may sit outside their bounds and the objective is the total
// bound violation with costs -1/0/+1 recomputed every iteration; this
// needs no artificial columns and accepts any starting basis, which is
// what lets branch-and-bound warm-start nodes from the parent basis.
// Pricing is Dantzig (most negative), with Bland's rule engaged during
// long degenerate runs to break cycles.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "hynet/solver/mip_model.hpp"

namespace hynet {

enum class VarStatus : unsigned char { Basic = 0, AtLower = 1, AtUpper = 2, Free = 3 };

enum class LpStatus : unsigned char {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalError,
};

inline const char* to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::NumericalError: return "numerical-error";
    }
    return "numerical-error";
}

struct LpResult {
    LpStatus status = LpStatus::NumericalError;
    double objective = 0.0;
    std::vector<double> x;             // structural values
    std::vector<double> row_duals;     // y, one per constraint
    std::vector<double> reduced_costs; // one per structural variable
    long iterations = 0;
};

struct SimplexOptions {
    double feas_tol = 1e-7;  // bound/row violation considered zero
    double opt_tol = 1e-7;   // reduced-cost threshold
    double pivot_tol = 1e-9; // smallest usable pivot element
    int refactor_every = 64; // eta vectors kept before refreshing the LU
    long iteration_limit = -1;
};

class SimplexSolver {
public:
    using Options = SimplexOptions;

    explicit SimplexSolver(const MipModel& model, Options options = Options())
        : opt_(options),
          n_(model.variable_count()),
          m_(model.constraint_count()),
          total_(n_ + model.constraint_count()) {
        cost_.assign(total_, 0.0);
        lower_.assign(total_, 0.0);
        upper_.assign(total_, 0.0);
        for (int j = 0; j < n_; ++j) {
            cost_[j] = model.variables[j].objective;
            lower_[j] = model.variables[j].lower;
            upper_[j] = model.variables[j].upper;
        }
        rhs_.assign(m_, 0.0);
        col_start_.assign(n_ + 1, 0);
        for (const auto& row : model.constraints)
            for (const auto& [var, coef] : row.coefficients)
                if (coef != 0.0) ++col_start_[var + 1];
        for (int j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
        col_row_.resize(col_start_[n_]);
        col_val_.resize(col_start_[n_]);
        std::vector<int> fill = col_start_;
        for (int i = 0; i < m_; ++i) {
            const auto& row = model.constraints[i];
            rhs_[i] = row.rhs;
            for (const auto& [var, coef] : row.coefficients) {
                if (coef == 0.0) continue;
                col_row_[fill[var]] = i;
                col_val_[fill[var]] = coef;
                ++fill[var];
            }
            const int s = n_ + i;
            switch (row.sense) {
            case Sense::LessEqual:
                lower_[s] = 0.0;
                upper_[s] = kInf;
                break;
            case Sense::GreaterEqual:
                lower_[s] = -kInf;
                upper_[s] = 0.0;
                break;
            case Sense::Equal:
                lower_[s] = 0.0;
                upper_[s] = 0.0;
                break;
            }
        }
    }

    int structural_count() const { return n_; }
    int row_count() const { return m_; }

    /// Overrides a structural variable's bounds (branch-and-bound hook).
    void set_variable_bounds(int j, double lo, double up) {
        lower_[j] = lo;
        upper_[j] = up;
    }

    /// Overrides a row's right-hand side (scenario re-solve hook).
    void set_rhs(int i, double v) { rhs_[i] = v; }
    double variable_lower(int j) const { return lower_[j]; }
    double variable_upper(int j) const { return upper_[j]; }

    /// Basis snapshot usable to warm-start a later solve (possibly after
    /// bound changes). One status per column including slacks.
    const std::vector<VarStatus>& basis_status() const { return status_; }

    LpResult solve() { return run(nullptr); }
    LpResult solve_from(const std::vector<VarStatus>& warm) { return run(&warm); }

private:
    struct Eta {
        int r;
        Eigen::VectorXd w;
    };

    Options opt_;
    int n_, m_, total_;
    std::vector<double> cost_, lower_, upper_, rhs_;
    std::vector<int> col_start_, col_row_;
    std::vector<double> col_val_;

    // solve-time state
    std::vector<VarStatus> status_;
    std::vector<int> basis_;    // m_ column ids
    std::vector<int> in_basis_; // column -> basis position or -1
    std::vector<double> xb_;    // basic values
    std::vector<double> xn_;    // values of all columns when nonbasic
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<Eta> etas_;

    double bound_near_zero(int j) const {
        if (std::isfinite(lower_[j]) &&
            (!std::isfinite(upper_[j]) || std::abs(lower_[j]) <= std::abs(upper_[j])))
            return lower_[j];
        if (std::isfinite(upper_[j])) return upper_[j];
        return 0.0;
    }

    void set_nonbasic(int j) {
        if (std::isfinite(lower_[j]) &&
            (!std::isfinite(upper_[j]) || std::abs(lower_[j]) <= std::abs(upper_[j]))) {
            status_[j] = VarStatus::AtLower;
            xn_[j] = lower_[j];
        } else if (std::isfinite(upper_[j])) {
            status_[j] = VarStatus::AtUpper;
            xn_[j] = upper_[j];
        } else {
            status_[j] = VarStatus::Free;
            xn_[j] = 0.0;
        }
    }

    void init_cold() {
        status_.assign(total_, VarStatus::AtLower);
        xn_.assign(total_, 0.0);
        basis_.resize(m_);
        for (int j = 0; j < n_; ++j) set_nonbasic(j);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            status_[n_ + i] = VarStatus::Basic;
        }
    }

    bool init_warm(const std::vector<VarStatus>& warm) {
        if (static_cast<int>(warm.size()) != total_) return false;
        int basics = 0;
        for (VarStatus s : warm)
            if (s == VarStatus::Basic) ++basics;
        if (basics != m_) return false;
        status_ = warm;
        xn_.assign(total_, 0.0);
        basis_.clear();
        for (int j = 0; j < total_; ++j) {
            switch (status_[j]) {
            case VarStatus::Basic:
                basis_.push_back(j);
                break;
            case VarStatus::AtLower:
                if (!std::isfinite(lower_[j])) { set_nonbasic(j); break; }
                xn_[j] = lower_[j];
                break;
            case VarStatus::AtUpper:
                if (!std::isfinite(upper_[j])) { set_nonbasic(j); break; }
                xn_[j] = upper_[j];
                break;
            case VarStatus::Free:
                xn_[j] = 0.0;
                break;
            }
        }
        return true;
    }

    bool factorize() {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(col_start_[n_] + m_);
        for (int p = 0; p < m_; ++p) {
            const int j = basis_[p];
            if (j >= n_) {
                trips.emplace_back(j - n_, p, 1.0);
            } else {
                for (int q = col_start_[j]; q < col_start_[j + 1]; ++q)
                    trips.emplace_back(col_row_[q], p, col_val_[q]);
            }
        }
        Eigen::SparseMatrix<double> B(m_, m_);
        B.setFromTriplets(trips.begin(), trips.end());
        lu_.compute(B);
        etas_.clear();
        return lu_.info() == Eigen::Success;
    }

    void ftran(Eigen::VectorXd& v) {
        v = lu_.solve(v);
        for (const Eta& e : etas_) {
            const double piv = v[e.r] / e.w[e.r];
            if (piv != 0.0) {
                v -= piv * e.w;
                v[e.r] = piv;
            } else {
                v[e.r] = 0.0;
            }
        }
    }

    void btran(Eigen::VectorXd& v) {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            const Eta& e = *it;
            double t = v[e.r];
            for (int i = 0; i < m_; ++i)
                if (i != e.r) t -= e.w[i] * v[i];
            v[e.r] = t / e.w[e.r];
        }
        v = lu_.transpose().solve(v);
    }

    Eigen::VectorXd column(int j) const {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
        if (j >= n_) {
            a[j - n_] = 1.0;
        } else {
            for (int q = col_start_[j]; q < col_start_[j + 1]; ++q) a[col_row_[q]] = col_val_[q];
        }
        return a;
    }

    void recompute_basics() {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(m_);
        for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == VarStatus::Basic || xn_[j] == 0.0) continue;
            if (j >= n_) {
                r[j - n_] -= xn_[j];
            } else {
                for (int q = col_start_[j]; q < col_start_[j + 1]; ++q)
                    r[col_row_[q]] -= col_val_[q] * xn_[j];
            }
        }
        Eigen::VectorXd v = r;
        ftran(v);
        xb_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) xb_[i] = v[i];
    }

    double infeasibility() const {
        double sum = 0.0;
        for (int p = 0; p < m_; ++p) {
            const int j = basis_[p];
            if (xb_[p] < lower_[j] - opt_.feas_tol) sum += lower_[j] - xb_[p];
            else if (xb_[p] > upper_[j] + opt_.feas_tol) sum += xb_[p] - upper_[j];
        }
        return sum;
    }

    double dot_column(int j, const Eigen::VectorXd& y) const {
        if (j >= n_) return y[j - n_];
        double s = 0.0;
        for (int q = col_start_[j]; q < col_start_[j + 1]; ++q) s += col_val_[q] * y[col_row_[q]];
        return s;
    }

    LpResult run(const std::vector<VarStatus>* warm) {
        LpResult res;
        if (warm == nullptr || !init_warm(*warm)) init_cold();
        in_basis_.assign(total_, -1);
        for (int p = 0; p < m_; ++p) in_basis_[basis_[p]] = p;
        if (!factorize()) {
            init_cold();
            in_basis_.assign(total_, -1);
            for (int p = 0; p < m_; ++p) in_basis_[basis_[p]] = p;
            if (!factorize()) return res; // identity basis cannot fail
        }
        recompute_basics();

        const long iter_limit =
            opt_.iteration_limit > 0 ? opt_.iteration_limit : 50000 + 40L * (m_ + n_);
        long degenerate_run = 0;
        bool bland = false;
        long iter = 0;
        int cleanup_rounds = 0;

        Eigen::VectorXd y(m_), w(m_);

        while (true) {
            if (iter >= iter_limit) {
                res.status = LpStatus::IterationLimit;
                res.iterations = iter;
                return res;
            }

            const bool phase1 = infeasibility() > opt_.feas_tol;

            // Objective gradient over the basis: composite phase-1 costs or
            // the true costs.
            y.setZero();
            for (int p = 0; p < m_; ++p) {
                const int j = basis_[p];
                if (phase1) {
                    if (xb_[p] < lower_[j] - opt_.feas_tol) y[p] = -1.0;
                    else if (xb_[p] > upper_[j] + opt_.feas_tol) y[p] = 1.0;
                    else y[p] = 0.0;
                } else {
                    y[p] = cost_[j];
                }
            }
            btran(y);

            // Price all nonbasic columns.
            int enter = -1;
            double best = 0.0;
            int direction = +1;
            for (int j = 0; j < total_; ++j) {
                if (status_[j] == VarStatus::Basic) continue;
                if (lower_[j] == upper_[j]) continue; // fixed, never enters
                const double cj = phase1 ? 0.0 : cost_[j];
                const double dj = cj - dot_column(j, y);
                double score = 0.0;
                int dir = 0;
                if (status_[j] == VarStatus::AtLower && dj < -opt_.opt_tol) {
                    score = -dj;
                    dir = +1;
                } else if (status_[j] == VarStatus::AtUpper && dj > opt_.opt_tol) {
                    score = dj;
                    dir = -1;
                } else if (status_[j] == VarStatus::Free && std::abs(dj) > opt_.opt_tol) {
                    score = std::abs(dj);
                    dir = dj < 0 ? +1 : -1;
                }
                if (dir == 0) continue;
                if (bland) {
                    enter = j;
                    direction = dir;
                    break;
                }
                if (score > best) {
                    best = score;
                    enter = j;
                    direction = dir;
                }
            }

            if (enter < 0) {
                if (phase1) {
                    res.status = LpStatus::Infeasible;
                    res.iterations = iter;
                    return res;
                }
                // Optimal by pricing. Refresh the factorization once to make
                // sure drift has not hidden infeasibility or mispricing.
                if (!etas_.empty() && cleanup_rounds < 3) {
                    ++cleanup_rounds;
                    if (!factorize()) {
                        res.status = LpStatus::NumericalError;
                        res.iterations = iter;
                        return res;
                    }
                    recompute_basics();
                    continue;
                }
                return finish(res, iter);
            }

            w = column(enter);
            ftran(w);

            // Ratio test: entering moves by delta >= 0 in `direction`; basic
            // p changes at rate -direction*w[p]. In phase 1, basics outside a
            // bound block only when moving back onto that bound; moving
            // further out is allowed (their violation is priced in y).
            double delta = kInf;
            int leave = -1; // basis position
            double leave_to = 0.0;
            if (std::isfinite(lower_[enter]) && std::isfinite(upper_[enter]))
                delta = upper_[enter] - lower_[enter];
            double best_piv = 0.0;
            for (int p = 0; p < m_; ++p) {
                const double rate = -direction * w[p];
                if (std::abs(rate) < opt_.pivot_tol) continue;
                const int j = basis_[p];
                double limit = kInf;
                double target = 0.0;
                const bool below = xb_[p] < lower_[j] - opt_.feas_tol;
                const bool above = xb_[p] > upper_[j] + opt_.feas_tol;
                if (rate > 0.0) { // basic increases
                    const double cap = below ? lower_[j] : upper_[j];
                    if (std::isfinite(cap) && !above) {
                        limit = (cap - xb_[p]) / rate;
                        target = cap;
                    }
                } else { // basic decreases
                    const double cap = above ? upper_[j] : lower_[j];
                    if (std::isfinite(cap) && !below) {
                        limit = (xb_[p] - cap) / (-rate);
                        target = cap;
                    }
                }
                if (limit == kInf) continue;
                if (limit < -opt_.feas_tol) limit = 0.0;
                if (limit < delta - 1e-9 ||
                    (limit < delta + 1e-9 &&
                     (bland ? (leave >= 0 && basis_[p] < basis_[leave])
                            : std::abs(w[p]) > best_piv))) {
                    delta = std::max(limit, 0.0);
                    leave = p;
                    leave_to = target;
                    best_piv = std::abs(w[p]);
                }
            }

            if (delta == kInf) {
                res.status = phase1 ? LpStatus::NumericalError : LpStatus::Unbounded;
                res.iterations = iter;
                return res;
            }

            degenerate_run = delta < 1e-10 ? degenerate_run + 1 : 0;
            bland = degenerate_run > 60;

            // Apply the step.
            if (delta > 0.0)
                for (int p = 0; p < m_; ++p) xb_[p] -= direction * delta * w[p];

            if (leave < 0) {
                // Bound flip: entering never enters the basis.
                xn_[enter] = direction > 0 ? upper_[enter] : lower_[enter];
                status_[enter] = direction > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
            } else {
                const int out = basis_[leave];
                xn_[out] = leave_to;
                status_[out] = (std::isfinite(lower_[out]) &&
                                std::abs(leave_to - lower_[out]) <= std::abs(leave_to - upper_[out]))
                                   ? VarStatus::AtLower
                                   : VarStatus::AtUpper;
                if (!std::isfinite(lower_[out]) && !std::isfinite(upper_[out]))
                    status_[out] = VarStatus::Free;
                in_basis_[out] = -1;
                const double enter_value = xn_[enter] + direction * delta;
                basis_[leave] = enter;
                in_basis_[enter] = leave;
                status_[enter] = VarStatus::Basic;
                xb_[leave] = enter_value;
                etas_.push_back(Eta{leave, w});
                if (static_cast<int>(etas_.size()) >= opt_.refactor_every) {
                    if (!factorize()) {
                        res.status = LpStatus::NumericalError;
                        res.iterations = iter;
                        return res;
                    }
                    recompute_basics();
                }
            }
            ++iter;
        }
    }

    LpResult finish(LpResult& res, long iter) {
        res.status = LpStatus::Optimal;
        res.iterations = iter;
        res.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j)
            if (status_[j] != VarStatus::Basic) res.x[j] = xn_[j];
        for (int p = 0; p < m_; ++p)
            if (basis_[p] < n_) res.x[basis_[p]] = xb_[p];
        res.objective = 0.0;
        for (int j = 0; j < n_; ++j) res.objective += cost_[j] * res.x[j];

        Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
        for (int p = 0; p < m_; ++p) y[p] = cost_[basis_[p]];
        btran(y);
        res.row_duals.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) res.row_duals[i] = y[i];
        res.reduced_costs.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) res.reduced_costs[j] = cost_[j] - dot_column(j, y);
        return res;
    }
};

} // namespace hynet
