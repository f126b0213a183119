// Copyright 2026 The nepec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nepec/simplex.hpp"

#include <vector>

#include "nepec/errors.hpp"

namespace nepec {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kReducedCostTol = 1e-9;
constexpr long kMaxIterations = 200000;

// Tableau layout: rows 0..m-1 are constraints, row m is the objective.
// Columns 0..n_total-1 are variables, column n_total holds b / -objective.
struct Tableau {
    Eigen::MatrixXd t;
    std::vector<int> basis;  // basic variable per constraint row
    int m;
    int n;

    double& rhs(int row) { return t(row, n); }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r <= m; ++r) {
            if (r != row && t(r, col) != 0.0) {
                t.row(r) -= t(r, col) * t.row(row);
            }
        }
        basis[row] = col;
    }

    // Bland's rule: entering = lowest-index column with negative reduced
    // cost; leaving = min-ratio row, ties broken by lowest basis index.
    // `allowed` masks columns that may enter (artificials are barred in
    // phase 2). Returns false at optimality.
    bool iterate(const std::vector<bool>& allowed) {
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (allowed[j] && t(m, j) < -kReducedCostTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            return false;
        }
        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < m; ++r) {
            if (t(r, enter) > kPivotTol) {
                const double ratio = rhs(r) / t(r, enter);
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (ratio <= best_ratio + 1e-15 && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) {
            throw NumericalConsistencyError("simplex: unbounded LP (not expected for one-norm objectives)");
        }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpResult solve_equality_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                           const Eigen::VectorXd& b, double feasibility_tol) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (b.size() != m || c.size() != n) {
        throw DimensionMismatchError("solve_equality_lp: inconsistent problem dimensions");
    }

    Tableau tab;
    tab.m = m;
    tab.n = n + m;  // original variables then one artificial per row
    tab.t = Eigen::MatrixXd::Zero(m + 1, tab.n + 1);
    for (int r = 0; r < m; ++r) {
        const double sign = b(r) < 0.0 ? -1.0 : 1.0;
        tab.t.block(r, 0, 1, n) = sign * a.row(r);
        tab.t(r, n + r) = 1.0;
        tab.rhs(r) = sign * b(r);
        tab.basis.push_back(n + r);
    }

    // Phase 1: minimize the sum of artificials.
    for (int j = 0; j < n; ++j) {
        tab.t(m, j) = -tab.t.block(0, j, m, 1).sum();
    }
    tab.t(m, tab.n) = -tab.t.col(tab.n).head(m).sum();
    std::vector<bool> allowed(tab.n, true);
    long iters = 0;
    while (tab.iterate(allowed)) {
        if (++iters > kMaxIterations) {
            throw NumericalConsistencyError("simplex: phase-1 iteration limit exceeded");
        }
    }
    const double phase1 = -tab.t(m, tab.n);

    LpResult result;
    result.feasibility_residual = phase1 < 0.0 ? 0.0 : phase1;
    if (phase1 > feasibility_tol) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    // Pivot out any artificial still basic (at zero level); if its row has
    // no usable original column the row is redundant and stays inert.
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] >= n) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(tab.t(r, j)) > kPivotTol) {
                    tab.pivot(r, j);
                    break;
                }
            }
        }
    }

    // Phase 2: original objective, artificials barred from entering.
    tab.t.row(m).setZero();
    for (int j = 0; j < n; ++j) {
        tab.t(m, j) = c(j);
    }
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n) {
            tab.t.row(m) -= tab.t(m, tab.basis[r]) * tab.t.row(r);
        }
    }
    for (int j = n; j < tab.n; ++j) {
        allowed[j] = false;
    }
    iters = 0;
    while (tab.iterate(allowed)) {
        if (++iters > kMaxIterations) {
            throw NumericalConsistencyError("simplex: phase-2 iteration limit exceeded");
        }
    }

    result.status = LpStatus::Optimal;
    result.x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n) {
            result.x(tab.basis[r]) = tab.rhs(r);
        }
    }
    result.objective = c.dot(result.x);
    return result;
}

}  // namespace nepec
