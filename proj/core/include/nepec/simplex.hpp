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

#ifndef NEPEC_SIMPLEX_HPP
#define NEPEC_SIMPLEX_HPP

#include <Eigen/Dense>

namespace nepec {

enum class LpStatus {
    Optimal,
    Infeasible,
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    /// Minimum attainable L1 residual of Ax = b over x >= 0 (phase-1
    /// optimum); ~0 for feasible problems.
    double feasibility_residual = 0.0;
};

/// Dense two-phase primal simplex for
///     min c^T x   s.t.   A x = b,  x >= 0.
///
/// Bland's rule is used throughout, so degenerate and redundant equality
/// rows (common here: the constraints stack real and imaginary parts of a
/// structured matrix equality) cannot cause cycling. Problem sizes in this
/// project are at most a few hundred rows/columns.
LpResult solve_equality_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                           const Eigen::VectorXd& b, double feasibility_tol = 1e-8);

}  // namespace nepec

#endif
