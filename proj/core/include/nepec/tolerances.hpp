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

#ifndef NEPEC_TOLERANCES_HPP
#define NEPEC_TOLERANCES_HPP

namespace nepec {

/// Central numerical tolerance configuration.
///
/// Physicality checks (trace preservation, complete positivity, unitarity)
/// use looser bounds than pure-algebra comparisons, and positive
/// semidefiniteness is tested against a small negative eigenvalue floor so
/// that accumulated roundoff does not fail valid states.
struct Tolerances {
    double physical = 1e-9;            // CPTP / unitarity / trace preservation
    double algebra = 1e-12;            // exact algebraic identities
    double hermiticity = 1e-10;        // Hermitian symmetry of states/observables
    double state_trace = 1e-10;        // |tr(rho) - 1|
    double psd_floor = 1e-9;           // eigenvalues >= -psd_floor
    double kraus_completeness = 1e-8;  // |sum K^dag K - I|
    double lp_feasibility = 1e-8;      // residual accepted by the LP solver
    double rep_normalization = 1e-8;   // |sum of coefficients - 1|
    double imag_residue = 1e-9;        // imaginary part of expectation values
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace nepec

#endif
