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

#ifndef NEPEC_QUASIPROB_HPP
#define NEPEC_QUASIPROB_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nepec/noise.hpp"
#include "nepec/superop.hpp"

namespace nepec {

struct RepTerm {
    double eta = 0.0;
    NoisyOperation op;
};

/// Quasi-probability representation of a target operation: a real linear
/// combination of implementable noisy operations. Coefficients sum to 1
/// whenever all operations are trace preserving; the one-norm (>= 1)
/// squared governs the Monte Carlo sampling cost.
struct QuasiProbRep {
    std::vector<RepTerm> terms;
    std::string target_label;
    std::optional<std::string> bias_note;  // set for approximate (extrapolation) reps
    double residual = 0.0;                 // reconstruction residual, when computed
};

double one_norm(const QuasiProbRep& rep);

/// Sum of coefficients; 1 within tolerance for trace-preserving terms.
double coefficient_sum(const QuasiProbRep& rep);

/// The represented map: sum of eta * op.
Superoperator reconstruct(const QuasiProbRep& rep);

/// Four-term representation of a noise-scaled single-qubit gate over the
/// depolarizing-twisted basis {D_p G, D_p X G, D_p Y G, D_p Z G}:
///
///   coeff on D_p G:          1 + (3/4) e (1-lambda) / (1-e)
///   coeff on D_p {X,Y,Z} G: -(1/4) e (1-lambda) / (1-e),   e = 4p/3.
///
/// lambda = 0 cancels the noise exactly (the PEC representation, one-norm
/// 1 + (3/2) e/(1-e)); lambda = 1 is the unmitigated noisy gate;
/// 0 < lambda < 1 realizes a virtually reduced noise level.
QuasiProbRep depolarizing_per_rep(const Superoperator& gate, const std::string& label,
                                  double p, double lambda);

/// One-norm of depolarizing_per_rep as a function of lambda:
/// gamma - lambda (gamma - 1) on [0, 1]; 1 on [1, 1/e].
double depolarizing_per_one_norm(double p, double lambda);

/// L1-minimal representation of `target` over `basis`, via linear
/// programming on the stacked real/imaginary matrix-equality constraints.
/// Throws InfeasibleRepresentationError when no exact representation
/// exists over the basis (e.g. unitary-twisted amplitude damping without
/// reset or noise scaling).
QuasiProbRep optimal_representation(const Superoperator& target,
                                    const std::vector<NoisyOperation>& basis,
                                    const Tolerances& tol = default_tolerances());

/// Zero-noise Richardson coefficients for the scale factors S:
/// coeff(l) = prod_{l' in S, l' != l} l' / (l' - l). Exact polynomial
/// extrapolation of degree |S| - 1; coefficients sum to 1.
std::vector<double> richardson_coefficients(const std::vector<double>& scale_factors);

/// Zero-intercept weights of a degree-`degree` polynomial least-squares
/// fit at the scale factors: the extrapolated value is the fixed linear
/// functional sum_j w_j y_j of the data. Equals Richardson coefficients
/// when degree = |S| - 1.
std::vector<double> polyfit_coefficients(const std::vector<double>& scale_factors, int degree);

enum class ScalingMode {
    Parametric,  // scale the noise model parameter
    Folding,     // digital folding; odd integer scale factors only
};

/// Representation of an ideal gate over the SAME gate executed at the
/// scale factors S with the given coefficients (gate-level extrapolation).
/// Generally biased: exact only when the scaled family is polynomial of
/// low enough degree in lambda.
QuasiProbRep gate_extrapolation_rep(const Superoperator& gate, const std::string& label,
                                    const NoiseModel& model, const std::vector<double>& scale_factors,
                                    const std::vector<double>& coefficients, ScalingMode mode);

/// Sign-split of a representation: positive/negative volumes and the two
/// channels formed by normalizing each part. gamma_plus - gamma_minus = 1,
/// and gamma_plus*phi_plus - gamma_minus*phi_minus reconstructs the rep.
struct CanonicalSplit {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double p_tilde = 0.0;  // gamma_minus / gamma_plus
    Superoperator phi_plus;
    Superoperator phi_minus;
    std::string target_label;
};

/// Throws DegenerateSplitError when the rep has no negative coefficient
/// (gamma_minus = 0; the error channel is undefined).
CanonicalSplit canonical_split(const QuasiProbRep& rep,
                               const Tolerances& tol = default_tolerances());

/// Two-term representation of the canonically noise-scaled gate,
///   (gamma_plus - lambda gamma_minus) phi_plus - (1 - lambda) gamma_minus phi_minus,
/// defined for lambda in [0, (gamma+1)/(gamma-1)]. Its one-norm is
/// gamma - lambda (gamma - 1) on [0, 1] and exactly 1 beyond.
QuasiProbRep canonical_scaled_rep(const CanonicalSplit& split, double lambda);

struct ConvexityTestResult {
    bool feasible = false;
    std::vector<double> mu;  // convex weights when feasible
    double residual = 0.0;
};

/// Is `scaled_op` a convex combination of the basis operations? When this
/// holds for every scaled operation, extending the basis by noise scaling
/// cannot reduce the optimal one-norm. Infeasibility is a valid result,
/// not an error.
ConvexityTestResult convexity_test(const Superoperator& scaled_op,
                                   const std::vector<NoisyOperation>& basis,
                                   const Tolerances& tol = default_tolerances());

/// Exact three-point extrapolation data for amplitude damping. In the
/// variable p' = 1 - sqrt(1-p) the channel is quadratic, so Richardson
/// coefficients over three p'-scale factors cancel the noise exactly; the
/// optimal admissible triple is {1, (1 + 1/p')/2, 1/p'} with one-norm
/// (1 + 6p' + p'^2)/(1 - p')^2.
struct AmpDampExtrapolation {
    double p_prime = 0.0;
    std::array<double, 3> scale_factors{};
    std::array<double, 3> coefficients{};
    double gamma = 0.0;
};

AmpDampExtrapolation ampdamp_exact_extrapolation(double p);

/// The three-term gate representation induced by ampdamp_exact_extrapolation,
/// over the gate followed by p'-scaled amplitude damping.
QuasiProbRep ampdamp_extrapolation_rep(const Superoperator& gate, const std::string& label,
                                       double p);

/// Numerical search for the one-norm-minimizing triple of Richardson scale
/// factors in [1, max_scale] (coarse grid plus coordinate refinement).
struct ScaleFactorSearchResult {
    std::array<double, 3> scale_factors{};
    double gamma = 0.0;
};

ScaleFactorSearchResult optimize_extrapolation_scale_factors(double max_scale);

}  // namespace nepec

#endif
