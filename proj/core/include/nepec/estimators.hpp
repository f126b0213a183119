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

#ifndef NEPEC_ESTIMATORS_HPP
#define NEPEC_ESTIMATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "nepec/circuits.hpp"
#include "nepec/quasiprob.hpp"
#include "nepec/rng.hpp"

namespace nepec {

/// One Monte Carlo draw from the per-gate quasi-probability distributions:
/// a concrete noisy circuit together with its sign and the global one-norm.
struct SampledInstance {
    std::vector<int> op_choices;
    std::vector<double> lambda_choices;
    int sign = 1;        // product of the signs of the chosen coefficients
    double gamma = 1.0;  // product of the per-gate one-norms
};

struct BatchStatistics {
    double mean = 0.0;
    double std_error = 0.0;
    std::vector<double> batch_means;
};

struct EstimatorResult {
    double estimate = 0.0;
    double std_error = 0.0;
    double gamma = 1.0;
    long n_samples = 0;
    int shots_per_sample = 0;  // 0 = exact expectation per sampled circuit
    std::vector<double> batch_means;
};

struct MonteCarloOptions {
    long n_samples = 5000;
    int shots_per_sample = 0;  // 0 = exact
    int n_batches = 25;
    std::uint64_t seed = 0;
    /// Absolute index of the first sample. Each sample's RNG stream is
    /// keyed by (seed, absolute index), so a run over [0, N) equals two
    /// runs over [0, M) and [M, N) merged, and worker partitioning does
    /// not change any drawn value.
    std::uint64_t first_sample_index = 0;
    int workers = 1;
};

/// Grand mean plus the spread of batch means: std_error is the sample
/// standard deviation of the batch means divided by sqrt(n_batches).
/// Values are dealt to batches round-robin, so a remainder spreads evenly.
BatchStatistics batch_statistics(const std::vector<double>& values, int n_batches);

/// Full sum over all per-gate term combinations of coeff-weighted noisy
/// expectation values. Exact, but the term count is the product of the
/// per-gate term counts; above `max_terms` this throws and Monte Carlo
/// estimation should be used instead.
double exact_mitigated_value(const Circuit& c, const std::vector<QuasiProbRep>& reps,
                             const Observable& obs, const DensityMatrix& rho0,
                             std::size_t max_terms = 1000000);

/// Independent per-gate categorical draws with probabilities
/// |coeff| / one_norm.
SampledInstance sample_instance(const std::vector<QuasiProbRep>& reps, SampleRng& rng);

/// Monte Carlo estimator: the mean of gamma * sign * <A> over sampled
/// noisy circuits, where <A> is the exact expectation (shots = 0) or the
/// average of Born-rule shot outcomes drawn from the observable's
/// eigendecomposition.
EstimatorResult monte_carlo_estimate(const Circuit& c, const std::vector<QuasiProbRep>& reps,
                                     const Observable& obs, const DensityMatrix& rho0,
                                     const MonteCarloOptions& opts);

/// Combine two results from disjoint sample-index ranges of the same
/// configuration.
EstimatorResult merge_results(const EstimatorResult& a, const EstimatorResult& b);

struct ExtrapolationMethod {
    enum class Kind { Richardson, Polynomial };
    Kind kind = Kind::Richardson;
    int degree = 1;  // used by Polynomial only

    static ExtrapolationMethod richardson() { return {Kind::Richardson, 0}; }
    static ExtrapolationMethod polynomial(int degree) { return {Kind::Polynomial, degree}; }
};

/// Zero-noise extrapolation of measured (scale factor, value) points: a
/// fixed linear functional of the values, with weights from the Richardson
/// or polynomial-fit coefficients of the scale factors.
double zne_extrapolate(const std::vector<std::pair<double, double>>& points,
                       const ExtrapolationMethod& method);

/// Per-gate representations realizing the target virtual noise level for a
/// depolarizing model (closed form).
std::vector<QuasiProbRep> build_per_reps(const Circuit& c, const NoiseModel& model, double lambda);

/// Canonical-scaling route for arbitrary base representations.
std::vector<QuasiProbRep> scale_reps_canonically(const std::vector<QuasiProbRep>& base_reps,
                                                 double lambda);

/// Probabilistic error reduction: sample the lambda-scaled per-gate
/// representations. lambda = 0 is full cancellation, lambda = 1 the
/// unmitigated circuit; lambda > 1 (noise amplification) requires
/// `allow_amplification`.
EstimatorResult per_estimate(const Circuit& c, const NoiseModel& model, const Observable& obs,
                             const DensityMatrix& rho0, double lambda,
                             const MonteCarloOptions& opts, bool allow_amplification = false);

EstimatorResult per_estimate(const Circuit& c, const std::vector<QuasiProbRep>& base_reps,
                             const Observable& obs, const DensityMatrix& rho0, double lambda,
                             const MonteCarloOptions& opts, bool allow_amplification = false);

/// PER at each scale factor (independent streams and equal budgets per
/// factor), then zero-noise extrapolation. The standard error combines the
/// per-factor errors as sqrt(sum_j w_j^2 se_j^2).
EstimatorResult virtual_zne(const Circuit& c, const NoiseModel& model, const Observable& obs,
                            const DensityMatrix& rho0, const std::vector<double>& scale_factors,
                            const MonteCarloOptions& opts,
                            const ExtrapolationMethod& method = ExtrapolationMethod::richardson());

}  // namespace nepec

#endif
