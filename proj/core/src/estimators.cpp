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

#include "nepec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace nepec {

namespace {

struct CompiledGate {
    std::vector<CMatrix> term_superops;  // embedded to circuit width
    std::vector<double> cumulative;      // sampling CDF over |coeff| / one_norm
    std::vector<int> signs;
    std::vector<double> lambdas;
    std::vector<double> coeffs;
    double gate_norm = 1.0;
};

int pick_from_cdf(const std::vector<double>& cumulative, double u) {
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
        if (u < cumulative[i]) {
            return static_cast<int>(i);
        }
    }
    return static_cast<int>(cumulative.size()) - 1;
}

std::vector<CompiledGate> compile_reps(const Circuit& c, const std::vector<QuasiProbRep>& reps) {
    c.validate();
    if (reps.size() != c.gates.size()) {
        std::ostringstream os;
        os << "expected one representation per gate (" << c.gates.size() << "), got "
           << reps.size();
        throw ValidationError(os.str());
    }
    std::vector<CompiledGate> out;
    out.reserve(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const QuasiProbRep& rep = reps[i];
        if (rep.terms.empty()) {
            throw ValidationError("empty representation for gate " + c.gates[i].label);
        }
        CompiledGate g;
        g.gate_norm = one_norm(rep);
        double cum = 0.0;
        for (const RepTerm& t : rep.terms) {
            g.term_superops.push_back(
                embed(t.op.superop, c.gates[i].targets, c.num_qubits).matrix());
            cum += std::abs(t.eta) / g.gate_norm;
            g.cumulative.push_back(cum);
            g.signs.push_back(t.eta < 0.0 ? -1 : 1);
            g.lambdas.push_back(t.op.lambda);
            g.coeffs.push_back(t.eta);
        }
        g.cumulative.back() = 1.0;
        out.push_back(std::move(g));
    }
    return out;
}

struct ShotSampler {
    Eigen::VectorXd eigenvalues;
    CMatrix eigenvectors;

    explicit ShotSampler(const Observable& obs) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(obs.matrix());
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
    }

    /// Born-rule shot average: draw `shots` outcomes from the projector
    /// probabilities of the state and average the eigenvalues.
    double sample(const CMatrix& rho, int shots, SampleRng& rng) const {
        const Eigen::Index d = rho.rows();
        std::vector<double> cum(static_cast<std::size_t>(d));
        double total = 0.0;
        for (Eigen::Index m = 0; m < d; ++m) {
            const Complex q = (eigenvectors.col(m).adjoint() * rho * eigenvectors.col(m))(0);
            total += std::max(0.0, q.real());
            cum[static_cast<std::size_t>(m)] = total;
        }
        for (double& v : cum) {
            v /= total;
        }
        cum.back() = 1.0;
        double sum = 0.0;
        for (int s = 0; s < shots; ++s) {
            sum += eigenvalues(pick_from_cdf(cum, rng.uniform()));
        }
        return sum / shots;
    }
};

}  // namespace

BatchStatistics batch_statistics(const std::vector<double>& values, int n_batches) {
    if (n_batches < 1) {
        throw ValidationError("batch_statistics: n_batches must be >= 1");
    }
    if (values.empty() || static_cast<std::size_t>(n_batches) > values.size()) {
        throw ValidationError("batch_statistics: need at least one value per batch");
    }
    std::vector<double> sums(static_cast<std::size_t>(n_batches), 0.0);
    std::vector<long> counts(static_cast<std::size_t>(n_batches), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t b = i % static_cast<std::size_t>(n_batches);
        sums[b] += values[i];
        ++counts[b];
    }
    BatchStatistics stats;
    double grand = 0.0;
    for (double v : values) {
        grand += v;
    }
    stats.mean = grand / static_cast<double>(values.size());
    stats.batch_means.resize(static_cast<std::size_t>(n_batches));
    for (int b = 0; b < n_batches; ++b) {
        stats.batch_means[static_cast<std::size_t>(b)] =
            sums[static_cast<std::size_t>(b)] / static_cast<double>(counts[static_cast<std::size_t>(b)]);
    }
    if (n_batches == 1) {
        stats.std_error = 0.0;
        return stats;
    }
    const double bm_mean =
        std::accumulate(stats.batch_means.begin(), stats.batch_means.end(), 0.0) / n_batches;
    double ss = 0.0;
    for (double bm : stats.batch_means) {
        ss += (bm - bm_mean) * (bm - bm_mean);
    }
    const double sd = std::sqrt(ss / (n_batches - 1));
    stats.std_error = sd / std::sqrt(static_cast<double>(n_batches));
    return stats;
}

double exact_mitigated_value(const Circuit& c, const std::vector<QuasiProbRep>& reps,
                             const Observable& obs, const DensityMatrix& rho0,
                             std::size_t max_terms) {
    const std::vector<CompiledGate> gates = compile_reps(c, reps);
    double term_count = 1.0;
    for (const CompiledGate& g : gates) {
        term_count *= static_cast<double>(g.term_superops.size());
    }
    if (term_count > static_cast<double>(max_terms)) {
        std::ostringstream os;
        os << "exact_mitigated_value: " << term_count << " term combinations exceed the limit of "
           << max_terms << "; use monte_carlo_estimate instead";
        throw ValidationError(os.str());
    }
    const CVector v0 = vectorize(rho0.matrix());
    const CVector w = vectorize(obs.matrix().adjoint());

    Complex total = 0.0;
    // Depth-first over per-gate terms, carrying the evolved state and the
    // coefficient product.
    auto recurse = [&](auto&& self, std::size_t gate_idx, const CVector& state,
                       double coeff) -> void {
        if (gate_idx == gates.size()) {
            total += coeff * w.dot(state);
            return;
        }
        const CompiledGate& g = gates[gate_idx];
        for (std::size_t a = 0; a < g.term_superops.size(); ++a) {
            if (g.coeffs[a] == 0.0) {
                continue;
            }
            self(self, gate_idx + 1, CVector(g.term_superops[a] * state), coeff * g.coeffs[a]);
        }
    };
    recurse(recurse, 0, v0, 1.0);
    if (std::abs(total.imag()) > default_tolerances().imag_residue) {
        std::ostringstream os;
        os << "exact_mitigated_value: imaginary residue " << total.imag();
        throw NumericalConsistencyError(os.str());
    }
    return total.real();
}

SampledInstance sample_instance(const std::vector<QuasiProbRep>& reps, SampleRng& rng) {
    if (reps.empty()) {
        throw ValidationError("sample_instance: no representations");
    }
    SampledInstance inst;
    for (const QuasiProbRep& rep : reps) {
        const double norm = one_norm(rep);
        double cum = 0.0;
        const double u = rng.uniform();
        int choice = static_cast<int>(rep.terms.size()) - 1;
        for (std::size_t a = 0; a < rep.terms.size(); ++a) {
            cum += std::abs(rep.terms[a].eta) / norm;
            if (u < cum) {
                choice = static_cast<int>(a);
                break;
            }
        }
        const RepTerm& t = rep.terms[static_cast<std::size_t>(choice)];
        inst.op_choices.push_back(choice);
        inst.lambda_choices.push_back(t.op.lambda);
        inst.sign *= t.eta < 0.0 ? -1 : 1;
        inst.gamma *= norm;
    }
    return inst;
}

EstimatorResult monte_carlo_estimate(const Circuit& c, const std::vector<QuasiProbRep>& reps,
                                     const Observable& obs, const DensityMatrix& rho0,
                                     const MonteCarloOptions& opts) {
    if (opts.n_samples < 1 || opts.n_batches < 1 || opts.n_samples < opts.n_batches) {
        throw ValidationError("monte_carlo_estimate: need n_samples >= n_batches >= 1");
    }
    if (opts.shots_per_sample < 0) {
        throw ValidationError("monte_carlo_estimate: shots_per_sample must be >= 0 (0 = exact)");
    }
    const std::vector<CompiledGate> gates = compile_reps(c, reps);
    double gamma = 1.0;
    for (const CompiledGate& g : gates) {
        gamma *= g.gate_norm;
    }
    const CVector v0 = vectorize(rho0.matrix());
    const CVector w = vectorize(obs.matrix().adjoint());
    const Eigen::Index d = rho0.dim();
    const ShotSampler shot_sampler(obs);

    std::vector<double> values(static_cast<std::size_t>(opts.n_samples));
    const int workers = std::max(1, opts.workers);
    std::vector<double> max_imag(static_cast<std::size_t>(workers), 0.0);

    auto run_range = [&](long lo, long hi, int worker) {
        CVector state(v0.size());
        CVector next(v0.size());
        double local_imag = 0.0;
        for (long idx = lo; idx < hi; ++idx) {
            SampleRng rng(sub_seed(opts.seed, opts.first_sample_index + static_cast<std::uint64_t>(idx)));
            state = v0;
            int sign = 1;
            for (const CompiledGate& g : gates) {
                const int a = pick_from_cdf(g.cumulative, rng.uniform());
                sign *= g.signs[static_cast<std::size_t>(a)];
                next.noalias() = g.term_superops[static_cast<std::size_t>(a)] * state;
                state.swap(next);
            }
            double value;
            if (opts.shots_per_sample == 0) {
                const Complex ev = w.dot(state);
                local_imag = std::max(local_imag, std::abs(ev.imag()));
                value = ev.real();
            } else {
                value = shot_sampler.sample(devectorize(state, d), opts.shots_per_sample, rng);
            }
            values[static_cast<std::size_t>(idx)] = gamma * sign * value;
        }
        max_imag[static_cast<std::size_t>(worker)] = local_imag;
    };

    if (workers == 1) {
        run_range(0, opts.n_samples, 0);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (opts.n_samples + workers - 1) / workers;
        for (int wk = 0; wk < workers; ++wk) {
            const long lo = wk * chunk;
            const long hi = std::min<long>(opts.n_samples, lo + chunk);
            if (lo < hi) {
                pool.emplace_back(run_range, lo, hi, wk);
            }
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    const double worst_imag = *std::max_element(max_imag.begin(), max_imag.end());
    if (worst_imag > default_tolerances().imag_residue) {
        std::ostringstream os;
        os << "monte_carlo_estimate: imaginary residue " << worst_imag;
        throw NumericalConsistencyError(os.str());
    }

    const BatchStatistics stats = batch_statistics(values, opts.n_batches);
    EstimatorResult result;
    result.estimate = stats.mean;
    result.std_error = stats.std_error;
    result.gamma = gamma;
    result.n_samples = opts.n_samples;
    result.shots_per_sample = opts.shots_per_sample;
    result.batch_means = stats.batch_means;
    return result;
}

EstimatorResult merge_results(const EstimatorResult& a, const EstimatorResult& b) {
    if (a.shots_per_sample != b.shots_per_sample) {
        throw ValidationError("merge_results: incompatible shot configurations");
    }
    EstimatorResult out;
    out.n_samples = a.n_samples + b.n_samples;
    out.estimate = (a.estimate * a.n_samples + b.estimate * b.n_samples) / out.n_samples;
    out.gamma = a.gamma;
    out.shots_per_sample = a.shots_per_sample;
    out.batch_means = a.batch_means;
    out.batch_means.insert(out.batch_means.end(), b.batch_means.begin(), b.batch_means.end());
    const int nb = static_cast<int>(out.batch_means.size());
    if (nb > 1) {
        const double mean =
            std::accumulate(out.batch_means.begin(), out.batch_means.end(), 0.0) / nb;
        double ss = 0.0;
        for (double bm : out.batch_means) {
            ss += (bm - mean) * (bm - mean);
        }
        out.std_error = std::sqrt(ss / (nb - 1)) / std::sqrt(static_cast<double>(nb));
    }
    return out;
}

double zne_extrapolate(const std::vector<std::pair<double, double>>& points,
                       const ExtrapolationMethod& method) {
    if (points.size() < 2) {
        throw ValidationError("zne_extrapolate: need at least two points");
    }
    std::vector<double> lambdas;
    lambdas.reserve(points.size());
    for (const auto& [lam, value] : points) {
        lambdas.push_back(lam);
    }
    std::vector<double> weights;
    if (method.kind == ExtrapolationMethod::Kind::Richardson) {
        weights = richardson_coefficients(lambdas);
    } else {
        if (method.degree >= static_cast<int>(points.size())) {
            throw ValidationError("zne_extrapolate: polynomial degree must be < number of points");
        }
        weights = polyfit_coefficients(lambdas, method.degree);
    }
    double estimate = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        estimate += weights[i] * points[i].second;
    }
    return estimate;
}

std::vector<QuasiProbRep> build_per_reps(const Circuit& c, const NoiseModel& model, double lambda) {
    if (model.kind != NoiseKind::Depolarizing || model.num_qubits != 1) {
        throw ValidationError(
            "build_per_reps: closed form available for single-qubit depolarizing only; use the "
            "canonical-scaling overload otherwise");
    }
    std::vector<QuasiProbRep> reps;
    reps.reserve(c.gates.size());
    for (const GateSpec& g : c.gates) {
        reps.push_back(depolarizing_per_rep(unitary_to_superop(g.unitary), g.label, model.p, lambda));
    }
    return reps;
}

std::vector<QuasiProbRep> scale_reps_canonically(const std::vector<QuasiProbRep>& base_reps,
                                                 double lambda) {
    std::vector<QuasiProbRep> reps;
    reps.reserve(base_reps.size());
    for (const QuasiProbRep& base : base_reps) {
        reps.push_back(canonical_scaled_rep(canonical_split(base), lambda));
    }
    return reps;
}

namespace {

void check_per_lambda(double lambda, double lambda_max, bool allow_amplification) {
    if (lambda < 0.0) {
        throw ValidationError("per_estimate: lambda must be nonnegative");
    }
    if (!allow_amplification && lambda > 1.0) {
        std::ostringstream os;
        os << "per_estimate: lambda = " << lambda
           << " is in the amplification regime (1, lambda_max]; pass allow_amplification";
        throw ValidationError(os.str());
    }
    if (lambda > lambda_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "per_estimate: lambda = " << lambda << " exceeds lambda_max = " << lambda_max;
        throw ValidationError(os.str());
    }
}

}  // namespace

EstimatorResult per_estimate(const Circuit& c, const NoiseModel& model, const Observable& obs,
                             const DensityMatrix& rho0, double lambda,
                             const MonteCarloOptions& opts, bool allow_amplification) {
    const double lambda_max = model.p > 0.0 ? 1.0 / model.p : std::numeric_limits<double>::infinity();
    check_per_lambda(lambda, lambda_max, allow_amplification);
    return monte_carlo_estimate(c, build_per_reps(c, model, lambda), obs, rho0, opts);
}

EstimatorResult per_estimate(const Circuit& c, const std::vector<QuasiProbRep>& base_reps,
                             const Observable& obs, const DensityMatrix& rho0, double lambda,
                             const MonteCarloOptions& opts, bool allow_amplification) {
    double lambda_max = std::numeric_limits<double>::infinity();
    for (const QuasiProbRep& rep : base_reps) {
        const double gamma = one_norm(rep);
        if (gamma > 1.0) {
            lambda_max = std::min(lambda_max, (gamma + 1.0) / (gamma - 1.0));
        }
    }
    check_per_lambda(lambda, lambda_max, allow_amplification);
    return monte_carlo_estimate(c, scale_reps_canonically(base_reps, lambda), obs, rho0, opts);
}

EstimatorResult virtual_zne(const Circuit& c, const NoiseModel& model, const Observable& obs,
                            const DensityMatrix& rho0, const std::vector<double>& scale_factors,
                            const MonteCarloOptions& opts, const ExtrapolationMethod& method) {
    if (scale_factors.empty()) {
        throw ValidationError("virtual_zne: empty scale factor set");
    }
    for (std::size_t i = 0; i < scale_factors.size(); ++i) {
        for (std::size_t j = i + 1; j < scale_factors.size(); ++j) {
            if (scale_factors[i] == scale_factors[j]) {
                throw ValidationError("virtual_zne: duplicate scale factors");
            }
        }
    }
    if (scale_factors.size() == 1) {
        return per_estimate(c, model, obs, rho0, scale_factors.front(), opts, true);
    }
    // One PER run per scale factor, each on its own stream family and with
    // the full per-factor budget.
    std::vector<EstimatorResult> legs;
    std::vector<std::pair<double, double>> points;
    for (std::size_t j = 0; j < scale_factors.size(); ++j) {
        MonteCarloOptions leg_opts = opts;
        leg_opts.seed = sub_seed(opts.seed, 1000 + j);
        legs.push_back(per_estimate(c, model, obs, rho0, scale_factors[j], leg_opts, true));
        points.emplace_back(scale_factors[j], legs.back().estimate);
    }
    std::vector<double> weights;
    if (method.kind == ExtrapolationMethod::Kind::Richardson) {
        weights = richardson_coefficients(scale_factors);
    } else {
        weights = polyfit_coefficients(scale_factors, method.degree);
    }

    EstimatorResult out;
    out.shots_per_sample = opts.shots_per_sample;
    double var = 0.0;
    bool combinable_batches = true;
    for (const EstimatorResult& leg : legs) {
        combinable_batches = combinable_batches && leg.batch_means.size() == legs.front().batch_means.size();
    }
    if (combinable_batches) {
        out.batch_means.assign(legs.front().batch_means.size(), 0.0);
    }
    out.gamma = 0.0;
    for (std::size_t j = 0; j < legs.size(); ++j) {
        out.estimate += weights[j] * legs[j].estimate;
        var += weights[j] * weights[j] * legs[j].std_error * legs[j].std_error;
        out.n_samples += legs[j].n_samples;
        // Effective one-norm of the two-level combination.
        out.gamma += std::abs(weights[j]) * legs[j].gamma;
        if (combinable_batches) {
            for (std::size_t b = 0; b < out.batch_means.size(); ++b) {
                out.batch_means[b] += weights[j] * legs[j].batch_means[b];
            }
        }
    }
    out.std_error = std::sqrt(var);
    return out;
}

}  // namespace nepec
