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

#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace nepec::experiments {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CMatrix hadamard() {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

/// {noise o (P o gate)} for the four single-qubit Paulis.
std::vector<NoisyOperation> pauli_twisted_ops(const Superoperator& gate,
                                              const Superoperator& noise, double lambda_tag,
                                              const std::string& stem) {
    std::vector<NoisyOperation> ops;
    const char* names[4] = {"", "X*", "Y*", "Z*"};
    const CMatrix* paulis[4] = {&pauli_i(), &pauli_x(), &pauli_y(), &pauli_z()};
    for (int i = 0; i < 4; ++i) {
        NoisyOperation op;
        op.label = std::string(names[i]) + stem + "@lambda=" + fmt(lambda_tag);
        op.lambda = lambda_tag;
        op.superop = compose(
            noise, Superoperator(2, kron(paulis[i]->conjugate(), *paulis[i]) * gate.matrix()));
        ops.push_back(std::move(op));
    }
    return ops;
}

void push_estimate(ResultTable& table, double x, const EstimatorResult& r,
                   const std::string& technique, std::uint64_t seed, bool emit_batches) {
    ResultRow row;
    row.x = x;
    row.estimate = r.estimate;
    row.std_error = r.std_error;
    row.gamma = r.gamma;
    row.technique = technique;
    row.n_samples = r.n_samples;
    row.shots = r.shots_per_sample == 0 ? "exact" : std::to_string(r.shots_per_sample);
    row.seed = seed;
    table.rows.push_back(row);
    if (emit_batches) {
        for (double bm : r.batch_means) {
            ResultRow b = row;
            b.estimate = bm;
            b.std_error = 0.0;
            b.technique = technique + "_batch";
            table.rows.push_back(b);
        }
    }
}

std::vector<double> linspace_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) {
        grid.push_back(lo + (hi - lo) * i / (points - 1));
    }
    return grid;
}

}  // namespace

void ExperimentConfig::validate() const {
    noise.validate();
    if (rb_depth < 1) {
        throw ValidationError("config: rb_depth must be >= 1");
    }
    if (budget.samples < 1 || budget.batches < 1 || budget.samples < budget.batches) {
        throw ValidationError("config: need samples >= batches >= 1");
    }
    if (budget.shots < 0) {
        throw ValidationError("config: shots must be >= 0 (0 = exact)");
    }
    if (workers < 1 || workers > 256) {
        throw ValidationError("config: workers must be in [1, 256]");
    }
    if (!(assumed_p >= 0.0 && assumed_p < 0.75)) {
        throw ValidationError("config: assumed_p must be in [0, 0.75)");
    }
    for (double x : x_grid) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw ValidationError("config: grid values must be probabilities");
        }
    }
    for (double lam : lambda_grid) {
        if (lam < 0.0) {
            throw ValidationError("config: lambda grid values must be nonnegative");
        }
    }
}

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    if (experiment == "fig2") {
        cfg.noise = {NoiseKind::Depolarizing, 0.01, 1};
        cfg.rb_depth = 14;
        cfg.assumed_p = 0.01;
        cfg.scale_factors = {1.0, 51.0};
        cfg.x_grid = linspace_grid(0.0, 0.02, 11);
        cfg.budget = {5000, 0, 25};
    } else if (experiment == "fig3a" || experiment == "fig3b") {
        cfg.noise = {NoiseKind::Depolarizing, 0.015, 1};
        cfg.rb_depth = 46;
        cfg.lambda_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
        cfg.scale_factors = {0.2, 1.0};
        cfg.budget = {50000, 1, 25};
    } else if (experiment == "ampdamp") {
        cfg.noise = {NoiseKind::AmplitudeDamping, 0.19, 1};
        cfg.x_grid = {0.05, 0.1, 0.19, 0.3};
        cfg.lambda_grid = {1.0, 2.0};
        cfg.budget = {1, 0, 1};
    } else if (experiment == "nogo") {
        cfg.noise = {NoiseKind::Depolarizing, 0.01, 1};
        cfg.lambda_grid = {};  // defaults to {1.5, 2, 5, lambda_max} at run time
        cfg.budget = {1, 0, 1};
    } else {
        throw ValidationError("unknown experiment '" + experiment + "'");
    }
    return cfg;
}

ExperimentConfig config_from_json(const std::string& experiment, const json& j) {
    ExperimentConfig cfg = default_config(experiment);
    if (!j.is_object()) {
        throw ValidationError("config: top level must be an object");
    }
    static const std::set<std::string> known{
        "experiment",    "noise",       "rb_depth", "circuit_seed", "circuit_path",
        "assumed_p",     "scale_factors", "lambda_grid", "x_grid",  "budget",
        "seed",          "workers",     "out",      "emit_batches"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw ValidationError("config: unknown key '" + item.key() + "'");
        }
    }
    if (j.contains("experiment") && j.at("experiment").get<std::string>() != experiment) {
        throw ValidationError("config: experiment name does not match the subcommand");
    }
    if (j.contains("noise")) cfg.noise = noise_model_from_json(j.at("noise"));
    if (j.contains("rb_depth")) cfg.rb_depth = j.at("rb_depth").get<int>();
    if (j.contains("circuit_seed")) cfg.circuit_seed = j.at("circuit_seed").get<std::uint64_t>();
    if (j.contains("circuit_path")) cfg.circuit_path = j.at("circuit_path").get<std::string>();
    if (j.contains("assumed_p")) cfg.assumed_p = j.at("assumed_p").get<double>();
    if (j.contains("scale_factors"))
        cfg.scale_factors = j.at("scale_factors").get<std::vector<double>>();
    if (j.contains("lambda_grid")) cfg.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
    if (j.contains("x_grid")) cfg.x_grid = j.at("x_grid").get<std::vector<double>>();
    if (j.contains("budget")) {
        const json& b = j.at("budget");
        if (b.contains("samples")) cfg.budget.samples = b.at("samples").get<long>();
        if (b.contains("shots")) cfg.budget.shots = b.at("shots").get<int>();
        if (b.contains("batches")) cfg.budget.batches = b.at("batches").get<int>();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    if (j.contains("emit_batches")) cfg.emit_batches = j.at("emit_batches").get<bool>();
    cfg.validate();
    return cfg;
}

void write_csv(const ResultTable& table, std::ostream& out) {
    out << "x,estimate,std_error,gamma,technique,n_samples,shots,seed\n";
    for (const ResultRow& r : table.rows) {
        out << fmt(r.x) << ',' << fmt(r.estimate) << ',' << fmt(r.std_error) << ',' << fmt(r.gamma)
            << ',' << r.technique << ',' << r.n_samples << ',' << r.shots << ',' << r.seed << '\n';
    }
}

std::string csv_string(const ResultTable& table) {
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

Circuit experiment_circuit(const ExperimentConfig& cfg) {
    if (cfg.circuit_path) {
        return circuit_from_json(load_json_file(*cfg.circuit_path));
    }
    return rb_circuit(cfg.rb_depth, cfg.circuit_seed);
}

std::vector<QuasiProbRep> miscalibrated_pec_reps(const Circuit& c, double assumed_p,
                                                 double actual_p) {
    std::vector<QuasiProbRep> reps;
    for (const GateSpec& g : c.gates) {
        const Superoperator gate = unitary_to_superop(g.unitary);
        // Coefficients from the assumed level, operations from the actual.
        QuasiProbRep rep = depolarizing_per_rep(gate, g.label, assumed_p, 0.0);
        const std::vector<NoisyOperation> actual_ops =
            pauli_twisted_ops(gate, depolarizing_superop(actual_p, 1), 1.0, g.label);
        for (std::size_t i = 0; i < rep.terms.size(); ++i) {
            rep.terms[i].op = actual_ops[i];
        }
        reps.push_back(std::move(rep));
    }
    return reps;
}

std::vector<QuasiProbRep> folding_extrapolation_reps(const Circuit& c, const NoiseModel& actual,
                                                     const std::vector<double>& scale_factors) {
    const std::vector<double> coeffs = richardson_coefficients(scale_factors);
    std::vector<QuasiProbRep> reps;
    for (const GateSpec& g : c.gates) {
        reps.push_back(gate_extrapolation_rep(unitary_to_superop(g.unitary), g.label, actual,
                                              scale_factors, coeffs, ScalingMode::Folding));
    }
    return reps;
}

Fig2Point fig2_point(const Circuit& c, double actual_p, double assumed_p,
                     const std::vector<double>& scale_factors, const Budget& budget,
                     std::uint64_t seed, int workers) {
    const NoiseModel actual{NoiseKind::Depolarizing, actual_p, 1};
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);

    Fig2Point point;
    const std::vector<double> base(c.gates.size(), 1.0);
    point.unmitigated = expectation_raw(
        obs.matrix(), apply_matrix(noisy_circuit_superop(c, actual, base), rho0.matrix()));

    MonteCarloOptions opts;
    opts.n_samples = budget.samples;
    opts.shots_per_sample = budget.shots;
    opts.n_batches = budget.batches;
    opts.seed = seed;
    opts.workers = workers;
    // Both techniques run on the same stream family (paired comparison).
    point.pec =
        monte_carlo_estimate(c, miscalibrated_pec_reps(c, assumed_p, actual_p), obs, rho0, opts);
    point.nepec = monte_carlo_estimate(c, folding_extrapolation_reps(c, actual, scale_factors),
                                       obs, rho0, opts);
    return point;
}

ResultTable run_fig2(const ExperimentConfig& cfg) {
    cfg.validate();
    const Circuit c = experiment_circuit(cfg);
    ResultTable table;
    for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) {
        const double actual_p = cfg.x_grid[i];
        const std::uint64_t point_seed = sub_seed(cfg.seed, i);
        const Fig2Point point = fig2_point(c, actual_p, cfg.assumed_p, cfg.scale_factors,
                                           cfg.budget, point_seed, cfg.workers);
        ResultRow unmit;
        unmit.x = actual_p;
        unmit.estimate = point.unmitigated;
        unmit.technique = "unmitigated";
        unmit.seed = point_seed;
        table.rows.push_back(unmit);
        push_estimate(table, actual_p, point.pec, "pec", point_seed, cfg.emit_batches);
        push_estimate(table, actual_p, point.nepec, "nepec", point_seed, cfg.emit_batches);
    }
    return table;
}

ResultTable run_fig3a(const ExperimentConfig& cfg) {
    cfg.validate();
    const Circuit c = experiment_circuit(cfg);
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
    MonteCarloOptions opts;
    opts.n_samples = cfg.budget.samples;
    opts.shots_per_sample = cfg.budget.shots;
    opts.n_batches = cfg.budget.batches;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;

    ResultTable table;
    for (double lam : cfg.lambda_grid) {
        const EstimatorResult r = per_estimate(c, cfg.noise, obs, rho0, lam, opts);
        push_estimate(table, lam, r, "per", cfg.seed, cfg.emit_batches);
    }
    return table;
}

ResultTable run_fig3b(const ExperimentConfig& cfg) {
    cfg.validate();
    const Circuit c = experiment_circuit(cfg);
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
    MonteCarloOptions opts;
    opts.n_samples = cfg.budget.samples;
    opts.shots_per_sample = cfg.budget.shots;
    opts.n_batches = cfg.budget.batches;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;

    const double per_lambda = cfg.scale_factors.front();

    ResultTable table;
    push_estimate(table, 1.0, per_estimate(c, cfg.noise, obs, rho0, 1.0, opts), "unmitigated",
                  cfg.seed, cfg.emit_batches);
    push_estimate(table, 0.0, per_estimate(c, cfg.noise, obs, rho0, 0.0, opts), "pec", cfg.seed,
                  cfg.emit_batches);
    push_estimate(table, per_lambda, per_estimate(c, cfg.noise, obs, rho0, per_lambda, opts),
                  "per", cfg.seed, cfg.emit_batches);
    push_estimate(table, 0.0,
                  virtual_zne(c, cfg.noise, obs, rho0, cfg.scale_factors, opts,
                              ExtrapolationMethod::richardson()),
                  "virtual_zne", cfg.seed, cfg.emit_batches);
    return table;
}

ResultTable run_ampdamp(const ExperimentConfig& cfg) {
    cfg.validate();
    const Superoperator target = unitary_to_superop(hadamard());
    ResultTable table;
    auto push = [&](double x, double value, double gamma, const std::string& technique) {
        ResultRow row;
        row.x = x;
        row.estimate = value;
        row.gamma = gamma;
        row.technique = technique;
        row.seed = cfg.seed;
        table.rows.push_back(row);
    };

    for (double p : cfg.x_grid) {
        const AmpDampExtrapolation ext = ampdamp_exact_extrapolation(p);
        push(p, ext.gamma, ext.gamma, "three_point_closed_form");

        const ScaleFactorSearchResult search =
            optimize_extrapolation_scale_factors(1.0 / ext.p_prime);
        push(p, search.gamma, search.gamma, "three_point_search");

        const QuasiProbRep rep = ampdamp_extrapolation_rep(target, "h", p);
        push(p, (reconstruct(rep).matrix() - target.matrix()).cwiseAbs().maxCoeff(), one_norm(rep),
             "three_point_residual");

        const std::vector<NoisyOperation> unscaled =
            pauli_twisted_ops(target, amplitude_damping_superop(p), 1.0, "h");
        try {
            const QuasiProbRep lp = optimal_representation(target, unscaled);
            push(p, 1.0, one_norm(lp), "lp_unscaled_feasible");
        } catch (const InfeasibleRepresentationError&) {
            push(p, 0.0, 0.0, "lp_unscaled_feasible");
        }

        std::vector<NoisyOperation> extended;
        for (double lam : cfg.lambda_grid) {
            const double scaled_p = std::min(lam * p, 1.0);
            for (NoisyOperation& op :
                 pauli_twisted_ops(target, amplitude_damping_superop(scaled_p), lam, "h")) {
                extended.push_back(std::move(op));
            }
        }
        const QuasiProbRep lp_scaled = optimal_representation(target, extended);
        push(p, lp_scaled.residual, one_norm(lp_scaled), "lp_scaled");

        // Observational: with a reset operation already in the basis,
        // scaling is not expected to reduce the cost further.
        std::vector<NoisyOperation> with_reset = unscaled;
        NoisyOperation reset;
        reset.label = "reset";
        reset.lambda = 1.0;
        reset.superop = amplitude_damping_superop(1.0);
        with_reset.push_back(reset);
        const QuasiProbRep lp_reset = optimal_representation(target, with_reset);
        push(p, lp_reset.residual, one_norm(lp_reset), "lp_with_reset");

        std::vector<NoisyOperation> reset_and_scaled = extended;
        reset_and_scaled.push_back(reset);
        const QuasiProbRep lp_both = optimal_representation(target, reset_and_scaled);
        push(p, lp_both.residual, one_norm(lp_both), "lp_with_reset_scaled");
    }
    return table;
}

ResultTable run_nogo(const ExperimentConfig& cfg) {
    cfg.validate();
    const double p = cfg.noise.p;
    const double eps = 4.0 * p / 3.0;
    const Superoperator target = unitary_to_superop(hadamard());
    const std::vector<NoisyOperation> base =
        pauli_twisted_ops(target, depolarizing_superop(p, 1), 1.0, "h");

    std::vector<double> grid = cfg.lambda_grid;
    if (grid.empty()) {
        grid = {1.5, 2.0, 5.0, NoiseModel{NoiseKind::Depolarizing, p, 1}.lambda_max()};
    }

    ResultTable table;
    auto push = [&](double x, double value, double gamma, const std::string& technique) {
        ResultRow row;
        row.x = x;
        row.estimate = value;
        row.gamma = gamma;
        row.technique = technique;
        row.seed = cfg.seed;
        table.rows.push_back(row);
    };

    std::vector<NoisyOperation> extended = base;
    for (double lam : grid) {
        const Superoperator scaled =
            compose(depolarizing_superop(std::min(lam * p, 1.0), 1), target);
        const ConvexityTestResult r = convexity_test(scaled, base);
        push(lam, r.feasible ? 1.0 : 0.0, 1.0, "convexity_feasible");
        push(lam, r.residual, 1.0, "convexity_residual");
        if (r.feasible) {
            // Closed-form mixture weights: lambda p = p + (1 - 4p/3) q.
            const double q = p * (lam - 1.0) / (1.0 - eps);
            double err = std::abs(r.mu[0] - (1.0 - q));
            for (int i : {1, 2, 3}) {
                err = std::max(err, std::abs(r.mu[static_cast<std::size_t>(i)] - q / 3.0));
            }
            push(lam, err, 1.0, "convexity_mu_error");
        }
        for (NoisyOperation& op : pauli_twisted_ops(
                 target, depolarizing_superop(std::min(lam * p, 1.0), 1), lam, "h")) {
            extended.push_back(std::move(op));
        }
    }
    const double gamma_base = one_norm(optimal_representation(target, base));
    const double gamma_ext = one_norm(optimal_representation(target, extended));
    push(p, gamma_base, gamma_base, "gamma_base");
    push(p, gamma_ext, gamma_ext, "gamma_extended");
    push(p, std::abs(gamma_base - gamma_ext), 1.0, "gamma_gap");

    // Amplitude damping contrast: scaling genuinely extends the set.
    const double ad_p = 0.1;
    const std::vector<NoisyOperation> ad_base =
        pauli_twisted_ops(target, amplitude_damping_superop(ad_p), 1.0, "h");
    const Superoperator ad_scaled = compose(amplitude_damping_superop(2.0 * ad_p), target);
    const ConvexityTestResult ad = convexity_test(ad_scaled, ad_base);
    push(2.0, ad.feasible ? 1.0 : 0.0, 1.0, "ampdamp_convexity_feasible");
    push(2.0, ad.residual, 1.0, "ampdamp_convexity_residual");
    return table;
}

void run_decompose(const std::string& target_path, const std::vector<std::string>& basis_paths,
                   const std::string& out_path) {
    if (basis_paths.empty()) {
        throw ValidationError("decompose: need at least one basis file");
    }
    const Superoperator target = superop_from_json(load_json_file(target_path));
    std::vector<NoisyOperation> basis;
    for (const std::string& path : basis_paths) {
        const json j = load_json_file(path);
        NoisyOperation op;
        op.label = path;
        op.lambda = j.contains("lambda") ? j.at("lambda").get<double>() : 1.0;
        op.superop = superop_from_json(j);
        basis.push_back(std::move(op));
    }
    const QuasiProbRep rep = optimal_representation(target, basis);
    save_json_file(out_path, rep_to_json(rep));
}

}  // namespace nepec::experiments
