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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace {

using namespace nepec;
using namespace nepec::experiments;

// Exit codes: 0 success, 1 config error, 2 infeasible decomposition,
// 3 numerical-consistency failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    std::optional<int> shots;
    std::optional<int> batches;
    std::optional<int> workers;
    std::optional<int> rb_depth;
    std::optional<double> noise_p;
    std::optional<double> assumed_p;
    std::vector<double> scale_factors;
    std::vector<double> lambda_grid;
    std::vector<double> x_grid;
    std::string out_path;
    bool emit_batches = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file (flags override it)");
    cmd->add_option("--seed", flags.seed, "base RNG seed (fallback: NEPEC_SEED, then 1)");
    cmd->add_option("--samples", flags.samples, "Monte Carlo samples per estimate");
    cmd->add_option("--shots", flags.shots, "shots per sampled circuit (0 = exact)");
    cmd->add_option("--batches", flags.batches, "number of statistics batches");
    cmd->add_option("--workers", flags.workers, "parallel sampling workers");
    cmd->add_option("--rb-depth", flags.rb_depth, "benchmarking circuit depth");
    cmd->add_option("--p", flags.noise_p, "noise model base probability");
    cmd->add_option("--assumed-p", flags.assumed_p, "noise level assumed by the PEC coefficients");
    cmd->add_option("--scale-factors", flags.scale_factors, "extrapolation scale factors");
    cmd->add_option("--lambdas", flags.lambda_grid, "scale-factor grid");
    cmd->add_option("--grid", flags.x_grid, "swept x-axis grid");
    cmd->add_option("--out", flags.out_path, "output CSV path (default: stdout)");
    cmd->add_flag("--emit-batches", flags.emit_batches, "also emit one row per batch mean");
}

ExperimentConfig resolve_config(const std::string& experiment, const CommonFlags& flags) {
    ExperimentConfig cfg = default_config(experiment);
    bool config_has_seed = false;
    if (!flags.config_path.empty()) {
        const nlohmann::json j = load_json_file(flags.config_path);
        cfg = config_from_json(experiment, j);
        config_has_seed = j.contains("seed");
    }
    // Precedence: flag > config file > NEPEC_SEED > default.
    if (const char* env = std::getenv("NEPEC_SEED");
        env != nullptr && !flags.seed && !config_has_seed) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.samples) cfg.budget.samples = *flags.samples;
    if (flags.shots) cfg.budget.shots = *flags.shots;
    if (flags.batches) cfg.budget.batches = *flags.batches;
    if (flags.workers) cfg.workers = *flags.workers;
    if (flags.rb_depth) cfg.rb_depth = *flags.rb_depth;
    if (flags.noise_p) cfg.noise.p = *flags.noise_p;
    if (flags.assumed_p) cfg.assumed_p = *flags.assumed_p;
    if (!flags.scale_factors.empty()) cfg.scale_factors = flags.scale_factors;
    if (!flags.lambda_grid.empty()) cfg.lambda_grid = flags.lambda_grid;
    if (!flags.x_grid.empty()) cfg.x_grid = flags.x_grid;
    if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
    if (flags.emit_batches) cfg.emit_batches = true;
    cfg.validate();
    return cfg;
}

void emit_table(const ResultTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        write_csv(table, std::cout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file: " + out_path);
    }
    write_csv(table, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nepec: quasi-probability error mitigation experiments"};
    app.require_subcommand(1);

    CommonFlags fig2_flags, fig3a_flags, fig3b_flags, ampdamp_flags, nogo_flags;
    add_common_flags(
        app.add_subcommand("fig2", "noise-characterization-error sweep: unmitigated vs "
                                   "cancellation vs noise-agnostic gate extrapolation"),
        fig2_flags);
    add_common_flags(app.add_subcommand("fig3a", "probabilistic error reduction over a virtual "
                                                 "scale-factor grid"),
                     fig3a_flags);
    add_common_flags(app.add_subcommand("fig3b", "cancellation vs reduction vs virtual "
                                                 "zero-noise extrapolation at fixed budget"),
                     fig3b_flags);
    add_common_flags(app.add_subcommand("ampdamp", "amplitude-damping representations: "
                                                   "closed form, search, LP feasibility"),
                     ampdamp_flags);
    add_common_flags(app.add_subcommand("nogo", "convex-decomposability test and extended-basis "
                                                "optimal norms"),
                     nogo_flags);

    auto* decompose = app.add_subcommand("decompose", "L1-optimal representation of a target "
                                                      "superoperator over basis files");
    std::string target_path, decompose_out;
    std::vector<std::string> basis_paths;
    decompose->add_option("--target", target_path, "target superoperator JSON")->required();
    decompose->add_option("--basis", basis_paths, "basis superoperator JSON files")->required();
    decompose->add_option("--out", decompose_out, "output representation JSON")->required();

    auto* rb_gen = app.add_subcommand("rb-gen", "generate a randomized-benchmarking circuit");
    int rb_depth = 14;
    std::uint64_t rb_seed = 1;
    std::string rb_out;
    rb_gen->add_option("--rb-depth", rb_depth, "circuit depth (gate count)");
    rb_gen->add_option("--seed", rb_seed, "generation seed");
    rb_gen->add_option("--out", rb_out, "output circuit JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("fig2")) {
            const ExperimentConfig cfg = resolve_config("fig2", fig2_flags);
            emit_table(run_fig2(cfg), cfg.out_path);
        } else if (app.got_subcommand("fig3a")) {
            const ExperimentConfig cfg = resolve_config("fig3a", fig3a_flags);
            emit_table(run_fig3a(cfg), cfg.out_path);
        } else if (app.got_subcommand("fig3b")) {
            const ExperimentConfig cfg = resolve_config("fig3b", fig3b_flags);
            emit_table(run_fig3b(cfg), cfg.out_path);
        } else if (app.got_subcommand("ampdamp")) {
            const ExperimentConfig cfg = resolve_config("ampdamp", ampdamp_flags);
            emit_table(run_ampdamp(cfg), cfg.out_path);
        } else if (app.got_subcommand("nogo")) {
            const ExperimentConfig cfg = resolve_config("nogo", nogo_flags);
            emit_table(run_nogo(cfg), cfg.out_path);
        } else if (app.got_subcommand("decompose")) {
            run_decompose(target_path, basis_paths, decompose_out);
        } else if (app.got_subcommand("rb-gen")) {
            if (const char* env = std::getenv("NEPEC_SEED");
                env != nullptr && rb_gen->count("--seed") == 0) {
                rb_seed = std::strtoull(env, nullptr, 10);
            }
            save_json_file(rb_out, circuit_to_json(rb_circuit(rb_depth, rb_seed)));
        }
    } catch (const InfeasibleRepresentationError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NumericalConsistencyError& e) {
        std::cerr << "numerical-consistency failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
