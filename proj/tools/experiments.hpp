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

#ifndef NEPEC_EXPERIMENTS_HPP
#define NEPEC_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nepec/estimators.hpp"
#include "nepec/serialization.hpp"

namespace nepec::experiments {

struct Budget {
    long samples = 5000;
    int shots = 0;  // 0 = exact expectation per sampled circuit
    int batches = 25;
};

/// One experiment run. Defaults depend on the experiment; a JSON config
/// and command-line flags override them (flags win).
struct ExperimentConfig {
    std::string experiment;
    NoiseModel noise{NoiseKind::Depolarizing, 0.01, 1};
    int rb_depth = 14;
    std::uint64_t circuit_seed = 2026;
    std::optional<std::string> circuit_path;
    double assumed_p = 0.01;                  // noise level the PEC coefficients assume
    std::vector<double> scale_factors;        // gate-extrapolation / virtual scale factors
    std::vector<double> lambda_grid;          // PER grid or convexity-test grid
    std::vector<double> x_grid;               // swept x values (actual p, damping p)
    Budget budget;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_path;
    bool emit_batches = false;

    void validate() const;
};

ExperimentConfig default_config(const std::string& experiment);

/// Merge a JSON config into defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& experiment, const nlohmann::json& j);

struct ResultRow {
    double x = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double gamma = 1.0;
    std::string technique;
    long n_samples = 0;
    std::string shots = "exact";
    std::uint64_t seed = 0;
};

struct ResultTable {
    std::vector<ResultRow> rows;
};

/// Fixed header `x,estimate,std_error,gamma,technique,n_samples,shots,seed`;
/// floats with 12 significant digits. Byte-stable for a fixed config+seed.
void write_csv(const ResultTable& table, std::ostream& out);
std::string csv_string(const ResultTable& table);

/// PEC representations whose coefficients assume `assumed_p` while the
/// operations carry the hardware's actual noise level (the noise
/// characterization error scenario).
std::vector<QuasiProbRep> miscalibrated_pec_reps(const Circuit& c, double assumed_p,
                                                 double actual_p);

/// Noise-agnostic gate-extrapolation representations built by digital
/// folding at the given odd scale factors (Richardson coefficients).
std::vector<QuasiProbRep> folding_extrapolation_reps(const Circuit& c, const NoiseModel& actual,
                                                     const std::vector<double>& scale_factors);

struct Fig2Point {
    double unmitigated = 0.0;
    EstimatorResult pec;
    EstimatorResult nepec;
};

/// One x-grid point of the noise-characterization-error experiment: both
/// techniques sampled on the same stream family (paired seeds).
Fig2Point fig2_point(const Circuit& c, double actual_p, double assumed_p,
                     const std::vector<double>& scale_factors, const Budget& budget,
                     std::uint64_t seed, int workers);

ResultTable run_fig2(const ExperimentConfig& cfg);
ResultTable run_fig3a(const ExperimentConfig& cfg);
ResultTable run_fig3b(const ExperimentConfig& cfg);
ResultTable run_ampdamp(const ExperimentConfig& cfg);
ResultTable run_nogo(const ExperimentConfig& cfg);

/// L1-optimal decomposition of a target superoperator over basis files;
/// writes the representation JSON. Throws InfeasibleRepresentationError
/// when no exact representation exists.
void run_decompose(const std::string& target_path, const std::vector<std::string>& basis_paths,
                   const std::string& out_path);

/// The circuit an experiment config refers to (generated or loaded).
Circuit experiment_circuit(const ExperimentConfig& cfg);

}  // namespace nepec::experiments

#endif
