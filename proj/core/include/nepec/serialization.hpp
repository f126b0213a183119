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

#ifndef NEPEC_SERIALIZATION_HPP
#define NEPEC_SERIALIZATION_HPP

#include <string>

#include "nepec/third_party/json.hpp"

#include "nepec/circuits.hpp"
#include "nepec/noise.hpp"
#include "nepec/quasiprob.hpp"

namespace nepec {

// JSON formats. Complex matrices are stored row-major as [re, im] pairs:
//   circuit:       {"qubits": n, "gates": [{"label", "matrix", "targets"}]}
//   noise model:   {"kind": "depolarizing"|"amplitude_damping", "p", "qubits"}
//                  (optional "scaling": "p"|"p_prime" for amplitude damping)
//   superoperator: {"dim": d, "matrix": [[re, im] x d^4]}

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json noise_model_to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(const nlohmann::json& j);

nlohmann::json superop_to_json(const Superoperator& s);
Superoperator superop_from_json(const nlohmann::json& j);

/// Representation output: coefficients, one-norm, residual and sign split.
nlohmann::json rep_to_json(const QuasiProbRep& rep);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace nepec

#endif
