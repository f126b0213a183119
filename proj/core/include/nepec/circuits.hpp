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

#ifndef NEPEC_CIRCUITS_HPP
#define NEPEC_CIRCUITS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nepec/noise.hpp"
#include "nepec/rng.hpp"
#include "nepec/superop.hpp"

namespace nepec {

struct GateSpec {
    std::string label;
    CMatrix unitary;
    std::vector<int> targets;
};

/// Ordered list of gates; gate 0 is applied first.
struct Circuit {
    int num_qubits = 1;
    std::vector<GateSpec> gates;

    void validate(const Tolerances& tol = default_tolerances()) const;
};

/// Right-to-left composition of the embedded gate superoperators.
Superoperator ideal_superop(const Circuit& c, const Tolerances& tol = default_tolerances());

/// Product of noisy gates, gate i carrying its own scale factor.
Superoperator noisy_circuit_superop(const Circuit& c, const NoiseModel& model,
                                    const std::vector<double>& lambdas);

/// The 24 single-qubit Clifford unitaries (phase-canonical), enumerated by
/// closure of {H, S} products. The enumeration order is fixed and pinned
/// by tests.
const std::vector<CMatrix>& single_qubit_cliffords();

/// Index of the group inverse of element `index`.
int clifford_inverse_index(int index);

/// Table index of a unitary that matches a Clifford up to global phase;
/// -1 if none matches.
int clifford_index_of(const CMatrix& u);

/// Randomized-benchmarking circuit: depth-1 uniformly random Cliffords
/// closed by the inverse of their running product, so the ideal
/// composition is the identity. Exactly `depth` gates.
Circuit rb_circuit(int depth, std::uint64_t seed);

}  // namespace nepec

#endif
