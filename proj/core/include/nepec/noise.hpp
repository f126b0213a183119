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

#ifndef NEPEC_NOISE_HPP
#define NEPEC_NOISE_HPP

#include <string>

#include "nepec/superop.hpp"

namespace nepec {

enum class NoiseKind {
    Depolarizing,
    AmplitudeDamping,
};

/// Scaling convention for amplitude damping. OnP multiplies the damping
/// probability directly (p -> lambda*p). OnPPrime scales the variable
/// p' = 1 - sqrt(1-p), in which the channel matrix is quadratic, so that a
/// three-point extrapolation in lambda can be exact.
enum class AmpDampScaling {
    OnP,
    OnPPrime,
};

/// Parametric one-parameter noise channel family with a scale-by-lambda
/// action: lambda = 0 is the identity, lambda = 1 the base channel.
struct NoiseModel {
    NoiseKind kind = NoiseKind::Depolarizing;
    double p = 0.0;
    int num_qubits = 1;
    AmpDampScaling amp_damp_scaling = AmpDampScaling::OnP;

    /// Largest admissible scale factor. Depolarizing saturates when the
    /// output is completely mixed, at (1 - 4^-k)/p; amplitude damping at
    /// 1/p (or 1/p' in the p' convention).
    double lambda_max() const;

    void validate() const;
};

/// An implementable operation: a gate with a noise binding, at a known
/// scale factor.
struct NoisyOperation {
    std::string label;
    Superoperator superop;
    double lambda = 1.0;
    std::string description;
};

/// (1-p) Id + p * uniform mixture of the 4^k - 1 non-identity Pauli-string
/// conjugations (lexicographic order over {I,X,Y,Z}^k, identity excluded).
Superoperator depolarizing_superop(double p, int num_qubits);

/// Single-qubit amplitude damping with Kraus pair
/// {diag(1, sqrt(1-p)), sqrt(p)|0><1|}. Non-unital for p > 0; p = 1 resets
/// every state to |0><0|.
Superoperator amplitude_damping_superop(double p);

/// Noise channel of `model` scaled by `lambda`; lambda = 0 gives the
/// identity, lambda = 1 the base channel, values above lambda_max() throw
/// with a message naming the physical bound.
Superoperator scaled_noise(const NoiseModel& model, double lambda);

/// Noisy implementation of a gate: scaled noise composed after the ideal
/// unitary-induced superoperator.
NoisyOperation noisy_gate(const Superoperator& gate, const std::string& label,
                          const NoiseModel& model, double lambda);

/// Digital noise amplification at odd integer scale factors: the base
/// noisy gate followed by (lam-1)/2 rounds of noisy inverse and noisy gate,
/// every factor carrying base noise.
Superoperator fold_gate(const NoisyOperation& base_gate, int lam,
                        const NoisyOperation& base_dagger);

}  // namespace nepec

#endif
