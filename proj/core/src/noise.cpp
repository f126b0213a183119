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

#include "nepec/noise.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nepec {

namespace {

// Relative slack so lambda = lambda_max itself is admissible.
constexpr double kLambdaSlack = 1e-12;

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << what << ": probability " << p << " outside [0, 1]";
        throw ValidationError(os.str());
    }
}

}  // namespace

double NoiseModel::lambda_max() const {
    validate();
    if (p == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    switch (kind) {
        case NoiseKind::Depolarizing:
            return (1.0 - std::pow(4.0, -num_qubits)) / p;
        case NoiseKind::AmplitudeDamping:
            if (amp_damp_scaling == AmpDampScaling::OnPPrime) {
                return 1.0 / (1.0 - std::sqrt(1.0 - p));
            }
            return 1.0 / p;
    }
    throw ValidationError("NoiseModel: unknown kind");
}

void NoiseModel::validate() const {
    require_probability(p, "NoiseModel");
    if (num_qubits < 1 || num_qubits > 4) {
        throw ValidationError("NoiseModel: num_qubits must be in [1, 4]");
    }
    if (kind == NoiseKind::AmplitudeDamping && num_qubits != 1) {
        throw ValidationError("NoiseModel: amplitude damping is single-qubit only");
    }
}

Superoperator depolarizing_superop(double p, int num_qubits) {
    require_probability(p, "depolarizing_superop");
    if (num_qubits < 1 || num_qubits > 4) {
        throw ValidationError("depolarizing_superop: num_qubits must be in [1, 4]");
    }
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    const long n_strings = (Eigen::Index(1) << (2 * num_qubits)) - 1;  // 4^k - 1
    CMatrix m = (1.0 - p) * CMatrix::Identity(d * d, d * d);
    std::vector<int> digits(num_qubits, 0);
    for (long code = 1; code <= n_strings; ++code) {
        long c = code;
        for (int q = num_qubits - 1; q >= 0; --q) {
            digits[q] = static_cast<int>(c & 3);
            c >>= 2;
        }
        const CMatrix pauli = pauli_string(digits);
        m += (p / static_cast<double>(n_strings)) * kron(pauli.conjugate(), pauli);
    }
    return Superoperator(d, std::move(m));
}

Superoperator amplitude_damping_superop(double p) {
    require_probability(p, "amplitude_damping_superop");
    CMatrix k0 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    CMatrix k1 = CMatrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(p);
    return kraus_to_superop({k0, k1});
}

Superoperator scaled_noise(const NoiseModel& model, double lambda) {
    model.validate();
    if (lambda < 0.0) {
        throw ValidationError("scaled_noise: lambda must be nonnegative");
    }
    if (lambda == 0.0 || model.p == 0.0) {
        return Superoperator::identity(Eigen::Index(1) << model.num_qubits);
    }
    const double lmax = model.lambda_max();
    if (lambda > lmax * (1.0 + kLambdaSlack)) {
        std::ostringstream os;
        os << "scaled_noise: lambda = " << lambda << " exceeds the physical bound lambda_max = "
           << lmax;
        switch (model.kind) {
            case NoiseKind::Depolarizing:
                os << " = (1 - 4^-" << model.num_qubits << ")/p (completely mixing output)";
                break;
            case NoiseKind::AmplitudeDamping:
                os << (model.amp_damp_scaling == AmpDampScaling::OnPPrime
                           ? " = 1/p' (full damping)"
                           : " = 1/p (full damping)");
                break;
        }
        throw ValidationError(os.str());
    }
    switch (model.kind) {
        case NoiseKind::Depolarizing:
            // Linear family: scaling by lambda is exactly the base family
            // evaluated at lambda * p.
            return depolarizing_superop(std::min(lambda * model.p, 1.0), model.num_qubits);
        case NoiseKind::AmplitudeDamping: {
            double scaled_p;
            if (model.amp_damp_scaling == AmpDampScaling::OnPPrime) {
                const double p_prime = 1.0 - std::sqrt(1.0 - model.p);
                const double sp = std::min(lambda * p_prime, 1.0);
                scaled_p = 1.0 - (1.0 - sp) * (1.0 - sp);
            } else {
                scaled_p = std::min(lambda * model.p, 1.0);
            }
            return amplitude_damping_superop(scaled_p);
        }
    }
    throw ValidationError("scaled_noise: unknown noise kind");
}

NoisyOperation noisy_gate(const Superoperator& gate, const std::string& label,
                          const NoiseModel& model, double lambda) {
    const Eigen::Index d = Eigen::Index(1) << model.num_qubits;
    if (gate.dim() != d) {
        throw DimensionMismatchError("noisy_gate: gate dimension does not match noise model");
    }
    NoisyOperation op;
    op.label = label;
    op.lambda = lambda;
    op.superop = compose(scaled_noise(model, lambda), gate);
    std::ostringstream os;
    os << label << " with "
       << (model.kind == NoiseKind::Depolarizing ? "depolarizing" : "amplitude damping")
       << "(p=" << model.p << ") at lambda=" << lambda;
    op.description = os.str();
    return op;
}

Superoperator fold_gate(const NoisyOperation& base_gate, int lam,
                        const NoisyOperation& base_dagger) {
    if (lam < 1 || lam % 2 == 0) {
        std::ostringstream os;
        os << "fold_gate: scale factor must be an odd integer >= 1, got " << lam;
        throw ValidationError(os.str());
    }
    if (base_gate.superop.dim() != base_dagger.superop.dim()) {
        throw DimensionMismatchError("fold_gate: gate and inverse dimensions differ");
    }
    Superoperator result = base_gate.superop;
    const int rounds = (lam - 1) / 2;
    const Superoperator pair = compose(base_dagger.superop, base_gate.superop);
    for (int i = 0; i < rounds; ++i) {
        result = compose(result, pair);
    }
    return result;
}

}  // namespace nepec
