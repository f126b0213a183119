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

#include "nepec/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace nepec {

namespace {

// Phase canonicalization: rotate so the largest-magnitude entry is real
// positive. Clifford entries have magnitude 0, 1/sqrt(2) or 1, so the
// rounded key below is stable.
CMatrix phase_canonical(const CMatrix& u) {
    Eigen::Index r = 0, c = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            if (std::abs(u(i, j)) > best + 1e-9) {
                best = std::abs(u(i, j));
                r = i;
                c = j;
            }
        }
    }
    const Complex z = u(r, c);
    return u * (std::conj(z) / std::abs(z));
}

std::string matrix_key(const CMatrix& u) {
    std::string key;
    char buf[64];
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            double re = u(i, j).real();
            double im = u(i, j).imag();
            if (std::abs(re) < 5e-7) re = 0.0;
            if (std::abs(im) < 5e-7) im = 0.0;
            std::snprintf(buf, sizeof buf, "%.6f,%.6f;", re, im);
            key += buf;
        }
    }
    return key;
}

struct CliffordTable {
    std::vector<CMatrix> elements;
    std::vector<int> inverse;
    std::map<std::string, int> index_of;

    CliffordTable() {
        CMatrix h(2, 2);
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        CMatrix s(2, 2);
        s << 1, 0, 0, Complex(0, 1);

        elements.push_back(CMatrix::Identity(2, 2));
        index_of[matrix_key(elements[0])] = 0;
        for (std::size_t head = 0; head < elements.size(); ++head) {
            for (const CMatrix* gen : {&h, &s}) {
                const CMatrix next = phase_canonical(*gen * elements[head]);
                const std::string key = matrix_key(next);
                if (!index_of.count(key)) {
                    index_of[key] = static_cast<int>(elements.size());
                    elements.push_back(next);
                }
            }
        }
        inverse.resize(elements.size());
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const std::string key = matrix_key(phase_canonical(elements[i].adjoint()));
            inverse[i] = index_of.at(key);
        }
    }
};

const CliffordTable& clifford_table() {
    static const CliffordTable table;
    return table;
}

std::string clifford_label(int index) {
    std::ostringstream os;
    os << "cl" << index;
    return os.str();
}

}  // namespace

void Circuit::validate(const Tolerances& tol) const {
    if (num_qubits < 1 || num_qubits > 4) {
        throw ValidationError("Circuit: num_qubits must be in [1, 4]");
    }
    for (const GateSpec& g : gates) {
        const Eigen::Index d = Eigen::Index(1) << g.targets.size();
        if (g.unitary.rows() != d || g.unitary.cols() != d) {
            throw ValidationError("Circuit: gate '" + g.label + "' matrix does not match target count");
        }
        const double dev =
            (g.unitary.adjoint() * g.unitary - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (dev > tol.physical) {
            std::ostringstream os;
            os << "Circuit: gate '" << g.label << "' is not unitary (deviation " << dev << ")";
            throw ValidationError(os.str());
        }
        std::vector<bool> seen(num_qubits, false);
        for (int t : g.targets) {
            if (t < 0 || t >= num_qubits || seen[t]) {
                throw ValidationError("Circuit: gate '" + g.label + "' has invalid targets");
            }
            seen[t] = true;
        }
    }
}

Superoperator ideal_superop(const Circuit& c, const Tolerances& tol) {
    c.validate(tol);
    const Eigen::Index d = Eigen::Index(1) << c.num_qubits;
    Superoperator total = Superoperator::identity(d);
    for (const GateSpec& g : c.gates) {
        total = compose(embed(unitary_to_superop(g.unitary, tol), g.targets, c.num_qubits), total);
    }
    return total;
}

Superoperator noisy_circuit_superop(const Circuit& c, const NoiseModel& model,
                                    const std::vector<double>& lambdas) {
    c.validate();
    if (lambdas.size() != c.gates.size()) {
        std::ostringstream os;
        os << "noisy_circuit_superop: expected " << c.gates.size() << " scale factors, got "
           << lambdas.size();
        throw ValidationError(os.str());
    }
    const Eigen::Index d = Eigen::Index(1) << c.num_qubits;
    Superoperator total = Superoperator::identity(d);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const GateSpec& g = c.gates[i];
        const NoisyOperation op =
            noisy_gate(unitary_to_superop(g.unitary), g.label, model, lambdas[i]);
        total = compose(embed(op.superop, g.targets, c.num_qubits), total);
    }
    return total;
}

const std::vector<CMatrix>& single_qubit_cliffords() {
    return clifford_table().elements;
}

int clifford_inverse_index(int index) {
    const auto& table = clifford_table();
    if (index < 0 || index >= static_cast<int>(table.elements.size())) {
        throw ValidationError("clifford_inverse_index: index out of range");
    }
    return table.inverse[static_cast<std::size_t>(index)];
}

int clifford_index_of(const CMatrix& u) {
    const auto& table = clifford_table();
    const auto it = table.index_of.find(matrix_key(phase_canonical(u)));
    return it == table.index_of.end() ? -1 : it->second;
}

Circuit rb_circuit(int depth, std::uint64_t seed) {
    if (depth < 1) {
        throw ValidationError("rb_circuit: depth must be >= 1");
    }
    const auto& cliffords = single_qubit_cliffords();
    SampleRng rng(seed);
    Circuit c;
    c.num_qubits = 1;
    CMatrix running = CMatrix::Identity(2, 2);
    for (int i = 0; i < depth - 1; ++i) {
        const int idx = static_cast<int>(rng.bounded(cliffords.size()));
        c.gates.push_back({clifford_label(idx), cliffords[static_cast<std::size_t>(idx)], {0}});
        running = cliffords[static_cast<std::size_t>(idx)] * running;
    }
    const int closing = clifford_index_of(running.adjoint());
    if (closing < 0) {
        throw NumericalConsistencyError("rb_circuit: closing inverse not found in Clifford table");
    }
    c.gates.push_back({clifford_label(closing), cliffords[static_cast<std::size_t>(closing)], {0}});
    return c;
}

}  // namespace nepec
