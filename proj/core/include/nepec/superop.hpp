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

#ifndef NEPEC_SUPEROP_HPP
#define NEPEC_SUPEROP_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nepec/errors.hpp"
#include "nepec/tolerances.hpp"

namespace nepec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Vectorization convention, used everywhere: column-stacking. vec(rho)
// stacks the columns of rho, so vec(A rho B) = (B^T (x) A) vec(rho) and a
// unitary conjugation rho -> U rho U^dag becomes conj(U) (x) U.
//
// Qubit index convention: qubit 0 is the most significant bit of a basis
// state index, i.e. |q0 q1 ... q_{n-1}> has index sum_i q_i 2^{n-1-i}.

CMatrix kron(const CMatrix& a, const CMatrix& b);

inline CVector vectorize(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix devectorize(const CVector& v, Eigen::Index dim) {
    return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

/// An n-qubit mixed state. Construction validates Hermiticity, unit trace
/// and positive semidefiniteness (up to the configured floor).
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(const CMatrix& data,
                                     const Tolerances& tol = default_tolerances());

    /// |index><index| on num_qubits qubits.
    static DensityMatrix basis_state(int num_qubits, int index = 0);

    /// Maximally mixed state I/d.
    static DensityMatrix maximally_mixed(int num_qubits);

    Eigen::Index dim() const { return data_.rows(); }
    const CMatrix& matrix() const { return data_; }

  private:
    explicit DensityMatrix(CMatrix data) : data_(std::move(data)) {}
    CMatrix data_;
};

/// A Hermitian operator whose expectation values are estimated.
class Observable {
  public:
    static Observable from_matrix(const CMatrix& data,
                                  const Tolerances& tol = default_tolerances());

    /// Projector |index><index| on num_qubits qubits.
    static Observable basis_projector(int num_qubits, int index = 0);

    Eigen::Index dim() const { return data_.rows(); }
    const CMatrix& matrix() const { return data_; }

  private:
    explicit Observable(CMatrix data) : data_(std::move(data)) {}
    CMatrix data_;
};

/// A general linear map on density matrices of Hilbert dimension d, stored
/// as the d^2 x d^2 matrix acting on column-vectorized inputs.
class Superoperator {
  public:
    Superoperator() = default;
    Superoperator(Eigen::Index hilbert_dim, CMatrix m);

    static Superoperator identity(Eigen::Index hilbert_dim);

    Eigen::Index dim() const { return dim_; }
    const CMatrix& matrix() const { return m_; }

    bool is_trace_preserving(double atol = default_tolerances().physical) const;

  private:
    Eigen::Index dim_ = 0;
    CMatrix m_;
};

/// rho -> U rho U^dag. Throws ValidationError (naming the deviation norm)
/// if U is not unitary.
Superoperator unitary_to_superop(const CMatrix& u,
                                 const Tolerances& tol = default_tolerances());

/// rho -> sum_j K_j rho K_j^dag. The Kraus set must satisfy the
/// completeness relation sum_j K_j^dag K_j = I.
Superoperator kraus_to_superop(const std::vector<CMatrix>& kraus,
                               const Tolerances& tol = default_tolerances());

/// Functional composition: apply `first`, then `second`.
Superoperator compose(const Superoperator& second, const Superoperator& first);

/// Raw action on a (not necessarily physical) operator.
CMatrix apply_matrix(const Superoperator& s, const CMatrix& rho);

/// Action on a state; the result is validated as a density matrix, which
/// holds whenever `s` is a channel.
DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho,
                    const Tolerances& tol = default_tolerances());

/// Re tr[A rho]. Throws NumericalConsistencyError if the imaginary residue
/// exceeds the configured tolerance.
double expectation(const Observable& a, const DensityMatrix& rho,
                   const Tolerances& tol = default_tolerances());

double expectation_raw(const CMatrix& a, const CMatrix& rho,
                       const Tolerances& tol = default_tolerances());

/// Tensor-extend a k-qubit superoperator to n qubits, acting on `targets`
/// (distinct, in range) and as the identity elsewhere.
Superoperator embed(const Superoperator& s, const std::vector<int>& targets, int num_qubits);

/// Choi matrix (unnormalized): C = sum_{kl} |k><l| (x) S(|k><l|).
/// S is completely positive iff C is positive semidefinite.
CMatrix choi_matrix(const Superoperator& s);

bool is_completely_positive(const Superoperator& s,
                            double eig_floor = default_tolerances().psd_floor);

/// Partial trace over all qubits except `keep` (qubit indices, ascending).
CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& keep, int num_qubits);

// Single-qubit Pauli matrices.
const CMatrix& pauli_i();
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

/// Pauli string as a d x d matrix. `digits` holds one base-4 digit per
/// qubit (0=I, 1=X, 2=Y, 3=Z), qubit 0 first.
CMatrix pauli_string(const std::vector<int>& digits);

}  // namespace nepec

#endif
