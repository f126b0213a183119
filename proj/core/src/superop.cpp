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

#include "nepec/superop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nepec {

namespace {

bool is_power_of_two(Eigen::Index d) {
    return d > 0 && (d & (d - 1)) == 0;
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw DimensionMismatchError(os.str());
    }
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& data, const Tolerances& tol) {
    require_square(data, "DensityMatrix");
    if (!is_power_of_two(data.rows())) {
        throw ValidationError("DensityMatrix: dimension must be a power of two");
    }
    const double herm_dev = (data - data.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol.hermiticity) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian, max |rho - rho^dag| = " << herm_dev;
        throw ValidationError(os.str());
    }
    const double trace_dev = std::abs(data.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol.state_trace) {
        std::ostringstream os;
        os << "DensityMatrix: trace deviates from 1 by " << trace_dev;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (data + data.adjoint()),
                                              Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.psd_floor) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << min_eig << " below floor "
           << -tol.psd_floor;
        throw ValidationError(os.str());
    }
    return DensityMatrix(data);
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, int index) {
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    if (index < 0 || index >= d) {
        throw ValidationError("basis_state: index out of range");
    }
    CMatrix m = CMatrix::Zero(d, d);
    m(index, index) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

Observable Observable::from_matrix(const CMatrix& data, const Tolerances& tol) {
    require_square(data, "Observable");
    const double herm_dev = (data - data.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol.hermiticity) {
        std::ostringstream os;
        os << "Observable: not Hermitian, max |A - A^dag| = " << herm_dev;
        throw ValidationError(os.str());
    }
    return Observable(data);
}

Observable Observable::basis_projector(int num_qubits, int index) {
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    if (index < 0 || index >= d) {
        throw ValidationError("basis_projector: index out of range");
    }
    CMatrix m = CMatrix::Zero(d, d);
    m(index, index) = 1.0;
    return Observable(m);
}

Superoperator::Superoperator(Eigen::Index hilbert_dim, CMatrix m) : dim_(hilbert_dim), m_(std::move(m)) {
    if (m_.rows() != dim_ * dim_ || m_.cols() != dim_ * dim_) {
        std::ostringstream os;
        os << "Superoperator: matrix must be " << dim_ * dim_ << "x" << dim_ * dim_
           << " for Hilbert dimension " << dim_;
        throw ValidationError(os.str());
    }
}

Superoperator Superoperator::identity(Eigen::Index hilbert_dim) {
    return Superoperator(hilbert_dim, CMatrix::Identity(hilbert_dim * hilbert_dim, hilbert_dim * hilbert_dim));
}

bool Superoperator::is_trace_preserving(double atol) const {
    // tr[S(E_kl)] = delta_kl for every matrix unit E_kl. The trace of the
    // output is a fixed linear functional of the input vectorization.
    const Eigen::Index d = dim_;
    for (Eigen::Index col = 0; col < d * d; ++col) {
        Complex tr = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) {
            tr += m_(i + d * i, col);
        }
        const Complex expected = (col % (d + 1) == 0) ? Complex(1.0) : Complex(0.0);
        if (std::abs(tr - expected) > atol) {
            return false;
        }
    }
    return true;
}

Superoperator unitary_to_superop(const CMatrix& u, const Tolerances& tol) {
    require_square(u, "unitary_to_superop");
    const double dev = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > tol.physical) {
        std::ostringstream os;
        os << "unitary_to_superop: input is not unitary, max |U^dag U - I| = " << dev;
        throw ValidationError(os.str());
    }
    return Superoperator(u.rows(), kron(u.conjugate(), u));
}

Superoperator kraus_to_superop(const std::vector<CMatrix>& kraus, const Tolerances& tol) {
    if (kraus.empty()) {
        throw ValidationError("kraus_to_superop: empty Kraus list");
    }
    const Eigen::Index d = kraus.front().rows();
    CMatrix completeness = CMatrix::Zero(d, d);
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (const CMatrix& k : kraus) {
        require_square(k, "kraus_to_superop");
        require_same_dim(k.rows(), d, "kraus_to_superop");
        completeness += k.adjoint() * k;
        m += kron(k.conjugate(), k);
    }
    const double dev = (completeness - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > tol.kraus_completeness) {
        std::ostringstream os;
        os << "kraus_to_superop: completeness relation violated, residual norm = " << dev;
        throw ValidationError(os.str());
    }
    return Superoperator(d, std::move(m));
}

Superoperator compose(const Superoperator& second, const Superoperator& first) {
    require_same_dim(second.dim(), first.dim(), "compose");
    return Superoperator(first.dim(), second.matrix() * first.matrix());
}

CMatrix apply_matrix(const Superoperator& s, const CMatrix& rho) {
    require_same_dim(s.dim(), rho.rows(), "apply");
    return devectorize(s.matrix() * vectorize(rho), s.dim());
}

DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho, const Tolerances& tol) {
    return DensityMatrix::from_matrix(apply_matrix(s, rho.matrix()), tol);
}

double expectation_raw(const CMatrix& a, const CMatrix& rho, const Tolerances& tol) {
    require_same_dim(a.rows(), rho.rows(), "expectation");
    const Complex value = (a * rho).trace();
    if (std::abs(value.imag()) > tol.imag_residue) {
        std::ostringstream os;
        os << "expectation: imaginary residue " << value.imag() << " exceeds " << tol.imag_residue;
        throw NumericalConsistencyError(os.str());
    }
    return value.real();
}

double expectation(const Observable& a, const DensityMatrix& rho, const Tolerances& tol) {
    return expectation_raw(a.matrix(), rho.matrix(), tol);
}

Superoperator embed(const Superoperator& s, const std::vector<int>& targets, int num_qubits) {
    const int k = static_cast<int>(targets.size());
    if ((Eigen::Index(1) << k) != s.dim()) {
        throw ValidationError("embed: target count does not match superoperator arity");
    }
    if (k > num_qubits) {
        throw ValidationError("embed: more targets than qubits");
    }
    std::vector<bool> seen(num_qubits, false);
    for (int t : targets) {
        if (t < 0 || t >= num_qubits) {
            throw ValidationError("embed: target index out of range");
        }
        if (seen[t]) {
            throw ValidationError("embed: duplicate target index");
        }
        seen[t] = true;
    }
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    const Eigen::Index dk = s.dim();
    if (k == num_qubits) {
        bool in_order = true;
        for (int q = 0; q < k; ++q) {
            in_order = in_order && targets[q] == q;
        }
        if (in_order) {
            return s;
        }
    }

    // Bit of qubit q inside a basis index (qubit 0 = most significant).
    auto bit_of = [num_qubits](Eigen::Index idx, int q) -> Eigen::Index {
        return (idx >> (num_qubits - 1 - q)) & 1;
    };
    auto split = [&](Eigen::Index idx, Eigen::Index& target_part, Eigen::Index& rest_mask) {
        target_part = 0;
        rest_mask = idx;
        for (int t = 0; t < k; ++t) {
            target_part = (target_part << 1) | bit_of(idx, targets[t]);
            rest_mask &= ~(Eigen::Index(1) << (num_qubits - 1 - targets[t]));
        }
    };
    auto join = [&](Eigen::Index target_part, Eigen::Index rest_mask) -> Eigen::Index {
        Eigen::Index idx = rest_mask;
        for (int t = 0; t < k; ++t) {
            const Eigen::Index b = (target_part >> (k - 1 - t)) & 1;
            idx |= b << (num_qubits - 1 - targets[t]);
        }
        return idx;
    };

    CMatrix out = CMatrix::Zero(d * d, d * d);
    const CMatrix& small = s.matrix();
    for (Eigen::Index row_out = 0; row_out < d; ++row_out) {
        Eigen::Index rt_out, r_rest;
        split(row_out, rt_out, r_rest);
        for (Eigen::Index col_out = 0; col_out < d; ++col_out) {
            Eigen::Index ct_out, c_rest;
            split(col_out, ct_out, c_rest);
            const Eigen::Index out_idx = row_out + d * col_out;
            for (Eigen::Index rt_in = 0; rt_in < dk; ++rt_in) {
                const Eigen::Index row_in = join(rt_in, r_rest);
                for (Eigen::Index ct_in = 0; ct_in < dk; ++ct_in) {
                    const Eigen::Index col_in = join(ct_in, c_rest);
                    out(out_idx, row_in + d * col_in) = small(rt_out + dk * ct_out, rt_in + dk * ct_in);
                }
            }
        }
    }
    return Superoperator(d, std::move(out));
}

CMatrix choi_matrix(const Superoperator& s) {
    const Eigen::Index d = s.dim();
    const CMatrix& m = s.matrix();
    CMatrix choi(d * d, d * d);
    // C_{(k,i),(l,j)} = S(E_kl)_{ij} = M_{(i,j),(k,l)} with composite
    // indices (a,b) -> a*d+b on the Choi side, (a,b) -> a+d*b on the
    // vectorization side.
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    choi(k * d + i, l * d + j) = m(i + d * j, k + d * l);
                }
            }
        }
    }
    return choi;
}

bool is_completely_positive(const Superoperator& s, double eig_floor) {
    const CMatrix c = choi_matrix(s);
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -eig_floor;
}

CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& keep, int num_qubits) {
    const int k = static_cast<int>(keep.size());
    const Eigen::Index dk = Eigen::Index(1) << k;
    const Eigen::Index d = Eigen::Index(1) << num_qubits;
    require_same_dim(rho.rows(), d, "partial_trace");
    std::vector<int> traced;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    auto assemble = [&](Eigen::Index keep_bits, Eigen::Index traced_bits) -> Eigen::Index {
        Eigen::Index idx = 0;
        for (int t = 0; t < k; ++t) {
            const Eigen::Index b = (keep_bits >> (k - 1 - t)) & 1;
            idx |= b << (num_qubits - 1 - keep[t]);
        }
        for (std::size_t t = 0; t < traced.size(); ++t) {
            const Eigen::Index b = (traced_bits >> (traced.size() - 1 - t)) & 1;
            idx |= b << (num_qubits - 1 - traced[t]);
        }
        return idx;
    };
    const Eigen::Index dt = Eigen::Index(1) << traced.size();
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index j = 0; j < dk; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                sum += rho(assemble(i, t), assemble(j, t));
            }
            out(i, j) = sum;
        }
    }
    return out;
}

const CMatrix& pauli_i() {
    static const CMatrix m = CMatrix::Identity(2, 2);
    return m;
}

const CMatrix& pauli_x() {
    static const CMatrix m = [] {
        CMatrix x(2, 2);
        x << 0, 1, 1, 0;
        return x;
    }();
    return m;
}

const CMatrix& pauli_y() {
    static const CMatrix m = [] {
        CMatrix y(2, 2);
        y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        return y;
    }();
    return m;
}

const CMatrix& pauli_z() {
    static const CMatrix m = [] {
        CMatrix z(2, 2);
        z << 1, 0, 0, -1;
        return z;
    }();
    return m;
}

CMatrix pauli_string(const std::vector<int>& digits) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int digit : digits) {
        switch (digit) {
            case 0: out = kron(out, pauli_i()); break;
            case 1: out = kron(out, pauli_x()); break;
            case 2: out = kron(out, pauli_y()); break;
            case 3: out = kron(out, pauli_z()); break;
            default: throw ValidationError("pauli_string: digit must be in {0,1,2,3}");
        }
    }
    return out;
}

}  // namespace nepec
