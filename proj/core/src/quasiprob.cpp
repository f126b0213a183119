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

#include "nepec/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nepec/simplex.hpp"

namespace nepec {

namespace {

void require_nonempty(const QuasiProbRep& rep, const char* what) {
    if (rep.terms.empty()) {
        std::ostringstream os;
        os << what << ": empty representation";
        throw ValidationError(os.str());
    }
}

std::string format_scale(double lambda) {
    std::ostringstream os;
    os << lambda;
    return os.str();
}

// Columns of the stacked real/imaginary constraint matrix, one per op.
Eigen::MatrixXd stack_columns(const std::vector<NoisyOperation>& ops) {
    const Eigen::Index rows = 2 * ops.front().superop.matrix().size();
    Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t j = 0; j < ops.size(); ++j) {
        const CVector v = vectorize(ops[j].superop.matrix());
        a.col(static_cast<Eigen::Index>(j)) << v.real(), v.imag();
    }
    return a;
}

Eigen::VectorXd stack_target(const Superoperator& target) {
    const CVector v = vectorize(target.matrix());
    Eigen::VectorXd b(2 * v.size());
    b << v.real(), v.imag();
    return b;
}

double reconstruction_residual(const QuasiProbRep& rep, const Superoperator& target) {
    return (reconstruct(rep).matrix() - target.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

double one_norm(const QuasiProbRep& rep) {
    require_nonempty(rep, "one_norm");
    double sum = 0.0;
    for (const RepTerm& t : rep.terms) {
        sum += std::abs(t.eta);
    }
    return sum;
}

double coefficient_sum(const QuasiProbRep& rep) {
    double sum = 0.0;
    for (const RepTerm& t : rep.terms) {
        sum += t.eta;
    }
    return sum;
}

Superoperator reconstruct(const QuasiProbRep& rep) {
    require_nonempty(rep, "reconstruct");
    const Eigen::Index d = rep.terms.front().op.superop.dim();
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (const RepTerm& t : rep.terms) {
        if (t.op.superop.dim() != d) {
            throw DimensionMismatchError("reconstruct: mixed dimensions in representation");
        }
        m += t.eta * t.op.superop.matrix();
    }
    return Superoperator(d, std::move(m));
}

QuasiProbRep depolarizing_per_rep(const Superoperator& gate, const std::string& label,
                                  double p, double lambda) {
    if (gate.dim() != 2) {
        throw ValidationError("depolarizing_per_rep: single-qubit gates only");
    }
    const double eps = 4.0 * p / 3.0;
    if (!(eps < 1.0) || p < 0.0) {
        std::ostringstream os;
        os << "depolarizing_per_rep: requires 0 <= 4p/3 < 1, got p = " << p;
        throw ValidationError(os.str());
    }
    if (p > 0.0 && (lambda < 0.0 || lambda > 1.0 / p * (1.0 + 1e-12))) {
        std::ostringstream os;
        os << "depolarizing_per_rep: lambda = " << lambda << " outside [0, 1/p = " << 1.0 / p << "]";
        throw ValidationError(os.str());
    }

    const double shared = 0.25 * eps * (1.0 - lambda) / (1.0 - eps);
    const Superoperator noise = depolarizing_superop(p, 1);
    const NoiseModel model{NoiseKind::Depolarizing, p, 1};

    QuasiProbRep rep;
    rep.target_label = label + "@lambda=" + format_scale(lambda);
    auto add_term = [&](double eta, const CMatrix& twist, const std::string& twist_name) {
        NoisyOperation op;
        op.label = twist_name.empty() ? label : twist_name + "*" + label;
        op.lambda = 1.0;
        op.superop = compose(noise, Superoperator(2, kron(twist.conjugate(), twist) * gate.matrix()));
        op.description = op.label + " with depolarizing(p=" + format_scale(model.p) + ")";
        rep.terms.push_back({eta, std::move(op)});
    };
    add_term(1.0 + 3.0 * shared, CMatrix::Identity(2, 2), "");
    add_term(-shared, pauli_x(), "X");
    add_term(-shared, pauli_y(), "Y");
    add_term(-shared, pauli_z(), "Z");
    return rep;
}

double depolarizing_per_one_norm(double p, double lambda) {
    const double eps = 4.0 * p / 3.0;
    const double gamma = 1.0 + 1.5 * eps / (1.0 - eps);
    if (lambda <= 1.0) {
        return gamma - lambda * (gamma - 1.0);
    }
    if (lambda <= 1.0 / eps) {
        return 1.0;
    }
    // All-positive until the leading coefficient turns negative.
    const double shared = 0.25 * eps * (lambda - 1.0) / (1.0 - eps);
    return std::abs(1.0 - 3.0 * shared) + 3.0 * shared;
}

QuasiProbRep optimal_representation(const Superoperator& target,
                                    const std::vector<NoisyOperation>& basis,
                                    const Tolerances& tol) {
    if (basis.empty()) {
        throw ValidationError("optimal_representation: empty basis");
    }
    for (const NoisyOperation& op : basis) {
        if (op.superop.dim() != target.dim()) {
            throw DimensionMismatchError("optimal_representation: basis/target dimension mismatch");
        }
    }
    const Eigen::MatrixXd cols = stack_columns(basis);
    const int n_ops = static_cast<int>(basis.size());
    // Split eta = eta+ - eta-, both nonnegative; minimize their total sum.
    Eigen::MatrixXd a(cols.rows(), 2 * n_ops);
    a << cols, -cols;
    const Eigen::VectorXd b = stack_target(target);
    const Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * n_ops);

    const LpResult lp = solve_equality_lp(c, a, b, tol.lp_feasibility);
    if (lp.status == LpStatus::Infeasible) {
        std::ostringstream os;
        os << "no exact representation over the given basis (minimum L1 residual "
           << lp.feasibility_residual << ")";
        throw InfeasibleRepresentationError(os.str());
    }

    QuasiProbRep rep;
    rep.target_label = "lp-optimal";
    for (int j = 0; j < n_ops; ++j) {
        const double eta = lp.x(j) - lp.x(j + n_ops);
        if (std::abs(eta) > 1e-12) {
            rep.terms.push_back({eta, basis[static_cast<std::size_t>(j)]});
        }
    }
    if (rep.terms.empty()) {
        rep.terms.push_back({0.0, basis.front()});
    }
    rep.residual = reconstruction_residual(rep, target);
    if (rep.residual > tol.lp_feasibility) {
        std::ostringstream os;
        os << "optimal_representation: solver returned residual " << rep.residual
           << " above the feasibility tolerance " << tol.lp_feasibility;
        throw NumericalConsistencyError(os.str());
    }
    return rep;
}

std::vector<double> richardson_coefficients(const std::vector<double>& scale_factors) {
    if (scale_factors.empty()) {
        throw ValidationError("richardson_coefficients: empty scale factor set");
    }
    for (std::size_t i = 0; i < scale_factors.size(); ++i) {
        if (scale_factors[i] == 0.0) {
            throw ValidationError("richardson_coefficients: scale factor 0 is not allowed");
        }
        for (std::size_t j = i + 1; j < scale_factors.size(); ++j) {
            if (scale_factors[i] == scale_factors[j]) {
                throw ValidationError("richardson_coefficients: duplicate scale factors");
            }
        }
    }
    std::vector<double> coeffs(scale_factors.size(), 1.0);
    for (std::size_t i = 0; i < scale_factors.size(); ++i) {
        for (std::size_t j = 0; j < scale_factors.size(); ++j) {
            if (j != i) {
                coeffs[i] *= scale_factors[j] / (scale_factors[j] - scale_factors[i]);
            }
        }
    }
    return coeffs;
}

std::vector<double> polyfit_coefficients(const std::vector<double>& scale_factors, int degree) {
    const int m = static_cast<int>(scale_factors.size());
    if (degree < 0 || degree >= m) {
        std::ostringstream os;
        os << "polyfit_coefficients: degree " << degree << " must satisfy 0 <= degree < " << m;
        throw ValidationError(os.str());
    }
    // Vandermonde design matrix; the zero-intercept weights are
    // w = X (X^T X)^{-1} e_0, making the extrapolation an explicit fixed
    // linear functional of the data.
    Eigen::MatrixXd x(m, degree + 1);
    for (int r = 0; r < m; ++r) {
        double v = 1.0;
        for (int qd = 0; qd <= degree; ++qd) {
            x(r, qd) = v;
            v *= scale_factors[static_cast<std::size_t>(r)];
        }
    }
    const Eigen::MatrixXd gram = x.transpose() * x;
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(degree + 1);
    e0(0) = 1.0;
    const Eigen::VectorXd z = gram.ldlt().solve(e0);
    const Eigen::VectorXd w = x * z;
    return {w.data(), w.data() + w.size()};
}

QuasiProbRep gate_extrapolation_rep(const Superoperator& gate, const std::string& label,
                                    const NoiseModel& model, const std::vector<double>& scale_factors,
                                    const std::vector<double>& coefficients, ScalingMode mode) {
    if (scale_factors.size() != coefficients.size() || scale_factors.empty()) {
        throw ValidationError("gate_extrapolation_rep: need matching, nonempty scale factors and coefficients");
    }
    QuasiProbRep rep;
    rep.target_label = label;
    rep.bias_note = "gate extrapolation over scale factors; bias is nonzero unless the "
                    "scaled family is polynomial of degree < |S| in lambda";

    NoisyOperation base;
    NoisyOperation base_dagger;
    if (mode == ScalingMode::Folding) {
        base = noisy_gate(gate, label, model, 1.0);
        base_dagger = noisy_gate(Superoperator(gate.dim(), gate.matrix().adjoint()),
                                 label + "^dag", model, 1.0);
    }
    for (std::size_t i = 0; i < scale_factors.size(); ++i) {
        const double lam = scale_factors[i];
        NoisyOperation op;
        if (mode == ScalingMode::Folding) {
            const double rounded = std::round(lam);
            if (std::abs(lam - rounded) > 1e-9 || static_cast<long>(rounded) % 2 == 0 ||
                rounded < 1.0) {
                std::ostringstream os;
                os << "gate_extrapolation_rep: folding needs odd integer scale factors, got " << lam;
                throw ValidationError(os.str());
            }
            op.label = label + "@lambda=" + format_scale(rounded);
            op.lambda = rounded;
            op.superop = fold_gate(base, static_cast<int>(rounded), base_dagger);
            op.description = op.label + " (folded)";
        } else {
            op = noisy_gate(gate, label, model, lam);
            op.label = label + "@lambda=" + format_scale(lam);
        }
        rep.terms.push_back({coefficients[i], std::move(op)});
    }
    return rep;
}

CanonicalSplit canonical_split(const QuasiProbRep& rep, const Tolerances& tol) {
    require_nonempty(rep, "canonical_split");
    const Eigen::Index d = rep.terms.front().op.superop.dim();
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    CMatrix plus = CMatrix::Zero(d * d, d * d);
    CMatrix minus = CMatrix::Zero(d * d, d * d);
    for (const RepTerm& t : rep.terms) {
        if (t.eta >= 0.0) {
            gamma_plus += t.eta;
            plus += t.eta * t.op.superop.matrix();
        } else {
            gamma_minus += -t.eta;
            minus += -t.eta * t.op.superop.matrix();
        }
    }
    if (gamma_minus == 0.0) {
        throw DegenerateSplitError(
            "canonical_split: representation has no negative coefficients; the negative "
            "volume is zero and the error channel is undefined");
    }
    if (std::abs(gamma_plus - gamma_minus - 1.0) > tol.rep_normalization) {
        std::ostringstream os;
        os << "canonical_split: positive minus negative volume is " << gamma_plus - gamma_minus
           << ", expected 1";
        throw ValidationError(os.str());
    }
    CanonicalSplit split;
    split.gamma_plus = gamma_plus;
    split.gamma_minus = gamma_minus;
    split.p_tilde = gamma_minus / gamma_plus;
    split.phi_plus = Superoperator(d, plus / gamma_plus);
    split.phi_minus = Superoperator(d, minus / gamma_minus);
    split.target_label = rep.target_label;
    for (const Superoperator* phi : {&split.phi_plus, &split.phi_minus}) {
        if (!phi->is_trace_preserving(tol.physical) || !is_completely_positive(*phi, tol.psd_floor)) {
            throw NumericalConsistencyError("canonical_split: sign-split part is not a channel");
        }
    }
    // Regrouping identity: the split must reproduce the represented map.
    const CMatrix back = gamma_plus * split.phi_plus.matrix() - gamma_minus * split.phi_minus.matrix();
    if ((back - reconstruct(rep).matrix()).cwiseAbs().maxCoeff() > 1e-10) {
        throw NumericalConsistencyError("canonical_split: regrouped channels do not reconstruct the representation");
    }
    return split;
}

QuasiProbRep canonical_scaled_rep(const CanonicalSplit& split, double lambda) {
    const double lambda_max = split.gamma_plus / split.gamma_minus;
    if (lambda < 0.0 || lambda > lambda_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "canonical_scaled_rep: lambda = " << lambda << " outside [0, " << lambda_max << "]";
        throw ValidationError(os.str());
    }
    QuasiProbRep rep;
    rep.target_label = split.target_label + "@canonical-lambda=" + format_scale(lambda);

    NoisyOperation plus;
    plus.label = "noisy-part(" + split.target_label + ")";
    plus.lambda = 1.0;
    plus.superop = split.phi_plus;
    plus.description = "convex mixture of the positive-coefficient operations";
    NoisyOperation minus;
    minus.label = "error-part(" + split.target_label + ")";
    minus.lambda = 1.0;
    minus.superop = split.phi_minus;
    minus.description = "convex mixture of the negative-coefficient operations";

    rep.terms.push_back({split.gamma_plus - lambda * split.gamma_minus, std::move(plus)});
    rep.terms.push_back({-(1.0 - lambda) * split.gamma_minus, std::move(minus)});
    return rep;
}

ConvexityTestResult convexity_test(const Superoperator& scaled_op,
                                   const std::vector<NoisyOperation>& basis,
                                   const Tolerances& tol) {
    if (basis.empty()) {
        throw ValidationError("convexity_test: empty basis");
    }
    for (const NoisyOperation& op : basis) {
        if (op.superop.dim() != scaled_op.dim()) {
            throw DimensionMismatchError("convexity_test: basis/target dimension mismatch");
        }
    }
    const int n_ops = static_cast<int>(basis.size());
    const Eigen::MatrixXd cols = stack_columns(basis);
    Eigen::MatrixXd a(cols.rows() + 1, n_ops);
    a << cols, Eigen::RowVectorXd::Ones(n_ops);
    Eigen::VectorXd b(cols.rows() + 1);
    b << stack_target(scaled_op), 1.0;
    const Eigen::VectorXd c = Eigen::VectorXd::Zero(n_ops);

    const LpResult lp = solve_equality_lp(c, a, b, tol.lp_feasibility);
    ConvexityTestResult result;
    result.feasible = lp.status == LpStatus::Optimal;
    if (result.feasible) {
        result.mu.assign(lp.x.data(), lp.x.data() + lp.x.size());
        const Eigen::VectorXd err = a.topRows(cols.rows()) * lp.x - b.head(cols.rows());
        result.residual = err.cwiseAbs().maxCoeff();
    } else {
        result.residual = lp.feasibility_residual;
    }
    return result;
}

AmpDampExtrapolation ampdamp_exact_extrapolation(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "ampdamp_exact_extrapolation: requires 0 < p < 1, got " << p;
        throw ValidationError(os.str());
    }
    AmpDampExtrapolation out;
    out.p_prime = 1.0 - std::sqrt(1.0 - p);
    const double u = 1.0 / out.p_prime;
    out.scale_factors = {1.0, 0.5 * (1.0 + u), u};
    const std::vector<double> coeffs = richardson_coefficients(
        {out.scale_factors.begin(), out.scale_factors.end()});
    std::copy(coeffs.begin(), coeffs.end(), out.coefficients.begin());
    out.gamma = 0.0;
    for (double c : coeffs) {
        out.gamma += std::abs(c);
    }
    return out;
}

QuasiProbRep ampdamp_extrapolation_rep(const Superoperator& gate, const std::string& label,
                                       double p) {
    const AmpDampExtrapolation ext = ampdamp_exact_extrapolation(p);
    NoiseModel model{NoiseKind::AmplitudeDamping, p, 1, AmpDampScaling::OnPPrime};
    QuasiProbRep rep = gate_extrapolation_rep(
        gate, label, model, {ext.scale_factors.begin(), ext.scale_factors.end()},
        {ext.coefficients.begin(), ext.coefficients.end()}, ScalingMode::Parametric);
    rep.bias_note = "exact: amplitude damping is quadratic in p', three points suffice";
    return rep;
}

ScaleFactorSearchResult optimize_extrapolation_scale_factors(double max_scale) {
    if (!(max_scale > 1.0)) {
        throw ValidationError("optimize_extrapolation_scale_factors: max_scale must exceed 1");
    }
    auto norm_of = [](const std::array<double, 3>& s) {
        const std::vector<double> coeffs = richardson_coefficients({s.begin(), s.end()});
        double sum = 0.0;
        for (double c : coeffs) {
            sum += std::abs(c);
        }
        return sum;
    };

    // Coarse grid over ordered triples in [1, max_scale].
    constexpr int kGrid = 24;
    const double step = (max_scale - 1.0) / (kGrid - 1);
    std::array<double, 3> best{1.0, 0.5 * (1.0 + max_scale), max_scale};
    double best_norm = norm_of(best);
    for (int i = 0; i < kGrid; ++i) {
        for (int j = i + 1; j < kGrid; ++j) {
            for (int k = j + 1; k < kGrid; ++k) {
                const std::array<double, 3> s{1.0 + i * step, 1.0 + j * step, 1.0 + k * step};
                const double n = norm_of(s);
                if (n < best_norm) {
                    best_norm = n;
                    best = s;
                }
            }
        }
    }
    // Coordinate-wise golden-section refinement.
    constexpr double kGolden = 0.6180339887498949;
    for (int sweep = 0; sweep < 40; ++sweep) {
        for (int coord = 0; coord < 3; ++coord) {
            double lo = coord == 0 ? 1.0 : best[coord - 1] + 1e-9;
            double hi = coord == 2 ? max_scale : best[coord + 1] - 1e-9;
            if (hi <= lo) {
                continue;
            }
            double x1 = hi - kGolden * (hi - lo);
            double x2 = lo + kGolden * (hi - lo);
            auto eval = [&](double v) {
                std::array<double, 3> s = best;
                s[coord] = v;
                return norm_of(s);
            };
            double f1 = eval(x1);
            double f2 = eval(x2);
            for (int it = 0; it < 80; ++it) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - kGolden * (hi - lo);
                    f1 = eval(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + kGolden * (hi - lo);
                    f2 = eval(x2);
                }
            }
            const double candidate = 0.5 * (lo + hi);
            if (eval(candidate) < best_norm) {
                best[coord] = candidate;
                best_norm = eval(candidate);
            }
        }
    }
    return {best, best_norm};
}

}  // namespace nepec
