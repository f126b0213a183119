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

// Acceptance suite: one self-contained check per criterion, each printing
// a single PASS/FAIL line with the measured quantities. The process exit
// code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace {

using namespace nepec;
using namespace nepec::experiments;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) {
                detail << "; ";
            }
            detail << what;
        }
    }
    void note(const std::string& text) {
        if (detail.tellp() > 0) {
            detail << "; ";
        }
        detail << text;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CMatrix hadamard() {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

double max_abs(const CMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

std::vector<NoisyOperation> twisted_ops(const Superoperator& gate, const Superoperator& noise,
                                        double lambda_tag) {
    std::vector<NoisyOperation> ops;
    for (const CMatrix* p : {&pauli_i(), &pauli_x(), &pauli_y(), &pauli_z()}) {
        ops.push_back({"op", compose(noise, Superoperator(2, kron(p->conjugate(), *p) * gate.matrix())),
                       lambda_tag, ""});
    }
    return ops;
}

double sample_variance(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / (values.size() - 1);
}

/// Paired one-sided t statistic: mean(d) / (sd(d)/sqrt(n)).
double paired_t(const std::vector<double>& diffs) {
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= diffs.size();
    const double se = std::sqrt(sample_variance(diffs) / diffs.size());
    return mean / se;
}

// ---------------------------------------------------------------------------
// Criterion 1: LP-optimal one-norm matches the closed form.
void criterion_1(Check& check) {
    const Superoperator h = unitary_to_superop(hadamard());
    for (double p : {0.005, 0.01, 0.015}) {
        const double eps = 4.0 * p / 3.0;
        const double closed = 1.0 + 1.5 * eps / (1.0 - eps);
        const QuasiProbRep rep =
            optimal_representation(h, twisted_ops(h, depolarizing_superop(p, 1), 1.0));
        const double gap = std::abs(one_norm(rep) - closed);
        check.require(gap < 1e-6, "p=" + fmt(p) + ": |lp - closed| = " + fmt(gap));
    }
    check.note("max gap < 1e-6 at p in {0.005, 0.01, 0.015}");
}

// Criterion 2: one-norm law of the virtually scaled representation.
void criterion_2(Check& check) {
    const Superoperator h = unitary_to_superop(hadamard());
    const double p = 0.01;
    const double eps = 4.0 * p / 3.0;
    const double gamma = 1.0 + 1.5 * eps / (1.0 - eps);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double lam = i / 20.0;
        const double law = gamma - lam * (gamma - 1.0);
        worst = std::max(worst, std::abs(one_norm(depolarizing_per_rep(h, "h", p, lam)) - law));
    }
    check.require(worst < 1e-12, "affine law worst deviation " + fmt(worst));
    double worst_flat = 0.0;
    for (double lam : {1.0, 2.0, 10.0, 40.0, 1.0 / eps}) {
        worst_flat = std::max(worst_flat,
                              std::abs(one_norm(depolarizing_per_rep(h, "h", p, lam)) - 1.0));
    }
    check.require(worst_flat < 1e-12, "saturated region deviation " + fmt(worst_flat));
    check.note("21-point grid deviation " + fmt(worst) + ", saturation deviation " + fmt(worst_flat));
}

// Criterion 3: canonical scaling reproduces the physical depolarizing channel.
void criterion_3(Check& check) {
    const Superoperator h = unitary_to_superop(hadamard());
    const double p = 0.015;
    const QuasiProbRep base = depolarizing_per_rep(h, "h", p, 0.0);
    const CanonicalSplit split = canonical_split(base);
    const double gamma = one_norm(base);
    const double lambda_max = (gamma + 1.0) / (gamma - 1.0);
    double worst = 0.0;
    for (double lam : {0.0, 0.5, 1.0, lambda_max}) {
        const CMatrix expected = compose(depolarizing_superop(lam * p, 1), h).matrix();
        worst = std::max(worst,
                         max_abs(reconstruct(canonical_scaled_rep(split, lam)).matrix() - expected));
    }
    check.require(worst < 1e-10, "worst reconstruction gap " + fmt(worst));
    check.note("max |reconstruction - D_{lambda p} G| = " + fmt(worst) +
               " over lambda in {0, 0.5, 1, " + fmt(lambda_max) + "}");
}

// Criterion 4: Monte Carlo unbiasedness against the exact full sum.
void criterion_4(Check& check) {
    const Circuit c = rb_circuit(3, 20260);
    const NoiseModel model{NoiseKind::Depolarizing, 0.05, 1};
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
    const std::vector<QuasiProbRep> reps = build_per_reps(c, model, 0.0);

    const double exact = exact_mitigated_value(c, reps, obs, rho0);
    check.require(std::abs(exact - 1.0) < 1e-9, "exact sum deviates: " + fmt(exact - 1.0));

    MonteCarloOptions opts;
    opts.n_samples = 100000;
    opts.n_batches = 25;
    opts.seed = 20261;
    opts.workers = 4;
    const EstimatorResult r = monte_carlo_estimate(c, reps, obs, rho0, opts);
    const double bound = 4.0 * r.gamma / std::sqrt(static_cast<double>(opts.n_samples));
    check.require(std::abs(r.estimate - exact) < bound,
                  "|mc - exact| = " + fmt(std::abs(r.estimate - exact)) + " vs 4*gamma/sqrt(N) = " +
                      fmt(bound));
    check.note("exact - 1 = " + fmt(exact - 1.0) + ", |mc - exact| = " +
               fmt(std::abs(r.estimate - exact)) + " < " + fmt(bound));
}

// Criterion 5: robustness to noise-characterization error (paired seeds).
void criterion_5(Check& check) {
    const Circuit c = rb_circuit(14, 2026);
    const Budget budget{5000, 0, 25};
    const std::vector<double> factors{1.0, 51.0};

    std::vector<double> diffs;
    for (int s = 0; s < 10; ++s) {
        const Fig2Point pt =
            fig2_point(c, 0.02, 0.01, factors, budget, sub_seed(0xF162, s), 4);
        diffs.push_back(std::abs(pt.pec.estimate - 1.0) - std::abs(pt.nepec.estimate - 1.0));
    }
    const double t = paired_t(diffs);
    check.require(t > 3.0, "paired one-sided t = " + fmt(t) + " (need > 3)");

    bool matched_ok = true;
    double worst_pull = 0.0;
    for (int s = 0; s < 10; ++s) {
        const Fig2Point pt =
            fig2_point(c, 0.01, 0.01, factors, budget, sub_seed(0xF162 + 77, s), 4);
        const double pull = std::abs(pt.pec.estimate - 1.0) / std::max(pt.pec.std_error, 1e-12);
        worst_pull = std::max(worst_pull, pull);
        matched_ok = matched_ok && pull < 5.0;
    }
    check.require(matched_ok, "matched-noise pull " + fmt(worst_pull) + " (need < 5)");
    check.note("miscalibration t = " + fmt(t) + ", matched-noise worst |bias|/se = " +
               fmt(worst_pull));
}

// Criterion 6: virtual noise reduction and virtual extrapolation at scale.
void criterion_6(Check& check) {
    const Circuit c = rb_circuit(46, 4646);
    const NoiseModel model{NoiseKind::Depolarizing, 0.015, 1};
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
    const double unmit_analytic = 0.5 + 0.5 * std::pow(1.0 - 4.0 * model.p / 3.0, 46);

    MonteCarloOptions opts;
    opts.n_samples = 50000;
    opts.shots_per_sample = 1;
    opts.n_batches = 25;
    opts.seed = 1;
    opts.workers = 4;

    // (a) monotone interpolation between cancellation and no mitigation.
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<EstimatorResult> per;
    for (double lam : grid) {
        per.push_back(per_estimate(c, model, obs, rho0, lam, opts));
    }
    for (std::size_t i = 0; i + 1 < per.size(); ++i) {
        const double combined = std::hypot(per[i].std_error, per[i + 1].std_error);
        check.require(per[i + 1].estimate <= per[i].estimate + 3.0 * combined,
                      "not monotone at lambda=" + fmt(grid[i + 1]));
    }
    check.require(std::abs(per.front().estimate - 1.0) < 3.0 * per.front().std_error + 1e-3,
                  "cancellation endpoint off: " + fmt(per.front().estimate));
    check.require(std::abs(per.back().estimate - unmit_analytic) <
                      3.0 * per.back().std_error + 1e-3,
                  "unmitigated endpoint off: " + fmt(per.back().estimate) + " vs " +
                      fmt(unmit_analytic));

    // Batch variance drops from lambda = 0 to lambda = 0.75 (10 replicates).
    std::vector<double> var_diffs;
    for (int r = 0; r < 10; ++r) {
        MonteCarloOptions rep_opts = opts;
        rep_opts.seed = sub_seed(6006, r);
        const EstimatorResult low = per_estimate(c, model, obs, rho0, 0.0, rep_opts);
        const EstimatorResult high = per_estimate(c, model, obs, rho0, 0.75, rep_opts);
        var_diffs.push_back(sample_variance(low.batch_means) - sample_variance(high.batch_means));
    }
    const double t_var = paired_t(var_diffs);
    check.require(t_var > 3.0, "variance reduction t = " + fmt(t_var) + " (need > 3)");

    // (b) virtual extrapolation: tighter error than cancellation on the
    // same per-factor budget, both mitigated estimates closer to 1.
    const EstimatorResult pec = per[0];
    const EstimatorResult unmit = per[4];
    const EstimatorResult per02 = per_estimate(c, model, obs, rho0, 0.2, opts);
    const EstimatorResult vzne = virtual_zne(c, model, obs, rho0, {0.2, 1.0}, opts,
                                             ExtrapolationMethod::richardson());
    check.require(vzne.std_error < pec.std_error,
                  "vzne se " + fmt(vzne.std_error) + " !< pec se " + fmt(pec.std_error));
    check.require(sample_variance(per02.batch_means) < sample_variance(pec.batch_means),
                  "per(0.2) batch variance not below pec's on the same seeds");
    const double unmit_gap = std::abs(unmit.estimate - 1.0);
    check.require(std::abs(vzne.estimate - 1.0) < unmit_gap, "vzne further than unmitigated");
    check.require(std::abs(pec.estimate - 1.0) < unmit_gap, "pec further than unmitigated");
    check.require(std::abs(per02.estimate - 1.0) < unmit_gap, "per(0.2) further than unmitigated");
    check.note("variance t = " + fmt(t_var) + ", vzne se = " + fmt(vzne.std_error) +
               " < pec se = " + fmt(pec.std_error));
}

// Criterion 7: amplitude-damping extrapolation and LP feasibility pattern.
void criterion_7(Check& check) {
    const double p = 0.19;
    const AmpDampExtrapolation ext = ampdamp_exact_extrapolation(p);
    const double p_prime = 1.0 - std::sqrt(1.0 - p);
    const double closed = (1.0 + 6.0 * p_prime + p_prime * p_prime) /
                          ((1.0 - p_prime) * (1.0 - p_prime));
    check.require(std::abs(ext.gamma - closed) < 1e-9,
                  "three-point norm " + fmt(ext.gamma) + " vs closed form " + fmt(closed));

    const Superoperator h = unitary_to_superop(hadamard());
    const QuasiProbRep rep = ampdamp_extrapolation_rep(h, "h", p);
    const double residual = max_abs(reconstruct(rep).matrix() - h.matrix());
    check.require(residual < 1e-9, "reconstruction residual " + fmt(residual));

    const ScaleFactorSearchResult search = optimize_extrapolation_scale_factors(1.0 / p_prime);
    check.require(std::abs(search.gamma - closed) < 1e-6,
                  "search norm " + fmt(search.gamma) + " vs " + fmt(closed));

    bool infeasible_unscaled = false;
    try {
        optimal_representation(h, twisted_ops(h, amplitude_damping_superop(p), 1.0));
    } catch (const InfeasibleRepresentationError&) {
        infeasible_unscaled = true;
    }
    check.require(infeasible_unscaled, "unscaled unitary-only basis unexpectedly feasible");

    std::vector<NoisyOperation> extended = twisted_ops(h, amplitude_damping_superop(p), 1.0);
    for (NoisyOperation& op : twisted_ops(h, amplitude_damping_superop(2.0 * p), 2.0)) {
        extended.push_back(std::move(op));
    }
    const QuasiProbRep scaled_rep = optimal_representation(h, extended);
    check.require(std::isfinite(one_norm(scaled_rep)) && scaled_rep.residual < 1e-8,
                  "extended basis not exactly feasible");
    check.note("gamma = " + fmt(ext.gamma) + ", residual = " + fmt(residual) +
               ", extended-basis gamma = " + fmt(one_norm(scaled_rep)));
}

// Criterion 8: no-go test for depolarizing noise scaling.
void criterion_8(Check& check) {
    const Superoperator h = unitary_to_superop(hadamard());
    const double p = 0.01;
    const double eps = 4.0 * p / 3.0;
    const double lambda_max = NoiseModel{NoiseKind::Depolarizing, p, 1}.lambda_max();
    const std::vector<NoisyOperation> base = twisted_ops(h, depolarizing_superop(p, 1), 1.0);

    std::vector<NoisyOperation> extended = base;
    double worst_mu = 0.0;
    for (double lam : {1.5, 2.0, 5.0, lambda_max}) {
        const Superoperator scaled = compose(depolarizing_superop(lam * p, 1), h);
        const ConvexityTestResult r = convexity_test(scaled, base);
        check.require(r.feasible, "convexity test infeasible at lambda=" + fmt(lam));
        if (r.feasible) {
            const double q = p * (lam - 1.0) / (1.0 - eps);
            double err = std::abs(r.mu[0] - (1.0 - q));
            for (int i : {1, 2, 3}) {
                err = std::max(err, std::abs(r.mu[static_cast<std::size_t>(i)] - q / 3.0));
            }
            worst_mu = std::max(worst_mu, err);
        }
        for (NoisyOperation& op : twisted_ops(h, depolarizing_superop(lam * p, 1), lam)) {
            extended.push_back(std::move(op));
        }
    }
    check.require(worst_mu < 1e-7, "mixture weights deviate by " + fmt(worst_mu));

    const double gamma_base = one_norm(optimal_representation(h, base));
    const double gamma_ext = one_norm(optimal_representation(h, extended));
    check.require(std::abs(gamma_base - gamma_ext) < 1e-6,
                  "extended norm " + fmt(gamma_ext) + " vs base " + fmt(gamma_base));
    check.note("worst mixture deviation " + fmt(worst_mu) + ", |gamma_ext - gamma_base| = " +
               fmt(std::abs(gamma_ext - gamma_base)));
}

// Criterion 9: extrapolation coefficients.
void criterion_9(Check& check) {
    SampleRng rng(909);
    double worst_sum = 0.0;
    double worst_poly = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(rng.bounded(4));
        std::vector<double> s;
        double next = 1.0;
        for (int i = 0; i < m; ++i) {
            next += 0.5 + 4.0 * rng.uniform();
            s.push_back(next);
        }
        const std::vector<double> coeffs = richardson_coefficients(s);
        double sum = 0.0;
        for (double cc : coeffs) sum += cc;
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));

        // Synthetic polynomial of degree m-1 must be recovered exactly.
        std::vector<double> poly_coeffs;
        for (int k = 0; k < m; ++k) {
            poly_coeffs.push_back(2.0 * rng.uniform() - 1.0);
        }
        auto poly = [&](double x) {
            double acc = 0.0;
            for (int k = m - 1; k >= 0; --k) {
                acc = acc * x + poly_coeffs[static_cast<std::size_t>(k)];
            }
            return acc;
        };
        double extrap = 0.0;
        for (int i = 0; i < m; ++i) {
            extrap += coeffs[static_cast<std::size_t>(i)] * poly(s[static_cast<std::size_t>(i)]);
        }
        worst_poly = std::max(worst_poly, std::abs(extrap - poly_coeffs[0]));
    }
    check.require(worst_sum < 1e-12, "coefficient sums deviate by " + fmt(worst_sum));
    check.require(worst_poly < 1e-9, "polynomial recovery off by " + fmt(worst_poly));

    const Superoperator h = unitary_to_superop(hadamard());
    const NoiseModel model{NoiseKind::Depolarizing, 0.01, 1};
    for (double l2 : {3.0, 11.0, 51.0}) {
        const QuasiProbRep rep = gate_extrapolation_rep(
            h, "h", model, {1.0, l2}, richardson_coefficients({1.0, l2}), ScalingMode::Parametric);
        const double expected = (1.0 + l2) / (l2 - 1.0);
        check.require(std::abs(one_norm(rep) - expected) < 1e-12,
                      "linear cost at l2=" + fmt(l2) + " is " + fmt(one_norm(rep)));
    }

    // Linear extrapolation at the largest admissible factor costs
    // (1 + eps)/(1 - eps), which must exceed the LP-optimal cancellation
    // norm (qualitative comparison only).
    const double eps = 4.0 * model.p / 3.0;
    const double extrapolation_cost = (1.0 + eps) / (1.0 - eps);
    const double lp_cost =
        one_norm(optimal_representation(h, twisted_ops(h, depolarizing_superop(model.p, 1), 1.0)));
    check.require(extrapolation_cost > lp_cost,
                  "extrapolation cost " + fmt(extrapolation_cost) + " !> lp cost " + fmt(lp_cost));
    check.note("worst sum deviation " + fmt(worst_sum) + ", worst recovery " + fmt(worst_poly) +
               ", extrapolation vs lp cost " + fmt(extrapolation_cost) + " > " + fmt(lp_cost));
}

// Criterion 10: module invariants as property tests.
void criterion_10(Check& check) {
    SampleRng rng(1010);
    auto random_unitary = [&](Eigen::Index d) {
        CMatrix g(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                const double u1 = std::max(rng.uniform(), 1e-300);
                const double u2 = rng.uniform();
                const double r = std::sqrt(-2.0 * std::log(u1));
                g(i, j) = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
            }
        }
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ();
        const CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < d; ++i) {
            q.col(i) *= rr(i, i) / std::abs(rr(i, i));
        }
        return q;
    };
    auto random_density = [&](Eigen::Index d) {
        CMatrix g(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                const double u1 = std::max(rng.uniform(), 1e-300);
                const double u2 = rng.uniform();
                const double r = std::sqrt(-2.0 * std::log(u1));
                g(i, j) = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
            }
        }
        CMatrix rho = g * g.adjoint();
        return (rho / rho.trace().real()).eval();
    };
    auto random_channel = [&](Eigen::Index d, int n_kraus) {
        std::vector<CMatrix> raw;
        CMatrix total = CMatrix::Zero(d, d);
        for (int i = 0; i < n_kraus; ++i) {
            CMatrix g(d, d);
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) {
                    const double u1 = std::max(rng.uniform(), 1e-300);
                    const double u2 = rng.uniform();
                    const double r = std::sqrt(-2.0 * std::log(u1));
                    g(a, b) = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
                }
            }
            raw.push_back(g);
            total += g.adjoint() * g;
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
        const CMatrix inv_sqrt = es.operatorInverseSqrt();
        std::vector<CMatrix> kraus;
        for (const CMatrix& g : raw) {
            kraus.push_back(g * inv_sqrt);
        }
        return kraus_to_superop(kraus);
    };

    // Composition associativity and vectorization consistency (200 each).
    double worst_assoc = 0.0, worst_vec = 0.0, worst_kraus = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Superoperator a = random_channel(2, 2);
        const Superoperator b = random_channel(2, 3);
        const Superoperator cc = random_channel(2, 2);
        worst_assoc = std::max(worst_assoc, max_abs(compose(a, compose(b, cc)).matrix() -
                                                    compose(compose(a, b), cc).matrix()));
        const CMatrix u = random_unitary(2);
        const CMatrix rho = random_density(2);
        worst_vec = std::max(worst_vec, max_abs(apply_matrix(unitary_to_superop(u), rho) -
                                                u * rho * u.adjoint()));
        worst_kraus = std::max(worst_kraus, max_abs(kraus_to_superop({u}).matrix() -
                                                    unitary_to_superop(u).matrix()));
    }
    check.require(worst_assoc < 1e-12, "associativity " + fmt(worst_assoc));
    check.require(worst_vec < 1e-12, "vectorization " + fmt(worst_vec));
    check.require(worst_kraus < 1e-12, "kraus/unitary agreement " + fmt(worst_kraus));

    // Noise-model invariants.
    double worst_ad = 0.0;
    bool cp_ok = true, tp_ok = true;
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        worst_ad = std::max(worst_ad, max_abs(amplitude_damping_superop(p).matrix() *
                                                  amplitude_damping_superop(q).matrix() -
                                              amplitude_damping_superop(p + q - p * q).matrix()));
    }
    for (const NoiseModel& m :
         {NoiseModel{NoiseKind::Depolarizing, 0.03, 1}, NoiseModel{NoiseKind::AmplitudeDamping, 0.03, 1}}) {
        for (double f : {0.0, 0.3, 0.7, 1.0}) {
            const Superoperator s = scaled_noise(m, f * m.lambda_max());
            cp_ok = cp_ok && is_completely_positive(s);
            tp_ok = tp_ok && s.is_trace_preserving();
        }
    }
    const NoiseModel depol{NoiseKind::Depolarizing, 0.0123, 1};
    check.require((scaled_noise(depol, 2.5).matrix().array() ==
                   depolarizing_superop(2.5 * 0.0123, 1).matrix().array())
                      .all(),
                  "depolarizing semigroup scaling not exact");
    check.require((scaled_noise(depol, 1.0).matrix().array() ==
                   depolarizing_superop(0.0123, 1).matrix().array())
                      .all(),
                  "base channel not reproduced bit-for-bit");
    check.require(worst_ad < 1e-12, "amplitude damping composition " + fmt(worst_ad));
    check.require(cp_ok && tp_ok, "scaled channels not CPTP");

    // Quasi-probability invariants over random gates and noise levels.
    double worst_norm_sum = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Superoperator g = unitary_to_superop(random_unitary(2));
        const double p = 0.3 * rng.uniform();
        const double lam = rng.uniform();
        worst_norm_sum = std::max(
            worst_norm_sum, std::abs(coefficient_sum(depolarizing_per_rep(g, "g", p, lam)) - 1.0));
    }
    check.require(worst_norm_sum < 1e-8, "coefficient sums " + fmt(worst_norm_sum));

    // LP optimum never exceeds an analytic representation; extended basis
    // never increases the optimum.
    const Superoperator h = unitary_to_superop(hadamard());
    for (double p : {0.01, 0.05}) {
        const std::vector<NoisyOperation> base = twisted_ops(h, depolarizing_superop(p, 1), 1.0);
        const double lp = one_norm(optimal_representation(h, base));
        const double analytic = one_norm(depolarizing_per_rep(h, "h", p, 0.0));
        check.require(lp <= analytic + 1e-7, "lp exceeds analytic at p=" + fmt(p));
        std::vector<NoisyOperation> extended = base;
        for (NoisyOperation& op : twisted_ops(h, depolarizing_superop(1.7 * p, 1), 1.7)) {
            extended.push_back(std::move(op));
        }
        const double lp_ext = one_norm(optimal_representation(h, extended));
        check.require(lp_ext <= lp + 1e-7, "extended basis increased the optimum at p=" + fmt(p));
    }

    // Gate-extrapolation bias pattern (exact for linear family; inexact for
    // amplitude damping on p; exact on p' with three points).
    {
        const NoiseModel model{NoiseKind::Depolarizing, 0.02, 1};
        const QuasiProbRep linear = gate_extrapolation_rep(
            h, "h", model, {1.0, 3.0}, richardson_coefficients({1.0, 3.0}), ScalingMode::Parametric);
        check.require(max_abs(reconstruct(linear).matrix() - h.matrix()) < 1e-9,
                      "linear-family extrapolation not exact");
        const NoiseModel ad{NoiseKind::AmplitudeDamping, 0.19, 1};
        const QuasiProbRep biased = gate_extrapolation_rep(
            h, "h", ad, {1.0, 3.0}, richardson_coefficients({1.0, 3.0}), ScalingMode::Parametric);
        check.require(max_abs(reconstruct(biased).matrix() - h.matrix()) > 1e-4,
                      "two-point amplitude damping unexpectedly exact");
        check.require(max_abs(reconstruct(ampdamp_extrapolation_rep(h, "h", 0.19)).matrix() -
                              h.matrix()) < 1e-9,
                      "three-point p' scheme not exact");
    }

    // Circuit invariants: determinism and identity composition.
    for (int i = 0; i < 200; ++i) {
        const int depth = 1 + static_cast<int>(rng.bounded(25));
        const std::uint64_t seed = rng.raw();
        const Circuit c = rb_circuit(depth, seed);
        check.require(max_abs(ideal_superop(c).matrix() - CMatrix::Identity(4, 4)) < 1e-10,
                      "benchmarking circuit does not compose to the identity");
        if (i < 10) {
            const Circuit again = rb_circuit(depth, seed);
            bool same = again.gates.size() == c.gates.size();
            for (std::size_t g = 0; same && g < c.gates.size(); ++g) {
                same = c.gates[g].label == again.gates[g].label;
            }
            check.require(same, "generation not deterministic");
        }
    }

    // Estimator invariants: linearity of the extrapolation functional,
    // batch-mean consistency, merge property, bounded sample magnitudes,
    // and the variance law across virtual scale factors.
    {
        const Circuit c = rb_circuit(6, 606);
        const NoiseModel model{NoiseKind::Depolarizing, 0.05, 1};
        const Observable obs = Observable::basis_projector(1, 0);
        const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);

        double worst_lin = 0.0;
        for (int i = 0; i < 200; ++i) {
            std::vector<std::pair<double, double>> pa, pb, pmix;
            const double alpha = 2.0 * rng.uniform() - 1.0;
            const double beta = 2.0 * rng.uniform() - 1.0;
            double lam = 1.0;
            for (int k = 0; k < 3; ++k) {
                lam += 0.5 + 2.0 * rng.uniform();
                const double ya = rng.uniform();
                const double yb = rng.uniform();
                pa.emplace_back(lam, ya);
                pb.emplace_back(lam, yb);
                pmix.emplace_back(lam, alpha * ya + beta * yb);
            }
            const auto method = ExtrapolationMethod::richardson();
            worst_lin = std::max(worst_lin,
                                 std::abs(zne_extrapolate(pmix, method) -
                                          alpha * zne_extrapolate(pa, method) -
                                          beta * zne_extrapolate(pb, method)));
        }
        check.require(worst_lin < 1e-12, "extrapolation linearity " + fmt(worst_lin));

        const std::vector<QuasiProbRep> reps = build_per_reps(c, model, 0.0);
        MonteCarloOptions opts;
        opts.n_samples = 4000;
        opts.n_batches = 8;
        opts.seed = 607;
        const EstimatorResult whole = monte_carlo_estimate(c, reps, obs, rho0, opts);
        double bm_mean = 0.0;
        for (double bm : whole.batch_means) bm_mean += bm;
        bm_mean /= whole.batch_means.size();
        check.require(std::abs(bm_mean - whole.estimate) < 1e-12, "batch means inconsistent");
        for (double bm : whole.batch_means) {
            check.require(std::abs(bm) <= whole.gamma + 1e-9, "batch mean exceeds gamma bound");
        }

        MonteCarloOptions first = opts;
        first.n_samples = 2400;
        first.n_batches = 5;
        MonteCarloOptions second = opts;
        second.n_samples = 1600;
        second.n_batches = 3;
        second.first_sample_index = 2400;
        const EstimatorResult merged =
            merge_results(monte_carlo_estimate(c, reps, obs, rho0, first),
                          monte_carlo_estimate(c, reps, obs, rho0, second));
        check.require(std::abs(merged.estimate - whole.estimate) < 1e-12,
                      "merge does not reproduce the union run");

        std::vector<double> var_diffs;
        for (int r = 0; r < 20; ++r) {
            MonteCarloOptions vo = opts;
            vo.n_samples = 2000;
            vo.n_batches = 20;
            vo.seed = sub_seed(608, r);
            const EstimatorResult lo = per_estimate(c, model, obs, rho0, 0.0, vo);
            const EstimatorResult hi = per_estimate(c, model, obs, rho0, 0.6, vo);
            var_diffs.push_back(sample_variance(lo.batch_means) -
                                sample_variance(hi.batch_means));
        }
        const double t_var = paired_t(var_diffs);
        check.require(t_var > 3.0, "variance law t = " + fmt(t_var));
        check.note("variance-law t = " + fmt(t_var));
    }
}

struct CriterionSpec {
    int number;
    std::string name;
    std::function<void(Check&)> fn;
    double time_limit_s;  // 0 = no stated limit
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<CriterionSpec> criteria{
        {1, "closed-form representation parity", criterion_1, 1.0},
        {2, "virtual-scaling one-norm law", criterion_2, 0.0},
        {3, "canonical-scaling identity", criterion_3, 0.0},
        {4, "Monte Carlo unbiasedness", criterion_4, 30.0},
        {5, "noise-characterization robustness", criterion_5, 300.0},
        {6, "error reduction and virtual extrapolation at scale", criterion_6, 600.0},
        {7, "amplitude-damping representations", criterion_7, 0.0},
        {8, "no-go verification", criterion_8, 0.0},
        {9, "extrapolation correctness", criterion_9, 0.0},
        {10, "module invariant suite", criterion_10, 120.0},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
    }

    int failures = 0;
    for (const CriterionSpec& spec : criteria) {
        if (only != 0 && spec.number != only) {
            continue;
        }
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            spec.fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (spec.time_limit_s > 0.0 && elapsed > spec.time_limit_s) {
            check.require(false, "runtime " + fmt(elapsed) + " s exceeds " +
                                     fmt(spec.time_limit_s) + " s");
        }
        failures += check.ok ? 0 : 1;
        std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", check.ok ? "PASS" : "FAIL",
                    spec.number, spec.name.c_str(), elapsed,
                    check.detail.tellp() > 0 ? " -- " : "", check.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures;
}
