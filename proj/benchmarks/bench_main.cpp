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

#include <benchmark/benchmark.h>

#include "nepec/circuits.hpp"
#include "nepec/estimators.hpp"
#include "nepec/quasiprob.hpp"

namespace {

using namespace nepec;

void BM_ComposeSuperops(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    const Superoperator a = depolarizing_superop(0.01, qubits);
    const Superoperator b = depolarizing_superop(0.02, qubits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(a, b));
    }
}
BENCHMARK(BM_ComposeSuperops)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_EmbedSingleQubit(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    const Superoperator d = depolarizing_superop(0.05, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(embed(d, {qubits - 1}, qubits));
    }
}
BENCHMARK(BM_EmbedSingleQubit)->Arg(2)->Arg(3)->Arg(4);

void BM_OptimalRepresentation(benchmark::State& state) {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    const Superoperator gate = unitary_to_superop(h / std::sqrt(2.0));
    const Superoperator noise = depolarizing_superop(0.01, 1);
    std::vector<NoisyOperation> basis;
    for (const CMatrix* p : {&pauli_i(), &pauli_x(), &pauli_y(), &pauli_z()}) {
        basis.push_back({"op", compose(noise, Superoperator(2, kron(p->conjugate(), *p) * gate.matrix())),
                         1.0, ""});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_representation(gate, basis));
    }
}
BENCHMARK(BM_OptimalRepresentation);

void BM_RbGeneration(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rb_circuit(static_cast<int>(state.range(0)), ++seed));
    }
}
BENCHMARK(BM_RbGeneration)->Arg(14)->Arg(46);

void BM_MonteCarloSampling(benchmark::State& state) {
    const Circuit c = rb_circuit(46, 7);
    const NoiseModel model{NoiseKind::Depolarizing, 0.015, 1};
    const Observable obs = Observable::basis_projector(1, 0);
    const DensityMatrix rho0 = DensityMatrix::basis_state(1, 0);
    const std::vector<QuasiProbRep> reps = build_per_reps(c, model, 0.0);
    const long samples = state.range(0);
    for (auto _ : state) {
        MonteCarloOptions opts;
        opts.n_samples = samples;
        opts.shots_per_sample = 1;
        opts.n_batches = 25;
        opts.seed = 11;
        benchmark::DoNotOptimize(monte_carlo_estimate(c, reps, obs, rho0, opts));
    }
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_MonteCarloSampling)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
