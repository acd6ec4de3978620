// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/integrals.hpp>
#include <fermicorr/measures.hpp>
#include <fermicorr/rdm.hpp>
#include <fermicorr/solver.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace fermicorr;

const IntegralTable& water() {
  static const IntegralTable t = parse_fcidump_file(FERMICORR_WATER_FIXTURE);
  return t;
}

const BasisPtr& water_basis() {
  static const BasisPtr b = make_basis(7, 5, 5);
  return b;
}

const Eigenpairs& water_pairs() {
  static const Eigenpairs e = eigensolve(build_hamiltonian(*water_basis(), water()));
  return e;
}

void BM_ParseFcidump(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_fcidump_file(FERMICORR_WATER_FIXTURE));
}
BENCHMARK(BM_ParseFcidump)->Unit(benchmark::kMicrosecond);

void BM_BuildHamiltonian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(*water_basis(), water()));
}
BENCHMARK(BM_BuildHamiltonian)->Unit(benchmark::kMillisecond);

void BM_BuildHamiltonianRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = model_table(ModelKind::random_symmetric, n, 1);
  const auto b = make_basis(n, n / 2, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(*b, t));
  state.counters["dim"] = static_cast<double>(b->size());
}
BENCHMARK(BM_BuildHamiltonianRandom)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Eigensolve(benchmark::State& state) {
  const Eigen::MatrixXd h = build_hamiltonian(*water_basis(), water());
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(h));
}
BENCHMARK(BM_Eigensolve)->Unit(benchmark::kMillisecond);

void BM_TwoBodyRdm(benchmark::State& state) {
  const WaveFunction gs = eigenstate(water_pairs(), 0, water_basis());
  for (auto _ : state) benchmark::DoNotOptimize(two_body(gs));
}
BENCHMARK(BM_TwoBodyRdm)->Unit(benchmark::kMicrosecond);

void BM_ReportGroundState(benchmark::State& state) {
  const WaveFunction gs = eigenstate(water_pairs(), 0, water_basis());
  for (auto _ : state) benchmark::DoNotOptimize(report(gs));
}
BENCHMARK(BM_ReportGroundState)->Unit(benchmark::kMillisecond);

void BM_ReportThermal(benchmark::State& state) {
  const Ensemble t = thermal_ensemble(water_pairs(), water_basis(), 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(report(t));
}
BENCHMARK(BM_ReportThermal)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
