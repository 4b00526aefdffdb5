// Microbenchmarks for the hot paths: basis enumeration, Hamiltonian
// assembly, dense diagonalization, and the symmetry commutator sweep.

#include <benchmark/benchmark.h>

#include "anyonchain/chains.hpp"
#include "anyonchain/fusion.hpp"
#include "anyonchain/global_action.hpp"
#include "anyonchain/spectra.hpp"

namespace {

using namespace anyonchain;

constexpr CouplingParams kParams{1.0, -0.5};

void BM_EnumeratePaths(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PathBasis basis(length, PathConstraint::free_ends());
    benchmark::DoNotOptimize(basis.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumeratePaths)->DenseRange(8, 16, 2)->Complexity();

void BM_AssembleOpenSpin(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChainOperator op = build_open_spin(length, kParams);
    benchmark::DoNotOptimize(op.sparse().nonZeros());
  }
}
BENCHMARK(BM_AssembleOpenSpin)->DenseRange(4, 10, 2);

void BM_AssembleOpenAnyon(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChainOperator op = build_open_anyon(length, kParams);
    benchmark::DoNotOptimize(op.sparse().nonZeros());
  }
}
BENCHMARK(BM_AssembleOpenAnyon)->DenseRange(4, 10, 2);

void BM_AssemblePeriodicAnyon(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChainOperator op = build_periodic_anyon(length, kParams, true);
    benchmark::DoNotOptimize(op.sparse().nonZeros());
  }
}
BENCHMARK(BM_AssemblePeriodicAnyon)->DenseRange(4, 10, 2);

void BM_Diagonalize(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const ChainOperator op = build_open_spin(length, kParams);
  for (auto _ : state) {
    EigenSystem system = diagonalize(op);
    benchmark::DoNotOptimize(system.values.size());
  }
}
BENCHMARK(BM_Diagonalize)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

void BM_SpectrumWithSectors(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const ChainOperator op = build_open_spin(length, kParams);
  for (auto _ : state) {
    Spectrum spectrum = compute_spectrum(op);
    benchmark::DoNotOptimize(spectrum.levels.size());
  }
}
BENCHMARK(BM_SpectrumWithSectors)
    ->DenseRange(3, 6, 1)
    ->Unit(benchmark::kMillisecond);

void BM_SymmetryCheck(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const ChainOperator op = build_open_spin(length, kParams);
  const MatrixXc dense = op.dense();
  for (auto _ : state) {
    SymmetryCheck check = check_d3_symmetry(dense, op.spin_basis(), 1e-11);
    benchmark::DoNotOptimize(check.max_commutator);
  }
}
BENCHMARK(BM_SymmetryCheck)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

}  // namespace
