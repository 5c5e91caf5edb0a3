#include <benchmark/benchmark.h>

#include "schatlab/directed_system.hpp"
#include "schatlab/group_rep.hpp"
#include "schatlab/multiplication_rep.hpp"
#include "schatlab/oracles.hpp"
#include "schatlab/sampling.hpp"
#include "schatlab/schatten.hpp"

namespace {

using namespace schatlab;

MeasureSpace bench_space() {
  return MeasureSpace(
      {{"a", 1.0}, {"b", 2.0}},
      {{{0.0, 2.0}, {{{0.0, 1.0}, 1.0}, {{1.0, 2.0}, 0.5}}}});
}

SimpleFunction bench_function() {
  SimpleFunction f;
  f.atom_values["a"] = Complex(1.0, -1.0);
  f.diffuse_values.push_back(
      {{0.0, 2.0},
       {{{0.0, 0.5}, Complex(1.0, 0.0)},
        {{0.5, 1.5}, Complex(0.0, 0.5)},
        {{1.5, 2.0}, Complex(-0.25, 0.0)}}});
  return f;
}

void BM_Svd(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(svd_values(a));
}
BENCHMARK(BM_Svd)->Arg(8)->Arg(16)->Arg(32);

void BM_SchattenNorm(benchmark::State& state) {
  Rng rng(2);
  const ComplexMatrix a = random_matrix(rng, 24, 24);
  const PExponent p = PExponent::finite(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(a, p));
}
BENCHMARK(BM_SchattenNorm);

void BM_BuildTruncation(benchmark::State& state) {
  const MeasureSpace space = bench_space();
  const SimpleFunction f = bench_function();
  const TruncationSchedule sched =
      default_schedule(space, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_truncation(space, f, sched));
}
BENCHMARK(BM_BuildTruncation)->Arg(4)->Arg(8)->Arg(16);

void BM_TracePowerPartial(benchmark::State& state) {
  const MeasureSpace space = bench_space();
  const SimpleFunction f = bench_function();
  const TruncationSchedule sched = default_schedule(space, 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(trace_power_partial(space, f, 2.0, sched));
}
BENCHMARK(BM_TracePowerPartial);

void BM_Induce(benchmark::State& state) {
  const UnitaryRep rep =
      UnitaryRep::regular(FiniteGroup::dihedral(state.range(0)));
  Rng rng(3);
  const GroupFunction f = random_group_function(rng, rep.group());
  for (auto _ : state) benchmark::DoNotOptimize(induce(rep, f));
}
BENCHMARK(BM_Induce)->Arg(3)->Arg(6)->Arg(12);

void BM_CharpolyEigenvalues(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(rng, n, n);
  const ComplexMatrix gram = matmul(adjoint(a), a);
  for (auto _ : state)
    benchmark::DoNotOptimize(hermitian_psd_eigenvalues(gram));
}
BENCHMARK(BM_CharpolyEigenvalues)->Arg(4)->Arg(6)->Arg(8);

void BM_Fig2Measure(benchmark::State& state) {
  const MeasureSpace space = bench_space();
  const SequenceContext ctx =
      SequenceContext::measure_context(space, default_schedule(space, 2));
  const PExponent grid[] = {PExponent::finite(1.0), PExponent::finite(2.0),
                            PExponent::infinity()};
  for (auto _ : state) benchmark::DoNotOptimize(verify_fig2(ctx, grid));
}
BENCHMARK(BM_Fig2Measure);

}  // namespace

BENCHMARK_MAIN();
