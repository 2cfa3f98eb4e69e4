#include <benchmark/benchmark.h>

#include "heun/accessory.hpp"
#include "heun/hyp2f1.hpp"
#include "heun/recurrence.hpp"
#include "heun/sampling.hpp"
#include "heun/solutions.hpp"
#include "heun/verification.hpp"

namespace {

using namespace heun;

// Small z stays on the direct series, large z goes through Pfaff.
void BM_Hyp2F1(benchmark::State& state) {
  const double z = state.range(0) / 100.0;
  const Hyp2F1Args args{0.7, -1.3, 2.4, z};
  for (auto _ : state) benchmark::DoNotOptimize(hyp2f1(args));
}
BENCHMARK(BM_Hyp2F1)->Arg(10)->Arg(45)->Arg(55)->Arg(90);

void BM_GenerateCoefficients(benchmark::State& state) {
  const auto p = make_params(0.35, 0.55, 0.45, 0.7, -0.35, 0.2, 3);
  const RecurrenceContext ctx(p, Gamma0Choice::kGamma);
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_coefficients(ctx, K));
  state.SetComplexityN(K);
}
BENCHMARK(BM_GenerateCoefficients)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_SolveQ(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto p = sample_terminating_params(Gamma0Choice::kGamma, N, 7);
  const ExpansionSpec spec{Gamma0Choice::kGamma, Frame::kDirectZ, Terminating{N}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_q(q_polynomial(p, spec, N)));
}
// ε = −N must stay inside the sampling box, so N ≤ 5.
BENCHMARK(BM_SolveQ)->DenseRange(0, 4, 1);

void BM_VerifySolution(benchmark::State& state) {
  const auto p = sample_terminating_params(Gamma0Choice::kGamma, 2, 11);
  const ExpansionSpec spec{Gamma0Choice::kGamma, Frame::kDirectZ, Terminating{2}};
  double q = 0;
  for (const auto& r : solve_q(q_polynomial(p, spec, 2))) {
    if (r.is_real) q = r.value.real();
  }
  const auto form = build_finite_solution(p, spec, q).form;
  VerificationOptions options;
  options.run_oracle = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_solution(form, options));
}
BENCHMARK(BM_VerifySolution)->Arg(0)->Arg(1)->ArgNames({"oracle"});

}  // namespace
BENCHMARK_MAIN();
