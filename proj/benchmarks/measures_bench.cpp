/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "emq/axioms.hpp"
#include "emq/measures.hpp"

namespace {

std::vector<double> Simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0;
  for (double& x : v) s += (x = e(rng));
  for (double& x : v) x /= s;
  return v;
}

// Raw kernel throughput per measure, codeframe size from the range argument.
void BM_Kernel(benchmark::State& state) {
  const auto m = emq::kAllMeasures[static_cast<std::size_t>(state.range(0))];
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  const auto p = Simplex(rng, n), q = Simplex(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(emq::kernel::Score(m, p, q, 5e-7));
  state.SetLabel(std::string(emq::MeasureName(m)));
}
BENCHMARK(BM_Kernel)->ArgsProduct({benchmark::CreateDenseRange(0, 9, 1), {2, 8, 64}});

void BM_Score(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto cf = emq::Codeframe::Numbered(8);
  const auto p = emq::ValidatePrevalence(cf, Simplex(rng, 8));
  const auto q = emq::ValidatePrevalence(cf, Simplex(rng, 8));
  const emq::EvalContext ctx{emq::SmoothingConfig::FromEpsilon(5e-7),
                             emq::SmoothingMode::kPerMeasure};
  for (auto _ : state) benchmark::DoNotOptimize(emq::Score(emq::Measure::kKLD, p, q, ctx));
}
BENCHMARK(BM_Score);

// One property check, fixed scenarios plus `budget` random trials.
void BM_CheckProperty(benchmark::State& state) {
  emq::CheckOptions options;
  options.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(emq::CheckProperty(emq::Measure::kNAE, emq::Property::kMAX, options));
  }
}
BENCHMARK(BM_CheckProperty)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
