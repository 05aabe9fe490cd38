// Copyright 2026 The hazkw Authors
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

#include "hazkw/bounds.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/implicants.hpp"
#include "hazkw/mux_synth.hpp"
#include "hazkw/transforms.hpp"

namespace {

using namespace hazkw;

void BM_ExactRank(benchmark::State& state) {
  const auto m = subcube_intersect_kronecker(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(m));
}
BENCHMARK(BM_ExactRank)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SynthSizeOptimal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synth_size_optimal(n));
}
BENCHMARK(BM_SynthSizeOptimal)->DenseRange(2, 8, 2);

void BM_SynthDepthOptimal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synth_depth_optimal(n));
}
BENCHMARK(BM_SynthDepthOptimal)->DenseRange(2, 8, 2);

void BM_Certify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Formula f = synth_size_optimal(n);
  const ImplicantSet ones = mux_prime_implicants(n);
  const ImplicantSet zeros = mux_prime_implicates(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_hazard_free(f, ones.words, zeros.words));
}
BENCHMARK(BM_Certify)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveHazards(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Formula f = synth_size_optimal(n);
  const TruthTable t = TruthTable::mux(n);
  for (auto _ : state) benchmark::DoNotOptimize(find_hazards(f, t));
}
BENCHMARK(BM_ExhaustiveHazards)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DepthReduce(benchmark::State& state) {
  // A left comb has depth equal to its size minus one.
  const auto leaves = static_cast<std::uint32_t>(state.range(0));
  NodePtr root = node::literal(1);
  for (std::uint32_t i = 1; i < leaves; ++i)
    root = i % 2 ? node::conj(root, node::literal(i % 8 + 1))
                 : node::disj(root, node::literal(i % 8 + 1, true));
  const Formula f(root, 8);
  for (auto _ : state) benchmark::DoNotOptimize(depth_reduce(f));
}
BENCHMARK(BM_DepthReduce)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
