// Copyright 2026 The bstghz Authors
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

// Serial reference vs. OpenMP kernels on the exhaustive searches.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "bstghz/common_cause.hpp"
#include "bstghz/ghz.hpp"
#include "bstghz/sweep.hpp"

namespace {

using namespace bst;

Execution mode(const benchmark::State &state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State &state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_Refute(benchmark::State &state) {
    static const auto structure = ghz::build_abstract_structure();
    const auto contexts = ghz::theorem_contexts();
    RefuteOptions opt;
    opt.exec = mode(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refute_joint_common_cause(structure, contexts, opt).survivors);
    }
    label(state);
}
BENCHMARK(BM_Refute)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConsistencyGradeStar(benchmark::State &state) {
    static const auto g = ghz::build_concrete_model();
    const auto &ns = g.scenario.nspread(ghz::kSigmaStar123);
    for (auto _ : state) {
        benchmark::DoNotOptimize(consistency_grade(g.scenario.model(), ns, mode(state)).one);
    }
    label(state);
}
BENCHMARK(BM_ConsistencyGradeStar)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ValueSearch(benchmark::State &state) {
    const auto cs = ghz::ghz_product_constraints();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghz::value_assignment_search(cs, mode(state)).satisfying);
    }
    label(state);
}
BENCHMARK(BM_ValueSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ContextualSearch(benchmark::State &state) {
    const auto cs = ghz::ghz_product_constraints();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghz::contextual_assignment_search(cs, mode(state)).satisfying);
    }
    label(state);
}
BENCHMARK(BM_ContextualSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

// Raw sweep cost with a cheap hash predicate, no library logic.
void BM_Sweep(benchmark::State &state) {
    const auto n = static_cast<std::uint64_t>(state.range(1));
    auto pred = [](std::uint64_t i) { return ((i * 0x9E3779B97F4A7C15ULL) >> 61) == 0; };
    for (auto _ : state) {
        auto r = state.range(0) == 0 ? sweep_serial(n, pred, 16) : sweep_parallel(n, pred, 16);
        benchmark::DoNotOptimize(r.count);
    }
    label(state);
}
BENCHMARK(BM_Sweep)->ArgsProduct({{0, 1}, {1 << 12, 1 << 20}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
