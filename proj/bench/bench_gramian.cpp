// SPDX-License-Identifier: Apache-2.0
//
// holo: near-field polarized XL-MIMO channel and capacity toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference against the OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "holo/channel.hpp"
#include "holo/parallel.hpp"

using namespace holo;

namespace
{

ArraySpec panel(benchmark::State& state)
{
    const auto m = static_cast<int>(state.range(0));
    return ArraySpec{0.005, m, m / 4, 3};
}

RxSpec receiver(benchmark::State& state)
{
    return RxSpec::line({0.1, 0.2, 3.0}, static_cast<int>(state.range(1)), 0.005, 3);
}

void BM_GramianSerial(benchmark::State& state)
{
    const ArraySpec a = panel(state);
    const RxSpec rx = receiver(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::finite_gramian(a, rx, 3.0, 0.01).w.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.num_elements()));
}

void BM_GramianParallel(benchmark::State& state)
{
    const ArraySpec a = panel(state);
    const RxSpec rx = receiver(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(finite_gramian(a, rx, 3.0, 0.01).w.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.num_elements()));
    state.counters["threads"] = par::max_threads();
}

void BM_ChannelSerial(benchmark::State& state)
{
    const ArraySpec a = panel(state);
    const RxSpec rx = receiver(state);
    const PhysicalConstants c{};
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::stack_channel(a, rx, c, ChannelModel::exact).entries.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.num_elements()));
}

void BM_ChannelParallel(benchmark::State& state)
{
    const ArraySpec a = panel(state);
    const RxSpec rx = receiver(state);
    const PhysicalConstants c{};
    for (auto _ : state)
        benchmark::DoNotOptimize(stack_channel(a, rx, c, ChannelModel::exact).entries.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.num_elements()));
    state.counters["threads"] = par::max_threads();
}

} // namespace

BENCHMARK(BM_GramianSerial)->Args({40, 1})->Args({200, 1})->Args({200, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramianParallel)->Args({40, 1})->Args({200, 1})->Args({200, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelSerial)->Args({40, 1})->Args({100, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelParallel)->Args({40, 1})->Args({100, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
