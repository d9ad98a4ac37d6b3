/*
 * Copyright 2026 The qfrelay Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference kernel vs the OpenMP kernel on one operating point.

#include <benchmark/benchmark.h>

#include "qfrelay/sweep.hpp"

namespace {

using namespace qfrelay;

RelayLink make_link(const QuantizerSpec &spec) {
  LinkConfig lc;
  lc.spec = spec;
  lc.sigma2 = snr_db_to_sigma2(10.0);
  return RelayLink(lc);
}

constexpr std::uint64_t kTrials = 4096;

void BM_Serial(benchmark::State &state) {
  const RelayLink link = make_link(QuantizerSpec::hapq(4, 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(count_bit_errors_serial(link, 1, 0, kTrials));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}
BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Parallel(benchmark::State &state) {
  const RelayLink link = make_link(QuantizerSpec::hapq(4, 2));
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(count_bit_errors_parallel(link, 1, 0, kTrials, workers));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}
BENCHMARK(BM_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Trial(benchmark::State &state) {
  const QuantizerSpec specs[] = {QuantizerSpec::af(), QuantizerSpec::upq(8), QuantizerSpec::uapq(8, 4),
                                 QuantizerSpec::hapq(4, 2)};
  const RelayLink link = make_link(specs[state.range(0)]);
  std::uint32_t t = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(link.run_trial(1, 0, t++));
  state.SetLabel(specs[state.range(0)].to_string());
}
BENCHMARK(BM_Trial)->DenseRange(0, 3);

} // namespace

BENCHMARK_MAIN();
