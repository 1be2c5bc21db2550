// Serial reference against the OpenMP kernels. The second argument of every
// benchmark selects the path: 0 serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "reebscape/brute_force.hpp"
#include "reebscape/liftcheck.hpp"
#include "reebscape/scenario.hpp"
#include "reebscape/sweep.hpp"

using namespace reebscape;

namespace {

const Construction& scenario(const std::string& name) {
  static std::map<std::string, Construction> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Scenario s;
    s.name = name;
    it = cache.emplace(name, build_construction(s)).first;
  }
  return it->second;
}

void BM_Rasterize(benchmark::State& st) {
  const PlanarRegion& r = scenario("thm1-truncated").region;
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(rasterize(r, {n, 2 * n}, st.range(1) != 0));
  st.SetItemsProcessed(st.iterations() * 2 * n * n);
}
BENCHMARK(BM_Rasterize)->ArgsProduct({{256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BruteForceReeb(benchmark::State& st) {
  const PlanarRegion& r = scenario("thm3-case3").region;
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_reeb(r, {512, 512}, st.range(0) != 0));
}
BENCHMARK(BM_BruteForceReeb)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildReeb(benchmark::State& st) {
  static const char* names[] = {"thm1", "thm3-case3", "thm3-case1"};
  const Construction& c = scenario(names[st.range(0)]);
  SweepOptions o;
  o.periodic = c.periodic;
  o.parallel = st.range(1) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(build_reeb(c.region, o));
  st.SetLabel(names[st.range(0)]);
}
BENCHMARK(BM_BuildReeb)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SampleZeroSet(benchmark::State& st) {
  const SuspensionMap& m = scenario("thm3-case3").map;
  for (auto _ : st) benchmark::DoNotOptimize(sample_zero_set(m, 1000, 1, st.range(0) != 0));
}
BENCHMARK(BM_SampleZeroSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
