#include <benchmark/benchmark.h>

#include "fakesurf/canon.hpp"
#include "fakesurf/multigraph.hpp"
#include "fakesurf/presentation.hpp"
#include "fakesurf/surface.hpp"

using namespace fakesurf;

static void BM_EnumerateSkeleta(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_skeleta(t));
}
BENCHMARK(BM_EnumerateSkeleta)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

// Full gluing search over the first skeleton of a complexity.
static void BM_EnumerateGluings(benchmark::State& state) {
  const auto s = enumerate_skeleta(static_cast<int>(state.range(0)))[0];
  std::size_t leaves = 0;
  for (auto _ : state) {
    leaves = 0;
    enumerate_gluings(s, {}, [&](const GluingConfig&, std::uint64_t) { ++leaves; });
  }
  state.counters["surfaces"] = static_cast<double>(leaves);
}
BENCHMARK(BM_EnumerateGluings)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Canonicalize(benchmark::State& state) {
  auto s = std::make_shared<const Skeleton>(enumerate_skeleta(static_cast<int>(state.range(0)))[0]);
  std::vector<WordList> words;
  enumerate_gluings(*s, {}, [&](const GluingConfig& g, std::uint64_t) {
    if (words.size() < 256) words.push_back(trace_gluing(*s, g));
  });
  Canonicalizer canon(s);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canon.canonical(words[i++ % words.size()]));
}
BENCHMARK(BM_Canonicalize)->DenseRange(2, 5);

static void BM_CosetEnumeration(benchmark::State& state) {
  const char* texts[] = {"a,b|a^2,b^3,(ab)^5", "x,y|x^5y^-3,y^3(xy)^-2", "a,b|a^2b^-3,a^3b^-4"};
  const auto p = parse_presentation(texts[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(coset_enumerate(p));
}
BENCHMARK(BM_CosetEnumeration)->DenseRange(0, 2);
BENCHMARK_MAIN();
