#include <benchmark/benchmark.h>

#include "tekl/checker.hpp"
#include "tekl/ekb.hpp"
#include "tekl/engine.hpp"
#include "tekl/parser.hpp"
#include "tekl/trace_io.hpp"

namespace {

using namespace tekl;

Trace fig_seq() {
  return load_trace_file(std::string(TEKL_TEST_DATA_DIR) + "/fig_seq.trace.json");
}

void BM_DeriveWindowThreshold(benchmark::State& state) {
  Trace tr = fig_seq();
  std::vector<Formula> gamma = ekb_union(tr, "i", Timestamp(0), Timestamp(4));
  Formula goal = parse_formula("K[3,i] loc[3](alice,pub)");
  Window w(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive(gamma, goal, w).proved);
  }
}
BENCHMARK(BM_DeriveWindowThreshold)->Arg(2)->Arg(3);

void BM_UnfoldQuantifiers(benchmark::State& state) {
  Trace tr = fig_seq();
  Formula f =
      parse_formula("K[0,i] forall t . forall j : Ag[t] . event[t](j,pub) => loc[t](j,pub)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(unfold_quantifiers(f, tr).size());
  }
}
BENCHMARK(BM_UnfoldQuantifiers);

void BM_SatisfiesEphemerality(benchmark::State& state) {
  TraceLoadOptions opts;
  opts.params.omega = Window(10);
  Trace tr = load_trace_file(std::string(TEKL_TEST_DATA_DIR) + "/snapchat.trace.json", opts);
  FrameworkParams params;
  params.omega = Window(10);
  Checker checker(tr, params);
  Formula f = parse_formula("forall t . 0 <= t && t <= 10 => K[t,alice] picture[0](bob,pub)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(checker.satisfies(f).holds);
  }
}
BENCHMARK(BM_SatisfiesEphemerality);

}  // namespace

BENCHMARK_MAIN();
