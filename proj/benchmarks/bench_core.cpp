#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/fraisse.hpp"
#include "cantordyn/morphisms.hpp"
#include "cantordyn/odometer.hpp"
#include "cantordyn/spiral.hpp"
#include "cantordyn/tower.hpp"

using namespace cantordyn;

namespace {

void BM_SpiralLevelBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    spiral::Level level(n);
    benchmark::DoNotOptimize(level.system().size());
  }
}
BENCHMARK(BM_SpiralLevelBuild)->Arg(1)->Arg(2)->Arg(3);

void BM_CollapseMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const spiral::Level high(n + 1), low(n);
  for (auto _ : state) {
    const EquivariantMap xi = spiral::collapse_map(high, low);
    benchmark::DoNotOptimize(xi.assignment().data());
  }
}
BENCHMARK(BM_CollapseMap)->Arg(1)->Arg(2);

void BM_WanderingStates(benchmark::State& state) {
  const spiral::Level level(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto wandering = wandering_states(level.system());
    benchmark::DoNotOptimize(wandering.size());
  }
}
BENCHMARK(BM_WanderingStates)->Arg(2)->Arg(3);

void BM_MorphismSearch(benchmark::State& state) {
  const FiniteSystem source = FiniteSystem::cycle(60);
  const FiniteSystem target = FiniteSystem::from_cycle_type({2, 3, 5});
  for (auto _ : state) {
    const auto maps = find_equivariant_maps(source, target);
    benchmark::DoNotOptimize(maps.size());
  }
}
BENCHMARK(BM_MorphismSearch);

void BM_Amalgamate(benchmark::State& state) {
  const FiniteSystem base = FiniteSystem::cycle(2);
  const FiniteSystem left = FiniteSystem::from_cycle_type({4, 4});
  const FiniteSystem right = FiniteSystem::cycle(6);
  const EquivariantMap f(left, base, {0, 1, 0, 1, 0, 1, 0, 1});
  const EquivariantMap g(right, base, {0, 1, 0, 1, 0, 1});
  const fraisse::AmalgamProblem problem{base, f, g};
  for (auto _ : state) {
    const auto solution = fraisse::amalgamate(problem);
    benchmark::DoNotOptimize(fraisse::verify_amalgam(problem, solution));
  }
}
BENCHMARK(BM_Amalgamate);

void BM_GenericChain(benchmark::State& state) {
  const std::size_t depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const tower::Tower chain = fraisse::generic_chain({2, 3, 4}, depth);
    benchmark::DoNotOptimize(chain.levels.back().size());
  }
}
BENCHMARK(BM_GenericChain)->Arg(3)->Arg(5);

void BM_Conjugacy(benchmark::State& state) {
  const odometer::Spec a = odometer::Spec::parse("8,9:7");
  const odometer::Spec b = odometer::Spec::parse("2,10");
  for (auto _ : state) {
    benchmark::DoNotOptimize(odometer::conjugate(a, b));
  }
}
BENCHMARK(BM_Conjugacy);

void BM_CyclicRefinementChain(benchmark::State& state) {
  const tower::Tower t =
      tower::from_odometer(odometer::Spec::parse("2,3"), 6);
  for (auto _ : state) {
    const auto chain = tower::cyclic_refinement_chain(t, 4);
    benchmark::DoNotOptimize(chain.has_value());
  }
}
BENCHMARK(BM_CyclicRefinementChain);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
