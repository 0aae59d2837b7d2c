// Serial reference vs OpenMP kernels on the O(m^2) history sums.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fracnoether/kernels.hpp"

namespace k = fracnoether::kernels;

namespace {

using Kernel = void (*)(std::span<const double>, double, double, std::span<double>);

template <Kernel kernel>
void run(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const double h = 1.0 / static_cast<double>(m);
  std::vector<double> f(m + 1), out(m + 1);
  for (std::size_t i = 0; i <= m; ++i) f[i] = std::sin(3.0 * i * h) + i * h * i * h;
  for (auto _ : state) {
    kernel(f, h, 0.5, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

#define FRACNOETHER_BENCH(fn) \
  BENCHMARK(run<fn>)->Name(#fn)->Arg(1000)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared)

FRACNOETHER_BENCH(k::serial::l1_left);
FRACNOETHER_BENCH(k::parallel::l1_left);
FRACNOETHER_BENCH(k::serial::l1_right);
FRACNOETHER_BENCH(k::parallel::l1_right);
FRACNOETHER_BENCH(k::serial::gl_left);
FRACNOETHER_BENCH(k::parallel::gl_left);
FRACNOETHER_BENCH(k::serial::integral_left);
FRACNOETHER_BENCH(k::parallel::integral_left);

BENCHMARK_MAIN();
