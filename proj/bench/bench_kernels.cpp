#include <benchmark/benchmark.h>

#include "canonica/generators.hpp"
#include "canonica/kernels.hpp"

using namespace canonica;

namespace {

template <void (*Gemm)(std::size_t, std::size_t, std::size_t, const Complex*, const Complex*, Complex*)>
void bm_gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gen::Rng rng(1);
  const Matrix a = gen::gaussian(n, n, rng), b = gen::gaussian(n, n, rng);
  Matrix c(n, n);
  for (auto _ : state) {
    Gemm(n, n, n, a.data().data(), b.data().data(), c.data().data());
    benchmark::DoNotOptimize(c.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n * n));
}

template <void (*Rot)(std::size_t, Complex*, Complex*, const kernels::Rotation&)>
void bm_rotate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gen::Rng rng(2);
  Matrix x = gen::gaussian(1, n, rng), y = gen::gaussian(1, n, rng);
  const double c = 0.8, s = 0.6;
  const kernels::Rotation r{c, s, -s, c};
  for (auto _ : state) {
    Rot(n, x.data().data(), y.data().data(), r);
    benchmark::DoNotOptimize(x.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(bm_gemm<kernels::serial::gemm>)->Name("gemm/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_gemm<kernels::parallel::gemm>)->Name("gemm/parallel")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(bm_rotate<kernels::serial::rotate_pair>)->Name("rotate/serial")->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(bm_rotate<kernels::parallel::rotate_pair>)->Name("rotate/parallel")->RangeMultiplier(8)->Range(64, 1 << 18);

BENCHMARK_MAIN();
