#include <benchmark/benchmark.h>

#include <random>

#include "nctorus/automorphy.hpp"
#include "nctorus/crossed.hpp"
#include "nctorus/deform.hpp"
#include "nctorus/norms.hpp"

using namespace nctorus;

namespace {

FourierElement random_element(const GroupContext& ctx, std::size_t support, std::int64_t radius, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FourierElement::Coeffs c;
  while (c.size() < support) {
    std::vector<std::int64_t> p(ctx.rank());
    for (auto& x : p) x = coord(rng);
    c[ctx.point(p)] = Complex(unit(rng), unit(rng));
  }
  return FourierElement(ctx, std::move(c));
}

void BM_Star(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto ctx = GroupContext::lattice(2);
  const auto support = static_cast<std::size_t>(state.range(0));
  const auto a = random_element(ctx, support, 20, rng);
  const auto b = random_element(ctx, support, 20, rng);
  const auto sigma = Bicharacter::from_form(ctx, SkewForm::standard_symplectic(2), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(star(a, b, sigma));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Star)->RangeMultiplier(4)->Range(4, 256)->Complexity(benchmark::oNSquared);

void BM_NormDense(benchmark::State& state) {
  const auto ctx = GroupContext::lattice(2);
  const auto a = FourierElement::delta(ctx, GroupPoint{1, 0}) + FourierElement::delta(ctx, GroupPoint{0, 1});
  const auto sigma = Bicharacter::from_form(ctx, SkewForm::standard_symplectic(2), 0.3);
  NormOptions options;
  options.dense_limit = 1u << 20;
  const Window w{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_norm(a, sigma, w, options).value);
}
BENCHMARK(BM_NormDense)->Arg(4)->Arg(8)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NormPower(benchmark::State& state) {
  const auto ctx = GroupContext::lattice(2);
  const auto a = FourierElement::delta(ctx, GroupPoint{1, 0}) + FourierElement::delta(ctx, GroupPoint{0, 1});
  const auto sigma = Bicharacter::from_form(ctx, SkewForm::standard_symplectic(2), 0.3);
  NormOptions options;
  options.dense_limit = 0;
  const Window w{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_norm(a, sigma, w, options).value);
}
BENCHMARK(BM_NormPower)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NormSeeded(benchmark::State& state) {
  const auto ctx = GroupContext::lattice(2);
  const auto a = FourierElement::delta(ctx, GroupPoint{1, 0}) + FourierElement::delta(ctx, GroupPoint{0, 1});
  const auto sigma = Bicharacter::from_form(ctx, SkewForm::standard_symplectic(2), 0.3);
  const Window w{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_norm(a, sigma, w).value);
}
BENCHMARK(BM_NormSeeded)->Arg(24)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Rieffel(benchmark::State& state) {
  const auto n = state.range(0);
  const auto ctx = GroupContext::finite({n});
  const auto e = Bicharacter::finite(ctx, IntMatrix::Identity(1, 1));
  const auto t = LinearMap::modular(IntMatrix::Constant(1, 1, 1), n);
  std::vector<Complex> va(static_cast<std::size_t>(n)), vb(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    va[i] = Complex(1.0 / (1 + i), 0.5);
    vb[i] = Complex(0.25, 1.0 / (2 + i));
  }
  const FiniteVector a(ctx, va), b(ctx, vb);
  for (auto _ : state) benchmark::DoNotOptimize(rieffel_product_finite(a, b, e, t));
}
BENCHMARK(BM_Rieffel)->Arg(5)->Arg(16)->Arg(64);

void BM_SolveAutomorphy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<std::size_t>> act(n, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x) act[k][x] = (k + x) % n;
  }
  const GammaAction action(GroupTable::cyclic(n), act);
  const auto tau = TauCocycle::trivial(action);
  for (auto _ : state) benchmark::DoNotOptimize(solve_automorphy(action, tau, 4));
}
BENCHMARK(BM_SolveAutomorphy)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
