// Correction cost against full recomputation across error loads. Instances
// are built outside the timed region; multiply_ec/inverse_ec leave their
// inputs untouched, so one corrupted instance is corrected repeatedly.

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "mec/corrector.hpp"
#include "mec/field.hpp"
#include "mec/matrix.hpp"

namespace {

using namespace mec;

constexpr std::uint64_t kPrime = 2013265921;
constexpr double kEps = 0x1p-30;

Matrix random_matrix(const FieldContext& F, std::size_t m, std::size_t n, std::mt19937_64& rng) {
  Matrix M(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M.set(i, j, F.sample(rng));
  return M;
}

SparseMatrix uniform_noise(const FieldContext& F, std::size_t n, std::size_t k,
                           std::mt19937_64& rng) {
  SparseMatrix N(n, n);
  std::set<std::pair<std::size_t, std::size_t>> used;
  while (used.size() < k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (used.insert({i, j}).second) N.add_at(i, j, F.sample_nonzero(rng), F);
  }
  return N;
}

void BM_Recompute(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  FieldContext F(kPrime, n);
  std::mt19937_64 rng(1);
  Matrix A = random_matrix(F, n, n, rng);
  Matrix B = random_matrix(F, n, n, rng);
  for (auto _ : state) {
    Matrix C = mat_mul(F, A, B);
    benchmark::DoNotOptimize(C);
  }
}

void BM_MultiplyEC(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = static_cast<std::size_t>(state.range(1));
  FieldContext F(kPrime, n);
  std::mt19937_64 rng(2);
  Matrix A = random_matrix(F, n, n, rng);
  Matrix B = random_matrix(F, n, n, rng);
  Matrix C = mat_mul(F, A, B);
  SparseMatrix N = uniform_noise(F, n, k, rng);
  for (const auto& e : N.entries()) C.set(e.row, e.col, F.add(C.at(e.row, e.col), e.value));
  for (auto _ : state) {
    auto rep = multiply_ec(F, A, B, C, kEps, rng);
    benchmark::DoNotOptimize(rep);
  }
}

void BM_InverseEC(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = static_cast<std::size_t>(state.range(1));
  FieldContext F(kPrime, n);
  std::mt19937_64 rng(3);
  Matrix A = random_matrix(F, n, n, rng);
  Matrix B;
  while (true) {
    try {
      B = gauss_inverse(F, A);
      break;
    } catch (const SingularInput&) {
      A = random_matrix(F, n, n, rng);
    }
  }
  SparseMatrix N = uniform_noise(F, n, k, rng);
  for (const auto& e : N.entries()) B.set(e.row, e.col, F.add(B.at(e.row, e.col), e.value));
  for (auto _ : state) {
    auto rep = inverse_ec(F, A, B, kEps, rng);
    benchmark::DoNotOptimize(rep);
  }
}

}  // namespace

BENCHMARK(BM_Recompute)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyEC)
    ->Args({64, 1})
    ->Args({64, 16})
    ->Args({128, 1})
    ->Args({128, 16})
    ->Args({128, 256})
    ->Args({256, 1})
    ->Args({256, 16})
    ->Args({512, 16})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseEC)
    ->Args({64, 1})
    ->Args({64, 16})
    ->Args({128, 1})
    ->Args({128, 16})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
