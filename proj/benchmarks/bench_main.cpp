#include <benchmark/benchmark.h>

#include "insolv/arith.hpp"
#include "insolv/decide.hpp"
#include "insolv/reduction.hpp"
#include "insolv/scan.hpp"

namespace {

void BM_IsPrime64(benchmark::State& state) {
  std::uint64_t n = 2305843009213693951ull;  // 2^61 - 1
  for (auto _ : state) benchmark::DoNotOptimize(insolv::arith::is_prime(n));
}
BENCHMARK(BM_IsPrime64);

void BM_FactorizeSmooth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(insolv::arith::factorize(963761198400));
}
BENCHMARK(BM_FactorizeSmooth);

void BM_FactorizeSemiprime(benchmark::State& state) {
  std::int64_t n = std::int64_t{1000003} * 1000033;
  for (auto _ : state) benchmark::DoNotOptimize(insolv::arith::factorize(n));
}
BENCHMARK(BM_FactorizeSemiprime);

void BM_MultiplicativeOrder(benchmark::State& state) {
  auto pm1 = insolv::arith::factorize(999982);
  for (auto _ : state)
    benchmark::DoNotOptimize(insolv::arith::multiplicative_order(2, 999983, pm1));
}
BENCHMARK(BM_MultiplicativeOrder);

void BM_PrimesIn(benchmark::State& state) {
  for (auto _ : state) {
    auto primes = insolv::arith::primes_in(0, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(primes.size());
  }
}
BENCHMARK(BM_PrimesIn)->Arg(100000)->Arg(1000000);

void BM_SolveSystemUnsat(benchmark::State& state) {
  insolv::reduction::IncongruenceSystem sys;
  sys.modulus_log2 = 2;
  sys.num_vars = 8;
  // A zero row forces full exhaustion of 4^8 assignments.
  sys.rows.push_back(insolv::reduction::Row{std::vector<std::uint64_t>(8, 0), 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(insolv::decide::solve_system(sys));
}
BENCHMARK(BM_SolveSystemUnsat);

void BM_Scan(benchmark::State& state) {
  const std::vector<std::pair<std::int64_t, std::int64_t>> prs = {
      {2, -4}, {3, -9}, {4, 2}, {9, 3}, {2, 5}};
  auto cs = insolv::reduction::build_conditions(prs);
  insolv::scan::Options opts;
  opts.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = insolv::scan::scan(prs, cs, 3, 200000, opts);
    benchmark::DoNotOptimize(rep.matching_count);
  }
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
