#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "bindiv/arith.hpp"
#include "bindiv/covering.hpp"
#include "bindiv/divisors.hpp"
#include "bindiv/progression.hpp"
#include "bindiv/serialize.hpp"

using namespace bindiv;

namespace {

covering::CoverCertificate load_cert(const char* name) {
  std::ifstream in(std::string(BINDIV_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return serialize::certificate_from_json(ss.str());
}

void BM_factorize_semiprime64(benchmark::State& state) {
  // Two primes straddling 2^31; the product needs Pollard rho.
  mpz_class p, q;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 31);
  mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  q = p + 1000;
  mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
  mpz_class n = p * q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::factorize(n));
  }
}
BENCHMARK(BM_factorize_semiprime64);

void BM_kummer_300_digit(benchmark::State& state) {
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), 10, 300);
  n += 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::kummer_valuation(13, n, 430));
  }
}
BENCHMARK(BM_kummer_300_digit);

void BM_largest_divisor_m0(benchmark::State& state) {
  mpz_class m0{"13085213870159810495"};
  auto f = divisors::binomial_factorization(m0, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(divisors::largest_divisor_at_most(f, m0));
  }
}
BENCHMARK(BM_largest_divisor_m0);

void BM_verify_k430(benchmark::State& state) {
  auto cert = load_cert("k430.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(covering::verify_certificate(cert));
  }
}
BENCHMARK(BM_verify_k430);

void BM_exhaustive_search_k15(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        covering::search_certificate(15, 2, covering::SearchStrategy::kExhaustive));
  }
}
BENCHMARK(BM_exhaustive_search_k15);

void BM_progression_audit_k430(benchmark::State& state) {
  auto spec = progression::build_progression(load_cert("k430.json"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(progression::verify_progression(spec, 1, true));
  }
}
BENCHMARK(BM_progression_audit_k430);

void BM_smooth_count_1e6_y100(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::smooth_count(1000000, 100));
  }
}
BENCHMARK(BM_smooth_count_1e6_y100);

void BM_scan_n60(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(divisors::scan_min_ratio(60, 1));
  }
}
BENCHMARK(BM_scan_n60);

}  // namespace

BENCHMARK_MAIN();
