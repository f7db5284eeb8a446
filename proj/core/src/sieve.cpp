#include <cmath>
#include <cstdint>
#include <vector>

#include "bindiv/arith.hpp"

namespace bindiv::arith {

namespace {

// Primes up to n by a plain sieve of Eratosthenes (odd-only storage).
std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  out.push_back(2);
  std::uint64_t m = (n - 1) / 2;  // odd candidates 3, 5, ..., 2m+1
  std::vector<bool> composite(m + 1, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
    if (composite[i]) continue;
    std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p - 1) / 2; j <= m; j += p) composite[j] = true;
  }
  for (std::uint64_t i = 1; i <= m; ++i) {
    if (!composite[i]) out.push_back(2 * i + 1);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi,
                                     const SieveConfig& cfg) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  std::uint64_t a = lo < 2 ? 2 : static_cast<std::uint64_t>(lo);
  std::uint64_t b = static_cast<std::uint64_t>(hi);
  if (b > cfg.max_hi) {
    throw RangeTooLarge("primes_in: upper end exceeds SieveConfig::max_hi");
  }
  if (b - a > cfg.max_window) {
    throw RangeTooLarge("primes_in: window exceeds SieveConfig::max_window");
  }

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(b)));
  while (root * root > b) --root;
  while ((root + 1) * (root + 1) <= b) ++root;
  std::vector<std::uint64_t> base = small_primes(root);

  if (a <= root) {
    for (std::uint64_t p : base) {
      if (p >= a && p <= b) out.push_back(p);
    }
    if (b <= root) return out;
    a = root + 1;
  }

  std::vector<bool> composite(b - a + 1, false);
  for (std::uint64_t p : base) {
    std::uint64_t first = ((a + p - 1) / p) * p;
    if (first < p * p) first = p * p;
    for (std::uint64_t x = first; x <= b; x += p) composite[x - a] = true;
  }
  for (std::uint64_t x = a; x <= b; ++x) {
    if (!composite[x - a]) out.push_back(x);
  }
  return out;
}

}  // namespace bindiv::arith
