// Deliberately naive reference implementations, independent of the library
// code under test. Everything here is O(slow) trial division and addition.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracles {

inline std::map<std::uint64_t, std::uint64_t> factor(std::uint64_t n) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

// Additive Pascal recurrence, row by row.
inline mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::vector<mpz_class> row{1};
  for (std::uint64_t r = 1; r <= n; ++r) {
    std::vector<mpz_class> next(r + 1, 1);
    for (std::uint64_t j = 1; j < r; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

inline std::vector<std::uint64_t> divisors_of(std::uint64_t v) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d != v / d) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline std::uint64_t valuation(std::uint64_t p, mpz_class m) {
  std::uint64_t v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

inline bool is_smooth(std::uint64_t m, std::uint64_t y) {
  for (std::uint64_t p = 2; p <= m; ++p) {
    while (m % p == 0) {
      if (p > y) return false;
      m /= p;
    }
  }
  return true;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oracles
