#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "bindiv/arith.hpp"

namespace bindiv::divisors {

struct DivisorSearchConfig {
  // Meet-in-the-middle engages when the factorization's total divisor count
  // is at most this; otherwise branch-and-bound over prime-power choices.
  mpz_class mitm_divisor_limit = mpz_class{1} << 24;
};

/// The k-smooth/rough split of one numerator term n - i.
struct TermSplit {
  std::uint64_t index = 0;   // i
  mpz_class smooth_part;     // g_i, all prime factors <= threshold
  mpz_class rough_part;      // m_i, all prime factors > threshold

  friend bool operator==(const TermSplit&, const TermSplit&) = default;
};

struct IntervalQuery {
  mpz_class lo;  // exclusive
  mpz_class hi;  // inclusive
  std::optional<mpz_class> divisor;
};

/// Everything the toolkit can say about divisors of one C(n,k) near n.
struct DivisorReport {
  mpz_class n;
  std::uint64_t k = 0;
  arith::Factorization binomial_factorization;
  mpz_class largest_divisor_le_n;
  mpq_class ratio;  // largest_divisor_le_n / n, exact
  std::vector<TermSplit> term_splits;
  std::vector<IntervalQuery> interval_queries;
};

/// One way a rough divisor of C(n,k) splits across the numerator terms:
/// d = parts[0] * ... * parts[k-1] with parts[i] | n - i, pairwise coprime,
/// inducing n == gamma_d (mod d) by CRT.
struct TermDivisorTuple {
  mpz_class d;
  std::vector<mpz_class> parts;
  mpz_class gamma_d;

  friend bool operator==(const TermDivisorTuple&, const TermDivisorTuple&) = default;
};

/// Exact factorization of C(n,k): factor each n - i, then subtract the
/// Legendre valuations of k!.
arith::Factorization binomial_factorization(const mpz_class& n, std::uint64_t k,
                                            const arith::FactorConfig& cfg = {});

/// The maximum divisor of f.value() that is <= bound (always >= 1). Exact.
mpz_class largest_divisor_at_most(const arith::Factorization& f, const mpz_class& bound,
                                  const DivisorSearchConfig& cfg = {});

/// Some divisor d with lo < d <= hi, or nullopt when none exists.
std::optional<mpz_class> divisor_in_interval(const arith::Factorization& f,
                                             const mpz_class& lo, const mpz_class& hi,
                                             const DivisorSearchConfig& cfg = {});

/// Per-term splits n - i = g_i * m_i for 0 <= i < k, where g_i is the
/// threshold-smooth part. threshold = 0 means "use k".
std::vector<TermSplit> term_decomposition(const mpz_class& n, std::uint64_t k,
                                          std::uint64_t threshold = 0);

struct TupleEnumConfig {
  std::uint64_t tuple_cap = 1u << 20;
  arith::FactorConfig factoring;
};

/// All tuples (d_0,...,d_{k-1}) with d_i | (n - i), each d_i = 1 or
/// P^-(d_i) >= z, pairwise coprime, and lo < prod d_i <= hi.
/// Throws TupleCapExceeded past the configured guard.
std::vector<TermDivisorTuple> enumerate_term_tuples(const mpz_class& n, std::uint64_t k,
                                                    const mpz_class& z, const mpz_class& lo,
                                                    const mpz_class& hi,
                                                    const TupleEnumConfig& cfg = {});

struct ScanEntry {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  mpq_class ratio;

  friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

struct ScanResult {
  std::vector<ScanEntry> below_three_quarters;  // strict
  std::vector<ScanEntry> minima;                // all (n,k) attaining min_ratio
  mpq_class min_ratio;
};

/// For every 2 <= n <= n_max, 1 <= k <= n/2: ratio of the largest divisor of
/// C(n,k) that is <= n to n. Reports strict sub-3/4 entries and the overall
/// minimum (3/4 itself is attained at C(4,2) and flagged via `minima`).
ScanResult scan_min_ratio(std::uint64_t n_max, unsigned workers = 1);

/// Assembles the full report for one (n, k), running the requested interval
/// queries. threshold as in term_decomposition.
DivisorReport analyze(const mpz_class& n, std::uint64_t k,
                      const std::vector<std::pair<mpz_class, mpz_class>>& intervals = {},
                      std::uint64_t threshold = 0,
                      const arith::FactorConfig& factoring = {},
                      const DivisorSearchConfig& search = {});

}  // namespace bindiv::divisors
