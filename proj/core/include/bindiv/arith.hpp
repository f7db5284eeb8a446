#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bindiv/errors.hpp"

namespace bindiv::arith {

struct FactorEntry {
  mpz_class prime;
  std::uint64_t exponent = 0;

  friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

/// Exact prime factorization of a positive integer: primes strictly ascending,
/// exponents >= 1, empty list for 1. The constructor certifies every entry.
class Factorization {
 public:
  Factorization() = default;

  /// Normalizes (sorts, merges duplicates, drops zero exponents) and validates
  /// primality of every base. Throws std::invalid_argument on a composite base.
  explicit Factorization(std::vector<FactorEntry> entries);

  const std::vector<FactorEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Reconstructs the represented integer (1 for the empty factorization).
  mpz_class value() const;

  std::uint64_t valuation(const mpz_class& p) const;

  /// Least prime factor; nullopt for 1 (the P^-(1) = infinity convention).
  std::optional<mpz_class> least_prime_factor() const;
  /// Greatest prime factor; 1 for the empty factorization.
  mpz_class greatest_prime_factor() const;

  std::size_t distinct_prime_count() const { return entries_.size(); }
  std::uint64_t total_prime_count() const;  // with multiplicity
  mpz_class divisor_count() const;

  Factorization multiplied_by(const Factorization& other) const;
  /// Exact quotient; throws InternalInconsistency if any exponent would go negative.
  Factorization divided_by(const Factorization& other) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

  /// Trusted entries (already sorted, certified prime, positive exponents).
  static Factorization from_certified(std::vector<FactorEntry> entries);

 private:
  std::vector<FactorEntry> entries_;
};

struct Congruence {
  mpz_class residue;
  mpz_class modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// A list of congruences with pairwise coprime moduli together with the
/// CRT-combined residue in [0, product of moduli).
struct CongruenceSystem {
  std::vector<Congruence> congruences;
  mpz_class combined_residue;
  mpz_class combined_modulus;
};

struct PrimalityConfig {
  // Witnesses beyond the fixed deterministic bases, used only for n >= 2^64.
  // Drawn from a generator seeded deterministically from n; per-witness error
  // is <= 1/4, so the default keeps the error below 2^-128.
  unsigned extra_witnesses = 65;
  // Mixed into the witness schedule. Same seed + same n = same witnesses.
  std::uint64_t witness_seed = 0;
};

/// Primality test: error-free for n < 2^64 (fixed proven witness set),
/// probabilistic above with a deterministic per-n witness schedule.
/// 0 and 1 return false.
bool is_prime(const mpz_class& n, const PrimalityConfig& cfg = {});

struct FactorConfig {
  std::uint64_t trial_division_bound = 10000;
  // Brent-Pollard iteration budget per composite cofactor; default sized for
  // 128-bit inputs.
  std::uint64_t rho_iteration_budget = std::uint64_t{1} << 26;
  PrimalityConfig primality;
};

/// Complete factorization of n >= 1. Trial division to a fixed bound, then
/// Brent's variant of Pollard rho with x^2 + c and c incremented on failure.
/// Throws FactoringGaveUp when a composite cofactor exhausts the budget.
Factorization factorize(const mpz_class& n, const FactorConfig& cfg = {});

struct SieveConfig {
  std::uint64_t max_hi = std::uint64_t{1} << 48;
  std::uint64_t max_window = std::uint64_t{1} << 27;
};

/// All primes p with lo <= p <= hi, ascending (segmented sieve).
/// Throws RangeTooLarge beyond the configured limits.
std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi,
                                     const SieveConfig& cfg = {});

/// v_p(m!) = sum_{g>=1} floor(m / p^g).
mpz_class legendre_valuation(const mpz_class& p, const mpz_class& m);

/// v_p(C(n,k)) as the number of carries when adding k and n-k in base p.
/// Runs in O(log_p k + carry chain) divisions of n, so n may be huge.
std::uint64_t kummer_valuation(const mpz_class& p, const mpz_class& n,
                               const mpz_class& k);

/// Sufficient condition for p | C(n,k): both k mod p and (n-k) mod p exceed p/2.
bool carry_criterion(const mpz_class& p, const mpz_class& n, const mpz_class& k);

struct SmoothConfig {
  // Cap on how many smooth numbers the priority queue may emit.
  std::uint64_t enumeration_cap = std::uint64_t{1} << 26;
};

/// Exact count of integers 1 <= m <= x all of whose prime factors are <= y
/// (1 counts as smooth). Priority-queue enumeration; throws RangeTooLarge
/// when the count would exceed the configured cap.
std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y,
                           const SmoothConfig& cfg = {});

/// Combines congruences with pairwise coprime moduli into a single residue
/// class. Throws NonCoprimeModuli naming the offending pair.
CongruenceSystem crt_combine(std::span<const Congruence> congruences);

}  // namespace bindiv::arith
