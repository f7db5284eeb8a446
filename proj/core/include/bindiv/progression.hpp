#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "bindiv/arith.hpp"
#include "bindiv/covering.hpp"

namespace bindiv::progression {

/// An arithmetic progression n == alpha (mod N_k) on which C(n,k) has no prime
/// factor <= k, plus the augmented form n == gamma (mod M) that additionally
/// kills primes in (k, 2k).
struct ProgressionSpec {
  std::uint64_t k = 0;
  std::uint64_t B = 0;
  mpz_class base_modulus;       // N_k = prod_{p <= k} p^{e_p}, p^{e_p} > k >= p^{e_p - 1}
  mpz_class base_residue;       // alpha in [0, N_k)
  mpz_class augmented_modulus;  // M = N_k * prod of primes in (k, 2k)
  mpz_class augmented_residue;  // gamma in [0, M)
  covering::CoverCertificate certificate;

  friend bool operator==(const ProgressionSpec&, const ProgressionSpec&) = default;
};

struct ProgressionAudit {
  mpz_class n;
  // Primes p (<= k, or <= 2k for augmented audits) with v_p(C(n,k)) > 0.
  std::vector<std::uint64_t> prime_divisor_violations;
  // Indices i in [0, k) where no assigned prime in [B, k] divides n - i.
  std::vector<std::uint64_t> term_coverage_violations;

  bool passed() const {
    return prime_divisor_violations.empty() && term_coverage_violations.empty();
  }
};

/// Runs the constructive machinery on a valid certificate: extends the
/// assignment with a(p) = -1 for p < B, picks e_p minimal with p^e > k,
/// solves for alpha by CRT, then augments with n == k (mod q) for primes
/// q in (k, 2k). Throws InvalidCertificate if verification fails.
ProgressionSpec build_progression(const covering::CoverCertificate& cert);

/// Audits the first `samples` progression members n > k: every prime p <= k
/// (<= 2k when use_augmented) must have v_p(C(n,k)) = 0 via carry counting,
/// and every term n - i must be divisible by one of the certificate's
/// assigned primes.
std::vector<ProgressionAudit> verify_progression(const ProgressionSpec& spec,
                                                 std::uint64_t samples,
                                                 bool use_augmented = false);

struct SchinzelRow {
  std::uint64_t index = 0;  // i
  mpz_class term;           // n - i
  mpz_class gcd_with_k_factorial;
  bool term_divides_binomial = false;
};

struct SchinzelReport {
  mpz_class n;
  std::uint64_t k = 0;
  std::vector<SchinzelRow> rows;

  bool all_gcds_at_least_two() const;
  bool any_term_divides() const;
};

/// For each 0 <= i < k: gcd(n - i, k!) and whether (n - i) | C(n,k), the
/// latter decided by prime-power valuations (carry counting), not division.
SchinzelReport schinzel_checks(const mpz_class& n, std::uint64_t k,
                               const arith::FactorConfig& cfg = {});

}  // namespace bindiv::progression
