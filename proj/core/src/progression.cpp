#include "bindiv/progression.hpp"

#include <algorithm>

#include "bindiv/errors.hpp"

namespace bindiv::progression {

using arith::Congruence;

ProgressionSpec build_progression(const covering::CoverCertificate& cert) {
  auto report = covering::verify_certificate(cert);
  if (!report.valid) {
    throw InvalidCertificate("build_progression: certificate fails verification");
  }

  ProgressionSpec spec;
  spec.k = cert.k;
  spec.B = cert.B;
  spec.certificate = cert;

  // One congruence per prime p <= k: alpha == b_p - p (mod p^e) with e minimal
  // such that p^e > k. Primes below B (and any the certificate left out) take
  // the always-restricted class -1, i.e. b_p = p - 1.
  std::vector<Congruence> base;
  for (std::uint64_t p : arith::primes_in(2, static_cast<std::int64_t>(cert.k))) {
    auto it = cert.assignments.find(p);
    std::uint64_t b = it != cert.assignments.end() ? it->second : p - 1;
    mpz_class pe = p;
    while (pe <= cert.k) pe *= p;
    mpz_class residue = mpz_class{b} - p;
    mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), pe.get_mpz_t());
    base.push_back({std::move(residue), std::move(pe)});
  }
  auto base_sys = arith::crt_combine(base);
  spec.base_modulus = base_sys.combined_modulus;
  spec.base_residue = base_sys.combined_residue;

  // Augmentation: additionally pin n == k (mod q) for primes q in (k, 2k), so
  // the terms n, n-1, ..., n-k+1 stay clear of every such q.
  std::vector<Congruence> aug;
  aug.push_back({spec.base_residue, spec.base_modulus});
  for (std::uint64_t q : arith::primes_in(static_cast<std::int64_t>(cert.k + 1),
                                          static_cast<std::int64_t>(2 * cert.k - 1))) {
    aug.push_back({mpz_class{cert.k % q}, mpz_class{q}});
  }
  auto aug_sys = arith::crt_combine(aug);
  spec.augmented_modulus = aug_sys.combined_modulus;
  spec.augmented_residue = aug_sys.combined_residue;
  return spec;
}

std::vector<ProgressionAudit> verify_progression(const ProgressionSpec& spec,
                                                 std::uint64_t samples, bool use_augmented) {
  if (samples < 1) throw std::invalid_argument("verify_progression: need samples >= 1");
  const mpz_class& modulus = use_augmented ? spec.augmented_modulus : spec.base_modulus;
  const mpz_class& residue = use_augmented ? spec.augmented_residue : spec.base_residue;

  mpz_class n = residue;
  while (n <= spec.k) n += modulus;  // the guarantee starts strictly above k

  std::uint64_t prime_limit = use_augmented ? 2 * spec.k : spec.k;
  auto primes = arith::primes_in(2, static_cast<std::int64_t>(prime_limit));

  std::vector<ProgressionAudit> audits;
  audits.reserve(samples);
  for (std::uint64_t s = 0; s < samples; ++s, n += modulus) {
    ProgressionAudit audit;
    audit.n = n;
    for (std::uint64_t p : primes) {
      if (arith::kummer_valuation(mpz_class{p}, n, mpz_class{spec.k}) > 0) {
        audit.prime_divisor_violations.push_back(p);
      }
    }
    for (std::uint64_t i = 0; i < spec.k; ++i) {
      bool hit = false;
      for (const auto& [p, a] : spec.certificate.assignments) {
        if (mpz_divisible_ui_p(mpz_class{n - i}.get_mpz_t(), p)) {
          hit = true;
          break;
        }
      }
      if (!hit) audit.term_coverage_violations.push_back(i);
    }
    audits.push_back(std::move(audit));
  }
  return audits;
}

bool SchinzelReport::all_gcds_at_least_two() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SchinzelRow& r) { return r.gcd_with_k_factorial >= 2; });
}

bool SchinzelReport::any_term_divides() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SchinzelRow& r) { return r.term_divides_binomial; });
}

SchinzelReport schinzel_checks(const mpz_class& n, std::uint64_t k,
                               const arith::FactorConfig& cfg) {
  if (k < 1 || mpz_class{k} > n) throw std::invalid_argument("schinzel_checks: need 1 <= k <= n");
  SchinzelReport report;
  report.n = n;
  report.k = k;
  mpz_class k_factorial;
  mpz_fac_ui(k_factorial.get_mpz_t(), k);
  for (std::uint64_t i = 0; i < k; ++i) {
    SchinzelRow row;
    row.index = i;
    row.term = n - i;
    mpz_gcd(row.gcd_with_k_factorial.get_mpz_t(), row.term.get_mpz_t(),
            k_factorial.get_mpz_t());
    // (n - i) | C(n,k) iff every prime power of n - i clears Kummer's carry count.
    row.term_divides_binomial = true;
    arith::Factorization term_factors = arith::factorize(row.term, cfg);
    for (const auto& e : term_factors.entries()) {
      if (arith::kummer_valuation(e.prime, n, mpz_class{k}) < e.exponent) {
        row.term_divides_binomial = false;
        break;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace bindiv::progression
