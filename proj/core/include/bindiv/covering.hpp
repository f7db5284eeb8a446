#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace bindiv::covering {

/// A claimed witness that k has property RC(B): residue assignments a(p) for
/// primes p in [B, k], each restricted for k, jointly covering [0, k).
struct CoverCertificate {
  std::uint64_t k = 0;
  std::uint64_t B = 0;
  std::map<std::uint64_t, std::uint64_t> assignments;  // p -> a(p) in [0, p)

  friend bool operator==(const CoverCertificate&, const CoverCertificate&) = default;
};

struct CoverageReport {
  bool valid = false;
  std::vector<std::uint64_t> uncovered;                               // i in [0,k) missed
  std::vector<std::pair<std::uint64_t, std::uint64_t>> unrestricted;  // (p, a)
  std::vector<std::uint64_t> out_of_range_primes;  // keys not prime or outside [B,k]
};

struct VerifyOptions {
  // The covering clause reads "some prime p < k"; when k is itself prime and
  // assigned, this flag decides whether p = k may cover. Both modes validate
  // the bundled certificates (their largest primes are < k).
  bool allow_self_cover = true;
};

/// The floor identity floor(k/p) + floor((a-k)/p) == floor(a/p), with floor
/// division toward -infinity; invariant under a -> a + p.
bool is_restricted(std::int64_t a, std::uint64_t p, std::uint64_t k);

/// The normalized residues in [0, p) that are restricted for k; equals
/// {k mod p, ..., p-1}.
std::vector<std::uint64_t> restricted_classes(std::uint64_t p, std::uint64_t k);

/// Itemized check of range, restriction, and coverage. Failures are report
/// content, never exceptions.
CoverageReport verify_certificate(const CoverCertificate& cert,
                                  const VerifyOptions& opts = {});

enum class SearchStrategy { kExhaustive, kGreedy, kErdos };

enum class SearchStatus { kFound, kProvenNone, kBudgetExhausted };

struct SearchOptions {
  std::uint64_t node_budget = 100'000'000;
  unsigned workers = 1;
  // 0 = most-covering-first candidate order; any other value deterministically
  // shuffles candidate residues (ordering affects speed, never outcomes).
  std::uint64_t residue_order_seed = 0;
  VerifyOptions verify;
};

struct SearchResult {
  SearchStatus status = SearchStatus::kProvenNone;
  std::optional<CoverCertificate> certificate;
  std::uint64_t nodes_expanded = 0;
};

/// Searches for an RC(B) witness at this k. Only the exhaustive strategy can
/// prove nonexistence; greedy and erdos report kBudgetExhausted when they
/// fail to cover.
SearchResult search_certificate(std::uint64_t k, std::uint64_t B, SearchStrategy strategy,
                                const SearchOptions& opts = {});

struct MinimalResult {
  std::optional<std::uint64_t> k;
  SearchStatus status = SearchStatus::kProvenNone;  // of the stopping k
  std::uint64_t nodes_expanded = 0;
};

/// Smallest k <= k_max with property RC(B), by exhaustive search at each k.
MinimalResult minimal_k(std::uint64_t B, std::uint64_t k_max, const SearchOptions& opts = {});

}  // namespace bindiv::covering
