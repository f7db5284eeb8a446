#include "bindiv/covering.hpp"

#include <numeric>

#include "bindiv/serialize.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bindiv;
using namespace bindiv::covering;

namespace {

CoverCertificate load_cert(const std::string& path) {
  return serialize::certificate_from_json(oracles::slurp(path));
}

}  // namespace

TEST_CASE("is_restricted basics") {
  CHECK(is_restricted(0, 5, 15));
  CHECK(!is_restricted(0, 7, 15));
  CHECK(is_restricted(4, 7, 15));
  for (std::uint64_t p : oracles::primes_upto(97)) {
    for (std::uint64_t k = 2; k <= 1000; k += 7) {
      CHECK(is_restricted(-1, p, k));  // -1 is always restricted
    }
  }
}

TEST_CASE("is_restricted is translation invariant") {
  for (std::uint64_t p : oracles::primes_upto(97)) {
    for (std::uint64_t k : {2ull, 15ull, 97ull, 430ull, 999ull}) {
      auto P = static_cast<std::int64_t>(p);
      for (std::int64_t a = -2 * P; a < 2 * P; ++a) {
        CHECK(is_restricted(a, p, k) == is_restricted(a + P, p, k));
      }
    }
  }
}

TEST_CASE("restricted_classes characterization") {
  CHECK(restricted_classes(2, 15) == std::vector<std::uint64_t>{1});
  CHECK(restricted_classes(13, 15) ==
        std::vector<std::uint64_t>{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(restricted_classes(5, 15).size() == 5);  // p | k: every class

  for (std::uint64_t p : oracles::primes_upto(97)) {
    for (std::uint64_t k = 2; k <= 1000; k += 11) {
      auto classes = restricted_classes(p, k);
      CHECK(classes.size() == p - k % p);
      // Exactly the normalized residues {k mod p, ..., p-1}.
      std::vector<std::uint64_t> want;
      for (std::uint64_t r = k % p; r < p; ++r) want.push_back(r);
      CHECK(classes == want);
    }
  }
}

TEST_CASE("k congruent to r mod p makes every m >= r restricted") {
  for (std::uint64_t p : oracles::primes_upto(97)) {
    for (std::uint64_t m = 0; m < p; ++m) {
      for (std::uint64_t r = 0; r <= m; ++r) {
        for (std::uint64_t k = r; k <= 2000; k += p) {
          if (k < 2) continue;
          CHECK(is_restricted(static_cast<std::int64_t>(m), p, k));
        }
      }
    }
  }
}

TEST_CASE("bundled certificates verify") {
  auto k15 = load_cert("data/k15.json");
  auto k430 = load_cert("data/k430.json");
  CHECK(k15.assignments.size() == 6);
  CHECK(k430.assignments.size() == 81);

  for (const auto& cert : {k15, k430}) {
    for (bool self_cover : {true, false}) {
      VerifyOptions opts;
      opts.allow_self_cover = self_cover;
      auto report = verify_certificate(cert, opts);
      CHECK(report.valid);
      CHECK(report.uncovered.empty());
      CHECK(report.unrestricted.empty());
      CHECK(report.out_of_range_primes.empty());
    }
  }
}

TEST_CASE("verify_certificate itemizes failures") {
  auto cert = load_cert("data/k15.json");

  SUBCASE("breaking one class leaves a hole") {
    cert.assignments[13] = 2;  // still restricted, no longer covers 12
    auto report = verify_certificate(cert);
    CHECK(!report.valid);
    CHECK(report.uncovered == std::vector<std::uint64_t>{12});
    CHECK(report.unrestricted.empty());
  }

  SUBCASE("unrestricted class is flagged") {
    cert.assignments[7] = 0;  // restricted set for 7 is {1..6}
    auto report = verify_certificate(cert);
    CHECK(!report.valid);
    CHECK(report.unrestricted ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 0}});
  }

  SUBCASE("residue out of [0, p) is flagged") {
    cert.assignments[7] = 11;
    auto report = verify_certificate(cert);
    CHECK(!report.valid);
    CHECK(!report.unrestricted.empty());
  }

  SUBCASE("non-prime and out-of-range keys are flagged") {
    cert.assignments[9] = 1;
    cert.assignments[17] = 2;
    auto report = verify_certificate(cert);
    CHECK(!report.valid);
    CHECK(report.out_of_range_primes == std::vector<std::uint64_t>{9, 17});
  }
}

TEST_CASE("exhaustive search finds k=15 and refutes below") {
  auto found = search_certificate(15, 2, SearchStrategy::kExhaustive);
  REQUIRE(found.status == SearchStatus::kFound);
  REQUIRE(found.certificate.has_value());
  CHECK(verify_certificate(*found.certificate).valid);
  CHECK(found.certificate->k == 15);
  CHECK(found.certificate->B == 2);

  for (std::uint64_t k = 3; k <= 14; ++k) {
    auto r = search_certificate(k, 2, SearchStrategy::kExhaustive);
    CHECK(r.status == SearchStatus::kProvenNone);
    CHECK(!r.certificate.has_value());
  }

  CHECK_THROWS_AS(search_certificate(15, 15, SearchStrategy::kExhaustive),
                  std::invalid_argument);
}

TEST_CASE("residue ordering only affects speed") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    SearchOptions opts;
    opts.residue_order_seed = seed;
    CHECK(search_certificate(14, 2, SearchStrategy::kExhaustive, opts).status ==
          SearchStatus::kProvenNone);
    auto hit = search_certificate(15, 2, SearchStrategy::kExhaustive, opts);
    REQUIRE(hit.status == SearchStatus::kFound);
    CHECK(verify_certificate(*hit.certificate).valid);
  }
}

TEST_CASE("parallel exhaustive search is worker-count independent") {
  SearchOptions four;
  four.workers = 4;
  auto a = search_certificate(15, 2, SearchStrategy::kExhaustive, four);
  REQUIRE(a.status == SearchStatus::kFound);
  CHECK(verify_certificate(*a.certificate).valid);

  SearchOptions two;
  two.workers = 2;
  auto b = search_certificate(15, 2, SearchStrategy::kExhaustive, two);
  REQUIRE(b.status == SearchStatus::kFound);
  CHECK(a.certificate->assignments == b.certificate->assignments);

  CHECK(search_certificate(14, 2, SearchStrategy::kExhaustive, four).status ==
        SearchStatus::kProvenNone);
}

TEST_CASE("budget exhaustion is distinguished from refutation") {
  SearchOptions opts;
  opts.node_budget = 5;
  auto r = search_certificate(30, 2, SearchStrategy::kExhaustive, opts);
  CHECK(r.status == SearchStatus::kBudgetExhausted);
  CHECK(!r.certificate.has_value());
}

TEST_CASE("greedy covers 15 and validates whatever it finds") {
  auto r = search_certificate(15, 2, SearchStrategy::kGreedy);
  REQUIRE(r.status == SearchStatus::kFound);
  CHECK(verify_certificate(*r.certificate).valid);

  for (std::uint64_t k = 16; k <= 40; ++k) {
    auto g = search_certificate(k, 2, SearchStrategy::kGreedy);
    if (g.status == SearchStatus::kFound) {
      CHECK(verify_certificate(*g.certificate).valid);
    } else {
      CHECK(g.status == SearchStatus::kBudgetExhausted);  // heuristics never refute
    }
  }
}

TEST_CASE("erdos staging validates whatever it finds") {
  for (std::uint64_t k : {15ull, 30ull, 100ull, 430ull}) {
    for (std::uint64_t B : {2ull, 3ull}) {
      auto r = search_certificate(k, B, SearchStrategy::kErdos);
      if (r.status == SearchStatus::kFound) {
        CHECK(verify_certificate(*r.certificate).valid);
      } else {
        CHECK(r.status == SearchStatus::kBudgetExhausted);
      }
    }
  }
}

TEST_CASE("greedy attempts the 430 instance") {
  auto r = search_certificate(430, 3, SearchStrategy::kGreedy);
  if (r.status == SearchStatus::kFound) {
    CHECK(verify_certificate(*r.certificate).valid);
  } else {
    CHECK(r.status == SearchStatus::kBudgetExhausted);
  }
}

TEST_CASE("minimal_k pins down 15") {
  auto hit = minimal_k(2, 20);
  CHECK(hit.k == 15);
  CHECK(hit.status == SearchStatus::kFound);

  auto miss = minimal_k(2, 14);
  CHECK(!miss.k.has_value());
  CHECK(miss.status == SearchStatus::kProvenNone);

  auto empty = minimal_k(5, 5);  // k_max < B + 1: no candidates at all
  CHECK(!empty.k.has_value());
  CHECK(empty.status == SearchStatus::kProvenNone);
  CHECK(empty.nodes_expanded == 0);
}
