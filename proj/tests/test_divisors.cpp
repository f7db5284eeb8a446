#include "bindiv/divisors.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace bindiv;
using namespace bindiv::arith;
using namespace bindiv::divisors;

TEST_CASE("binomial_factorization matches the Pascal oracle") {
  CHECK(binomial_factorization(10, 0).value() == 1);
  CHECK(binomial_factorization(7, 7).value() == 1);
  CHECK_THROWS_AS(binomial_factorization(3, 4), std::invalid_argument);

  auto f = binomial_factorization(10, 2);  // 45
  CHECK(f.valuation(3) == 2);
  CHECK(f.valuation(5) == 1);
  CHECK(f.size() == 2);

  for (std::uint64_t n = 1; n <= 120; n += 3) {
    for (std::uint64_t k = 0; k <= n / 2; k += (n > 60 ? 5 : 1)) {
      CHECK(binomial_factorization(n, k).value() == oracles::binomial(n, k));
    }
  }
}

namespace {

Factorization random_factorization(std::mt19937_64& rng) {
  // Value <= 1e9 with at most 12 prime-power factors.
  static const std::vector<std::uint64_t> pool{2,  3,  5,  7,  11, 13, 17,
                                               19, 23, 29, 31, 37, 101, 997};
  std::vector<FactorEntry> entries;
  mpz_class value = 1;
  std::set<std::uint64_t> used;
  int parts = 1 + static_cast<int>(rng() % 12);
  for (int j = 0; j < parts; ++j) {
    std::uint64_t p = pool[rng() % pool.size()];
    if (!used.insert(p).second) continue;
    std::uint64_t e = 1 + rng() % 4;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, e);
    if (value * pw > 1000000000) break;
    value *= pw;
    entries.push_back({p, e});
  }
  return Factorization(std::move(entries));
}

}  // namespace

TEST_CASE("largest_divisor_at_most agrees with brute force on both engines") {
  std::mt19937_64 rng(2024);
  DivisorSearchConfig always_mitm;
  always_mitm.mitm_divisor_limit = mpz_class{1} << 62;
  DivisorSearchConfig never_mitm;
  never_mitm.mitm_divisor_limit = 0;

  for (int round = 0; round < 1000; ++round) {
    auto f = random_factorization(rng);
    std::uint64_t v = f.value().get_ui();
    std::uint64_t bound = 1 + rng() % v;
    std::uint64_t want = 1;
    for (std::uint64_t d : oracles::divisors_of(v)) {
      if (d <= bound) want = d;
    }
    CHECK(largest_divisor_at_most(f, bound, always_mitm) == want);
    CHECK(largest_divisor_at_most(f, bound, never_mitm) == want);
  }
}

TEST_CASE("largest_divisor_at_most edges") {
  Factorization f({{3, 2}, {5, 1}});  // 45
  CHECK(largest_divisor_at_most(f, 45) == 45);
  CHECK(largest_divisor_at_most(f, 1000) == 45);
  CHECK(largest_divisor_at_most(f, 44) == 15);
  CHECK(largest_divisor_at_most(f, 1) == 1);
  CHECK(largest_divisor_at_most(f, 2) == 1);
  CHECK_THROWS_AS(largest_divisor_at_most(f, 0), std::invalid_argument);
  CHECK(largest_divisor_at_most(Factorization{}, 7) == 1);
}

TEST_CASE("divisor_in_interval is none exactly when the max divisor is too small") {
  Factorization f({{3, 2}, {5, 1}});  // 45
  CHECK(divisor_in_interval(f, 5, 9) == mpz_class{9});
  CHECK(!divisor_in_interval(f, 45, 100).has_value());
  CHECK(!divisor_in_interval(f, 9, 9).has_value());   // empty interval
  CHECK(!divisor_in_interval(f, -5, 0).has_value());  // no divisors <= 0

  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    auto g = random_factorization(rng);
    mpz_class hi = 1 + rng() % 1000000;
    mpz_class lo = rng() % (hi.get_ui() + 10);
    auto got = divisor_in_interval(g, lo, hi);
    mpz_class largest = largest_divisor_at_most(g, hi);
    CHECK(got.has_value() == (largest > lo));
    if (got.has_value()) {
      CHECK(*got > lo);
      CHECK(*got <= hi);
      CHECK(g.value() % *got == 0);
    }
  }
}

TEST_CASE("term_decomposition splits smooth from rough") {
  auto splits = term_decomposition(16, 2, 2);
  REQUIRE(splits.size() == 2);
  CHECK(splits[0] == TermSplit{0, 16, 1});
  CHECK(splits[1] == TermSplit{1, 1, 15});

  // Default threshold is k itself.
  auto def = term_decomposition(100, 3);
  mpz_class falling = 1, product = 1;
  for (const auto& s : def) {
    product *= s.smooth_part * s.rough_part;
    auto smooth = factorize(s.smooth_part);
    auto rough = factorize(s.rough_part);
    for (const auto& e : smooth.entries()) CHECK(e.prime <= 3);
    for (const auto& e : rough.entries()) CHECK(e.prime > 3);
  }
  for (int i = 0; i < 3; ++i) falling *= 100 - i;
  CHECK(product == falling);

  // Huge n stays cheap: only trial division by primes <= threshold happens.
  mpz_class n0{"178256013517113649496495"};
  auto big = term_decomposition(n0, 15);
  CHECK(big.size() == 15);
  for (const auto& s : big) CHECK(s.smooth_part * s.rough_part == n0 - s.index);
}

namespace {

// Brute-force count of qualifying tuples for enumerate_term_tuples(100, 3, ...).
std::uint64_t brute_tuples_100_3(std::uint64_t z, const mpz_class& lo, const mpz_class& hi) {
  auto ok = [&](std::uint64_t d) {
    if (d == 1) return true;
    auto f = oracles::factor(d);
    return f.begin()->first >= z;
  };
  std::uint64_t count = 0;
  for (std::uint64_t d0 : oracles::divisors_of(100)) {
    if (!ok(d0)) continue;
    for (std::uint64_t d1 : oracles::divisors_of(99)) {
      if (!ok(d1)) continue;
      if (std::gcd(d0, d1) != 1) continue;
      for (std::uint64_t d2 : oracles::divisors_of(98)) {
        if (!ok(d2)) continue;
        if (std::gcd(d0, d2) != 1 || std::gcd(d1, d2) != 1) continue;
        mpz_class prod = mpz_class{d0} * d1 * d2;
        if (prod > lo && prod <= hi) ++count;
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("enumerate_term_tuples counts and certifies") {
  mpz_class big = mpz_class{100} * 99 * 98;
  auto tuples = enumerate_term_tuples(100, 3, 4, 1, big);
  CHECK(tuples.size() == 17);
  CHECK(tuples.size() == brute_tuples_100_3(4, 1, big));

  std::set<std::vector<mpz_class>> seen;
  for (const auto& t : tuples) {
    REQUIRE(t.parts.size() == 3);
    mpz_class prod = 1;
    for (std::size_t i = 0; i < 3; ++i) {
      const mpz_class& d = t.parts[i];
      CHECK(mpz_class{100 - i} % d == 0);
      if (d > 1) CHECK(*factorize(d).least_prime_factor() >= 4);
      for (std::size_t j = i + 1; j < 3; ++j) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), t.parts[j].get_mpz_t());
        CHECK(g == 1);
      }
      prod *= d;
    }
    CHECK(prod == t.d);
    CHECK((mpz_class{100} - t.gamma_d) % t.d == 0);  // n == gamma_d (mod d)
    CHECK(seen.insert(t.parts).second);  // no duplicate decompositions
  }

  CHECK(enumerate_term_tuples(50, 4, 2, 7, 7).empty());  // lo == hi

  TupleEnumConfig tiny;
  tiny.tuple_cap = 3;
  CHECK_THROWS_AS(enumerate_term_tuples(100, 3, 4, 1, big, tiny), TupleCapExceeded);
}

TEST_CASE("enumerate_term_tuples respects the z cut across more shapes") {
  // z above every prime factor leaves only the all-ones tuple, excluded by lo >= 1.
  CHECK(enumerate_term_tuples(100, 3, 101, 1, 1000000).empty());
  // z = 2 admits every divisor; count against brute force.
  auto all = enumerate_term_tuples(100, 3, 2, 1, 970200);
  CHECK(all.size() == brute_tuples_100_3(2, 1, 970200));
}

TEST_CASE("scan_min_ratio finds the 3/4 floor") {
  auto r10 = scan_min_ratio(10);
  CHECK(r10.below_three_quarters.empty());
  CHECK(r10.min_ratio == mpq_class{3, 4});
  REQUIRE(r10.minima.size() == 1);
  CHECK(r10.minima[0].n == 4);
  CHECK(r10.minima[0].k == 2);

  auto r2 = scan_min_ratio(2);
  CHECK(r2.below_three_quarters.empty());
  CHECK(r2.min_ratio == 1);

  auto seq = scan_min_ratio(40, 1);
  auto par = scan_min_ratio(40, 4);
  CHECK(seq.min_ratio == par.min_ratio);
  CHECK(seq.minima == par.minima);
  CHECK(seq.below_three_quarters == par.below_three_quarters);
}

TEST_CASE("analyze assembles the full report") {
  auto rep = analyze(4, 2);
  CHECK(rep.largest_divisor_le_n == 3);
  CHECK(rep.ratio == mpq_class{3, 4});
  CHECK(rep.binomial_factorization.value() == 6);
  CHECK(rep.term_splits.size() == 2);

  auto deep = analyze(10, 2, {{5, 9}, {44, 45}, {45, 100}});
  REQUIRE(deep.interval_queries.size() == 3);
  CHECK(deep.interval_queries[0].divisor == mpz_class{9});
  CHECK(deep.interval_queries[1].divisor == mpz_class{45});
  CHECK(!deep.interval_queries[2].divisor.has_value());
  CHECK(deep.largest_divisor_le_n == 9);
}
