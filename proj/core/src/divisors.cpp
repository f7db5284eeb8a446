#include "bindiv/divisors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <thread>
#include <utility>

namespace bindiv::divisors {

using arith::FactorEntry;
using arith::Factorization;

namespace {

// All divisors <= bound of the prime powers entries[from..], appended to out.
void collect_divisors(const std::vector<FactorEntry>& entries, std::size_t from,
                      const mpz_class& bound, const mpz_class& cur,
                      std::vector<mpz_class>& out) {
  if (from == entries.size()) {
    out.push_back(cur);
    return;
  }
  mpz_class v = cur;
  for (std::uint64_t e = 0;; ++e) {
    collect_divisors(entries, from + 1, bound, v, out);
    if (e == entries[from].exponent) break;
    v *= entries[from].prime;
    if (v > bound) break;
  }
}

mpz_class largest_by_mitm(const std::vector<FactorEntry>& entries, const mpz_class& bound) {
  // Balance the two halves by divisor count so both enumerations stay small.
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].exponent > entries[b].exponent;
  });
  std::vector<FactorEntry> left, right;
  mpz_class count_left = 1, count_right = 1;
  for (std::size_t idx : order) {
    if (count_left <= count_right) {
      left.push_back(entries[idx]);
      count_left *= entries[idx].exponent + 1;
    } else {
      right.push_back(entries[idx]);
      count_right *= entries[idx].exponent + 1;
    }
  }

  std::vector<mpz_class> lhs, rhs;
  collect_divisors(left, 0, bound, 1, lhs);
  collect_divisors(right, 0, bound, 1, rhs);
  std::sort(rhs.begin(), rhs.end());

  mpz_class best = 1, q;
  for (const mpz_class& a : lhs) {
    q = bound / a;
    auto it = std::upper_bound(rhs.begin(), rhs.end(), q);
    if (it == rhs.begin()) continue;
    mpz_class candidate = a * *std::prev(it);
    if (candidate > best) best = candidate;
  }
  return best;
}

struct BranchBound {
  const std::vector<FactorEntry>& entries;  // descending prime order
  const std::vector<mpz_class>& suffix;     // suffix[i] = prod of entries[i..]
  const mpz_class& bound;
  mpz_class best = 1;

  void run(std::size_t i, const mpz_class& cur) {
    if (best == bound) return;
    mpz_class reach = cur * suffix[i];
    if (reach <= bound) {
      if (reach > best) best = reach;
      return;
    }
    // Try large exponents first so tight candidates surface early.
    const FactorEntry& fe = entries[i];
    std::vector<mpz_class> powers{1};
    for (std::uint64_t e = 1; e <= fe.exponent; ++e) {
      mpz_class next = powers.back() * fe.prime;
      if (cur * next > bound) break;
      powers.push_back(next);
    }
    for (auto it = powers.rbegin(); it != powers.rend(); ++it) {
      run(i + 1, cur * *it);
      if (best == bound) return;
    }
  }
};

mpz_class largest_by_branching(const std::vector<FactorEntry>& ascending,
                               const mpz_class& bound) {
  std::vector<FactorEntry> entries(ascending.rbegin(), ascending.rend());
  std::vector<mpz_class> suffix(entries.size() + 1);
  suffix[entries.size()] = 1;
  for (std::size_t i = entries.size(); i-- > 0;) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), entries[i].prime.get_mpz_t(), entries[i].exponent);
    suffix[i] = suffix[i + 1] * pw;
  }
  BranchBound bb{entries, suffix, bound};
  bb.run(0, 1);
  return bb.best;
}

// Smallest-prime-factor table for the ratio scan.
std::vector<std::uint32_t> spf_table(std::uint64_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

struct ScanShard {
  std::vector<ScanEntry> below;
  std::vector<ScanEntry> minima;
  mpq_class min_ratio{1};
};

void scan_one_n(std::uint64_t n, const std::vector<std::uint32_t>& spf,
                const mpq_class& three_quarters, ScanShard& shard) {
  // Walk k upward, updating the exponent vector of C(n,k) multiplicatively:
  // C(n,k) = C(n,k-1) * (n-k+1) / k.
  std::map<std::uint64_t, std::int64_t> counts;
  auto bump = [&](std::uint64_t m, std::int64_t sign) {
    while (m > 1) {
      std::uint64_t p = spf[m];
      while (m % p == 0) {
        counts[p] += sign;
        m /= p;
      }
    }
  };
  for (std::uint64_t k = 1; k <= n / 2; ++k) {
    bump(n - k + 1, +1);
    bump(k, -1);
    std::vector<FactorEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [p, e] : counts) {
      if (e > 0) entries.push_back({mpz_class{p}, static_cast<std::uint64_t>(e)});
    }
    auto f = Factorization::from_certified(std::move(entries));
    mpz_class d = largest_divisor_at_most(f, mpz_class{n});
    mpq_class ratio{d, mpz_class{n}};
    ratio.canonicalize();
    if (ratio < three_quarters) shard.below.push_back({n, k, ratio});
    if (ratio < shard.min_ratio) {
      shard.min_ratio = ratio;
      shard.minima.clear();
    }
    if (ratio == shard.min_ratio) shard.minima.push_back({n, k, ratio});
  }
}

}  // namespace

Factorization binomial_factorization(const mpz_class& n, std::uint64_t k,
                                     const arith::FactorConfig& cfg) {
  if (n < 0 || mpz_class{k} > n) {
    throw std::invalid_argument("binomial_factorization: need 0 <= k <= n");
  }
  Factorization numerator;
  for (std::uint64_t i = 0; i < k; ++i) {
    numerator = numerator.multiplied_by(arith::factorize(n - i, cfg));
  }
  std::vector<FactorEntry> denom;
  for (std::uint64_t p : arith::primes_in(2, static_cast<std::int64_t>(k))) {
    mpz_class v = arith::legendre_valuation(mpz_class{p}, mpz_class{k});
    denom.push_back({mpz_class{p}, v.get_ui()});
  }
  return numerator.divided_by(Factorization::from_certified(std::move(denom)));
}

mpz_class largest_divisor_at_most(const Factorization& f, const mpz_class& bound,
                                  const DivisorSearchConfig& cfg) {
  if (bound < 1) {
    throw std::invalid_argument("largest_divisor_at_most: bound must be >= 1");
  }
  mpz_class value = f.value();
  if (value <= bound) return value;
  if (f.divisor_count() <= cfg.mitm_divisor_limit) {
    return largest_by_mitm(f.entries(), bound);
  }
  return largest_by_branching(f.entries(), bound);
}

std::optional<mpz_class> divisor_in_interval(const Factorization& f, const mpz_class& lo,
                                             const mpz_class& hi,
                                             const DivisorSearchConfig& cfg) {
  if (hi < 1 || hi <= lo) return std::nullopt;
  mpz_class d = largest_divisor_at_most(f, hi, cfg);
  if (d > lo) return d;
  return std::nullopt;  // the max divisor <= hi already falls at or below lo
}

std::vector<TermSplit> term_decomposition(const mpz_class& n, std::uint64_t k,
                                          std::uint64_t threshold) {
  if (mpz_class{k} > n) throw std::invalid_argument("term_decomposition: need k <= n");
  std::uint64_t thr = threshold == 0 ? k : threshold;
  std::vector<std::uint64_t> primes =
      thr >= 2 ? arith::primes_in(2, static_cast<std::int64_t>(thr))
               : std::vector<std::uint64_t>{};
  std::vector<TermSplit> splits;
  splits.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    mpz_class rough = n - i;
    mpz_class smooth = 1;
    for (std::uint64_t p : primes) {
      while (mpz_divisible_ui_p(rough.get_mpz_t(), p)) {
        mpz_divexact_ui(rough.get_mpz_t(), rough.get_mpz_t(), p);
        smooth *= p;
      }
    }
    splits.push_back({i, std::move(smooth), std::move(rough)});
  }
  return splits;
}

std::vector<TermDivisorTuple> enumerate_term_tuples(const mpz_class& n, std::uint64_t k,
                                                    const mpz_class& z, const mpz_class& lo,
                                                    const mpz_class& hi,
                                                    const TupleEnumConfig& cfg) {
  if (mpz_class{k} > n) throw std::invalid_argument("enumerate_term_tuples: need k <= n");

  // Candidate d_i divide the z-rough part of n - i; enumerate those divisors
  // once per term, tagged with their prime support for the coprimality check.
  std::vector<mpz_class> prime_registry;
  auto prime_id = [&](const mpz_class& p) {
    for (std::size_t j = 0; j < prime_registry.size(); ++j) {
      if (prime_registry[j] == p) return j;
    }
    prime_registry.push_back(p);
    return prime_registry.size() - 1;
  };

  struct Candidate {
    mpz_class value;
    std::vector<std::size_t> support;
  };
  std::vector<std::vector<Candidate>> choices(k);
  std::vector<mpz_class> suffix_max(k + 1);
  suffix_max[k] = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    auto full = arith::factorize(n - i, cfg.factoring);
    std::vector<FactorEntry> rough;
    for (const auto& e : full.entries()) {
      if (e.prime >= z) rough.push_back(e);
    }
    std::vector<std::pair<mpz_class, std::vector<std::size_t>>> divs{{1, {}}};
    for (const auto& e : rough) {
      std::size_t id = prime_id(e.prime);
      std::size_t existing = divs.size();
      mpz_class pw = 1;
      for (std::uint64_t x = 1; x <= e.exponent; ++x) {
        pw *= e.prime;
        for (std::size_t j = 0; j < existing; ++j) {
          auto support = divs[j].second;
          support.push_back(id);
          divs.push_back({divs[j].first * pw, std::move(support)});
        }
      }
    }
    std::sort(divs.begin(), divs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [v, s] : divs) choices[i].push_back({std::move(v), std::move(s)});
  }
  for (std::uint64_t i = k; i-- > 0;) {
    suffix_max[i] = suffix_max[i + 1] * choices[i].back().value;
  }

  std::vector<TermDivisorTuple> out;
  std::vector<mpz_class> parts(k);
  std::vector<bool> used(prime_registry.size(), false);

  auto emit = [&](const mpz_class& prod) {
    if (out.size() >= cfg.tuple_cap) {
      throw TupleCapExceeded("enumerate_term_tuples: tuple cap exceeded (raise "
                             "TupleEnumConfig::tuple_cap)");
    }
    std::vector<arith::Congruence> congruences;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (parts[i] > 1) congruences.push_back({mpz_class{i} % parts[i], parts[i]});
    }
    auto sys = arith::crt_combine(congruences);
    out.push_back({prod, parts, sys.combined_residue});
  };

  auto step = [&](auto&& self, std::uint64_t i, const mpz_class& prod) -> void {
    if (prod * suffix_max[i] <= lo) return;  // cannot clear the lower cut
    if (i == k) {
      emit(prod);
      return;
    }
    for (const Candidate& c : choices[i]) {
      mpz_class next = prod * c.value;
      if (next > hi) break;  // candidates ascend
      bool clash = false;
      for (std::size_t id : c.support) {
        if (used[id]) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      for (std::size_t id : c.support) used[id] = true;
      parts[i] = c.value;
      self(self, i + 1, next);
      for (std::size_t id : c.support) used[id] = false;
    }
  };
  step(step, 0, 1);
  return out;
}

ScanResult scan_min_ratio(std::uint64_t n_max, unsigned workers) {
  if (n_max < 2) throw std::invalid_argument("scan_min_ratio: need n_max >= 2");
  if (workers == 0) workers = 1;
  auto spf = spf_table(n_max);
  const mpq_class three_quarters{3, 4};

  std::vector<ScanShard> shards(workers);
  if (workers == 1) {
    for (std::uint64_t n = 2; n <= n_max; ++n) scan_one_n(n, spf, three_quarters, shards[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t n = 2 + w; n <= n_max; n += workers) {
          scan_one_n(n, spf, three_quarters, shards[w]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  ScanResult result;
  result.min_ratio = shards[0].min_ratio;
  for (const auto& s : shards) {
    if (s.min_ratio < result.min_ratio) result.min_ratio = s.min_ratio;
  }
  for (auto& s : shards) {
    for (auto& e : s.below) result.below_three_quarters.push_back(std::move(e));
    if (s.min_ratio == result.min_ratio) {
      for (auto& e : s.minima) result.minima.push_back(std::move(e));
    }
  }
  auto by_pair = [](const ScanEntry& a, const ScanEntry& b) {
    return a.n != b.n ? a.n < b.n : a.k < b.k;
  };
  std::sort(result.below_three_quarters.begin(), result.below_three_quarters.end(), by_pair);
  std::sort(result.minima.begin(), result.minima.end(), by_pair);
  return result;
}

DivisorReport analyze(const mpz_class& n, std::uint64_t k,
                      const std::vector<std::pair<mpz_class, mpz_class>>& intervals,
                      std::uint64_t threshold, const arith::FactorConfig& factoring,
                      const DivisorSearchConfig& search) {
  DivisorReport report;
  report.n = n;
  report.k = k;
  report.binomial_factorization = binomial_factorization(n, k, factoring);
  report.largest_divisor_le_n = largest_divisor_at_most(report.binomial_factorization, n, search);
  report.ratio = mpq_class{report.largest_divisor_le_n, n};
  report.ratio.canonicalize();
  report.term_splits = term_decomposition(n, k, threshold);
  for (const auto& [lo, hi] : intervals) {
    report.interval_queries.push_back(
        {lo, hi, divisor_in_interval(report.binomial_factorization, lo, hi, search)});
  }
  return report;
}

}  // namespace bindiv::divisors
