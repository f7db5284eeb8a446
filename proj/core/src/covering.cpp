#include "bindiv/covering.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

#include "bindiv/arith.hpp"

namespace bindiv::covering {

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t m) {
  std::int64_t q = x / m;
  if (x % m != 0 && (x < 0) != (m < 0)) --q;
  return q;
}

}  // namespace

bool is_restricted(std::int64_t a, std::uint64_t p, std::uint64_t k) {
  auto P = static_cast<std::int64_t>(p);
  auto K = static_cast<std::int64_t>(k);
  return floor_div(K, P) + floor_div(a - K, P) == floor_div(a, P);
}

std::vector<std::uint64_t> restricted_classes(std::uint64_t p, std::uint64_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (is_restricted(static_cast<std::int64_t>(r), p, k)) out.push_back(r);
  }
  return out;
}

CoverageReport verify_certificate(const CoverCertificate& cert, const VerifyOptions& opts) {
  CoverageReport report;
  std::vector<bool> covered(cert.k, false);
  for (const auto& [p, a] : cert.assignments) {
    if (p < cert.B || p > cert.k || !arith::is_prime(mpz_class{p})) {
      report.out_of_range_primes.push_back(p);
      continue;
    }
    if (a >= p || !is_restricted(static_cast<std::int64_t>(a), p, cert.k)) {
      report.unrestricted.emplace_back(p, a);
      continue;
    }
    if (p == cert.k && !opts.allow_self_cover) continue;
    for (std::uint64_t i = a; i < cert.k; i += p) covered[i] = true;
  }
  for (std::uint64_t i = 0; i < cert.k; ++i) {
    if (!covered[i]) report.uncovered.push_back(i);
  }
  report.valid = report.uncovered.empty() && report.unrestricted.empty() &&
                 report.out_of_range_primes.empty();
  return report;
}

namespace {

struct PrimeChoices {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> classes;  // restricted residues
  bool can_cover = false;              // p < k, or p == k with self-cover allowed
};

// Shared search fabric: primes descending, each with its restricted classes.
std::vector<PrimeChoices> choice_table(std::uint64_t k, std::uint64_t B,
                                       const VerifyOptions& verify) {
  std::vector<PrimeChoices> table;
  auto primes = arith::primes_in(static_cast<std::int64_t>(B), static_cast<std::int64_t>(k));
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    std::uint64_t p = *it;
    table.push_back({p, restricted_classes(p, k), p < k || verify.allow_self_cover});
  }
  return table;
}

std::uint64_t new_coverage(std::uint64_t r, std::uint64_t p, std::uint64_t k,
                           const std::vector<std::uint32_t>& cover_count) {
  std::uint64_t fresh = 0;
  for (std::uint64_t i = r; i < k; i += p) {
    if (cover_count[i] == 0) ++fresh;
  }
  return fresh;
}

struct ExhaustiveSearcher {
  std::uint64_t k;
  const std::vector<PrimeChoices>& table;
  std::vector<std::uint64_t> capacity_suffix;  // max coverage by table[i..]
  std::uint64_t residue_order_seed;
  std::atomic<std::uint64_t>& nodes;
  std::uint64_t node_budget;
  bool budget_hit = false;

  std::vector<std::uint32_t> cover_count;
  std::uint64_t uncovered;
  std::vector<std::uint64_t> picks;  // residue per table index, in table order
  std::optional<CoverCertificate> found;

  ExhaustiveSearcher(std::uint64_t k_, const std::vector<PrimeChoices>& table_,
                     std::uint64_t seed, std::atomic<std::uint64_t>& nodes_,
                     std::uint64_t budget)
      : k(k_), table(table_), residue_order_seed(seed), nodes(nodes_), node_budget(budget) {
    capacity_suffix.assign(table.size() + 1, 0);
    for (std::size_t i = table.size(); i-- > 0;) {
      std::uint64_t cap = table[i].can_cover ? (k + table[i].p - 1) / table[i].p : 0;
      capacity_suffix[i] = capacity_suffix[i + 1] + cap;
    }
    cover_count.assign(k, 0);
    uncovered = k;
    picks.assign(table.size(), 0);
  }

  std::vector<std::uint64_t> ordered_candidates(std::size_t idx) const {
    const auto& pc = table[idx];
    std::vector<std::uint64_t> order = pc.classes;
    if (residue_order_seed == 0) {
      std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return new_coverage(a, pc.p, k, cover_count) > new_coverage(b, pc.p, k, cover_count);
      });
    } else {
      std::mt19937_64 gen(residue_order_seed ^ (pc.p * 0x9E3779B97F4A7C15ull));
      std::shuffle(order.begin(), order.end(), gen);
    }
    return order;
  }

  void apply(std::size_t idx, std::uint64_t r, int direction) {
    const auto& pc = table[idx];
    if (!pc.can_cover) return;
    for (std::uint64_t i = r; i < k; i += pc.p) {
      if (direction > 0) {
        if (cover_count[i]++ == 0) --uncovered;
      } else {
        if (--cover_count[i] == 0) ++uncovered;
      }
    }
  }

  void complete_with_defaults(std::size_t idx) {
    // Coverage is already total; any restricted class works for the rest.
    CoverCertificate cert;
    cert.k = k;
    for (std::size_t j = 0; j < idx; ++j) cert.assignments[table[j].p] = picks[j];
    for (std::size_t j = idx; j < table.size(); ++j) {
      cert.assignments[table[j].p] = table[j].p - 1;  // normalized -1
    }
    found = cert;
  }

  // Returns true when the subtree finished exhaustively (no budget cut).
  bool run(std::size_t idx) {
    if (found) return true;
    if (uncovered == 0) {
      complete_with_defaults(idx);
      return true;
    }
    if (idx == table.size()) return true;  // dead end
    if (uncovered > capacity_suffix[idx]) return true;  // counting bound
    bool complete = true;
    for (std::uint64_t r : ordered_candidates(idx)) {
      if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > node_budget) {
        budget_hit = true;
        return false;
      }
      picks[idx] = r;
      apply(idx, r, +1);
      complete = run(idx + 1) && complete;
      apply(idx, r, -1);
      if (found) return complete;
      if (budget_hit) return false;
    }
    return complete;
  }
};

SearchResult exhaustive_search(std::uint64_t k, std::uint64_t B, const SearchOptions& opts) {
  auto table = choice_table(k, B, opts.verify);
  std::atomic<std::uint64_t> nodes{0};
  SearchResult result;

  if (opts.workers <= 1 || table.empty()) {
    ExhaustiveSearcher s(k, table, opts.residue_order_seed, nodes, opts.node_budget);
    bool complete = s.run(0);
    result.nodes_expanded = nodes.load();
    if (s.found) {
      result.status = SearchStatus::kFound;
      result.certificate = std::move(s.found);
    } else {
      result.status = complete && !s.budget_hit ? SearchStatus::kProvenNone
                                                : SearchStatus::kBudgetExhausted;
    }
    return result;
  }

  // Parallel mode: split the largest prime's residue choices across workers.
  // Every branch runs to completion so the outcome is worker-count independent;
  // ties between branch winners break toward the lexicographically smallest
  // assignment map.
  ExhaustiveSearcher probe(k, table, opts.residue_order_seed, nodes, opts.node_budget);
  std::vector<std::uint64_t> top = probe.ordered_candidates(0);
  struct BranchOutcome {
    std::optional<CoverCertificate> found;
    bool complete = true;
  };
  std::vector<BranchOutcome> outcomes(top.size());
  unsigned workers = std::min<unsigned>(opts.workers, top.size() == 0 ? 1 : top.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < top.size(); b += workers) {
        ExhaustiveSearcher s(k, table, opts.residue_order_seed, nodes, opts.node_budget);
        s.picks[0] = top[b];
        s.apply(0, top[b], +1);
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > opts.node_budget) {
          outcomes[b].complete = false;
          continue;
        }
        outcomes[b].complete = s.run(1);
        outcomes[b].found = std::move(s.found);
      }
    });
  }
  for (auto& t : pool) t.join();

  result.nodes_expanded = nodes.load();
  bool all_complete = true;
  std::optional<CoverCertificate> best;
  for (auto& o : outcomes) {
    all_complete = all_complete && o.complete;
    if (o.found && (!best || o.found->assignments < best->assignments)) {
      best = std::move(o.found);
    }
  }
  if (best) {
    result.status = SearchStatus::kFound;
    result.certificate = std::move(best);
  } else {
    result.status = all_complete ? SearchStatus::kProvenNone : SearchStatus::kBudgetExhausted;
  }
  return result;
}

struct GreedyState {
  std::uint64_t k;
  std::vector<PrimeChoices> table;  // reordered freely
  std::vector<std::uint32_t> cover_count;
  std::uint64_t uncovered;
  std::uint64_t nodes = 0;
  CoverCertificate cert;

  explicit GreedyState(std::uint64_t k_, std::uint64_t B, const VerifyOptions& verify)
      : k(k_), table(choice_table(k_, B, verify)) {
    cover_count.assign(k, 0);
    uncovered = k;
    cert.k = k;
    cert.B = B;
  }

  void assign(const PrimeChoices& pc, std::uint64_t r) {
    cert.assignments[pc.p] = r;
    if (!pc.can_cover) return;
    for (std::uint64_t i = r; i < k; i += pc.p) {
      if (cover_count[i]++ == 0) --uncovered;
    }
  }

  // Best residue for pc against the current gap set: most new coverage,
  // ties to the smallest residue.
  std::pair<std::uint64_t, std::uint64_t> best_class(const PrimeChoices& pc) {
    std::uint64_t best_r = pc.classes.front(), best_gain = 0;
    for (std::uint64_t r : pc.classes) {
      ++nodes;
      std::uint64_t gain = pc.can_cover ? new_coverage(r, pc.p, k, cover_count) : 0;
      if (gain > best_gain) {
        best_gain = gain;
        best_r = r;
      }
    }
    return {best_r, best_gain};
  }
};

SearchResult greedy_search(std::uint64_t k, std::uint64_t B, const SearchOptions& opts) {
  GreedyState st(k, B, opts.verify);
  // Ascending primes for stable tie-breaking: smallest p wins equal gains.
  std::sort(st.table.begin(), st.table.end(),
            [](const PrimeChoices& a, const PrimeChoices& b) { return a.p < b.p; });
  std::vector<bool> assigned(st.table.size(), false);
  for (std::size_t round = 0; round < st.table.size(); ++round) {
    std::size_t pick = st.table.size();
    std::uint64_t pick_r = 0, pick_gain = 0;
    for (std::size_t j = 0; j < st.table.size(); ++j) {
      if (assigned[j]) continue;
      auto [r, gain] = st.best_class(st.table[j]);
      if (pick == st.table.size() || gain > pick_gain) {
        pick = j;
        pick_r = r;
        pick_gain = gain;
      }
    }
    assigned[pick] = true;
    st.assign(st.table[pick], pick_r);
  }
  SearchResult result;
  result.nodes_expanded = st.nodes;
  if (st.uncovered == 0) {
    result.status = SearchStatus::kFound;
    result.certificate = std::move(st.cert);
  } else {
    result.status = SearchStatus::kBudgetExhausted;  // heuristic miss, not a proof
  }
  return result;
}

SearchResult erdos_search(std::uint64_t k, std::uint64_t B, const SearchOptions& opts) {
  GreedyState st(k, B, opts.verify);
  std::sort(st.table.begin(), st.table.end(),
            [](const PrimeChoices& a, const PrimeChoices& b) { return a.p < b.p; });
  SearchResult result;
  if (st.table.empty()) {
    result.status = SearchStatus::kBudgetExhausted;
    return result;
  }
  // Stage 1: anchor the least prime q, at 0 when q | k (0 is then restricted).
  {
    const auto& q = st.table.front();
    if (k % q.p == 0) {
      st.assign(q, 0);
      ++st.nodes;
    } else {
      st.assign(q, st.best_class(q).first);
    }
  }
  // Stage 2: the classical default a(p) = -1 for mid-range primes.
  for (std::size_t j = 1; j < st.table.size(); ++j) {
    if (st.table[j].p > k / 2) break;
    st.assign(st.table[j], st.table[j].p - 1);
    ++st.nodes;
  }
  // Stage 3: primes above k/2 mop up the stragglers greedily.
  for (std::size_t j = 1; j < st.table.size(); ++j) {
    if (st.table[j].p <= k / 2) continue;
    st.assign(st.table[j], st.best_class(st.table[j]).first);
  }
  result.nodes_expanded = st.nodes;
  if (st.uncovered == 0) {
    result.status = SearchStatus::kFound;
    result.certificate = std::move(st.cert);
  } else {
    result.status = SearchStatus::kBudgetExhausted;
  }
  return result;
}

}  // namespace

SearchResult search_certificate(std::uint64_t k, std::uint64_t B, SearchStrategy strategy,
                                const SearchOptions& opts) {
  if (B < 1 || B >= k) throw std::invalid_argument("search_certificate: need 1 <= B < k");
  SearchResult result;
  switch (strategy) {
    case SearchStrategy::kExhaustive:
      result = exhaustive_search(k, B, opts);
      break;
    case SearchStrategy::kGreedy:
      result = greedy_search(k, B, opts);
      break;
    case SearchStrategy::kErdos:
      result = erdos_search(k, B, opts);
      break;
  }
  if (result.certificate) {
    result.certificate->B = B;
    result.certificate->k = k;
    auto report = verify_certificate(*result.certificate, opts.verify);
    if (!report.valid) {
      throw InternalInconsistency("search_certificate produced an invalid certificate");
    }
  }
  return result;
}

MinimalResult minimal_k(std::uint64_t B, std::uint64_t k_max, const SearchOptions& opts) {
  MinimalResult result;
  for (std::uint64_t k = B + 1; k <= k_max; ++k) {
    SearchResult r = search_certificate(k, B, SearchStrategy::kExhaustive, opts);
    result.nodes_expanded += r.nodes_expanded;
    result.status = r.status;
    if (r.status == SearchStatus::kFound) {
      result.k = k;
      return result;
    }
    if (r.status == SearchStatus::kBudgetExhausted) return result;  // cannot certify beyond
  }
  result.status = SearchStatus::kProvenNone;
  return result;
}

}  // namespace bindiv::covering
