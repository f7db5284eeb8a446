#include <algorithm>
#include <sstream>
#include <vector>

#include "bindiv/arith.hpp"

namespace bindiv::arith {

namespace {

// Brent's cycle-finding variant of Pollard rho on x -> x^2 + c mod n.
// Returns a nontrivial factor or 1 on failure within the iteration budget.
mpz_class brent_rho(const mpz_class& n, unsigned long c, std::uint64_t budget) {
  mpz_class y = 2, x, q = 1, g = 1, ys, t;
  const unsigned long m = 128;  // gcd batching
  std::uint64_t spent = 0;
  for (std::uint64_t r = 1; g == 1 && spent < budget; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      y = (y * y + c) % n;
    }
    for (std::uint64_t j = 0; j < r && g == 1 && spent < budget; j += m) {
      ys = y;
      std::uint64_t steps = std::min<std::uint64_t>(m, r - j);
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = (y * y + c) % n;
        t = x - y;
        q = q * t % n;
      }
      spent += steps;
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    // Batch overshot the collision; replay one step at a time.
    do {
      ys = (ys * ys + c) % n;
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return 1;
  return g;
}

void factor_recursive(const mpz_class& n, const FactorConfig& cfg,
                      std::vector<FactorEntry>& out) {
  if (n == 1) return;
  if (is_prime(n, cfg.primality)) {
    out.push_back({n, 1});
    return;
  }
  // Perfect powers: reduce to the root so rho only ever sees non-powers.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
        std::vector<FactorEntry> sub;
        factor_recursive(root, cfg, sub);
        for (auto& f : sub) f.exponent *= e;
        out.insert(out.end(), sub.begin(), sub.end());
        return;
      }
    }
  }
  for (unsigned long c = 1; c <= 64; ++c) {
    mpz_class d = brent_rho(n, c, cfg.rho_iteration_budget);
    if (d != 1 && d != n) {
      factor_recursive(d, cfg, out);
      factor_recursive(n / d, cfg, out);
      return;
    }
  }
  std::ostringstream os;
  os << "factorize: budget exhausted on composite cofactor with "
     << mpz_sizeinbase(n.get_mpz_t(), 10) << " digits";
  throw FactoringGaveUp(os.str());
}

}  // namespace

Factorization factorize(const mpz_class& n, const FactorConfig& cfg) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<FactorEntry> entries;
  mpz_class rest = n;

  std::uint64_t tb = cfg.trial_division_bound;
  for (std::uint64_t p : primes_in(2, static_cast<std::int64_t>(tb))) {
    if (rest == 1) break;
    if (mpz_class{p} * p > rest) break;
    std::uint64_t e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) entries.push_back({mpz_class{p}, e});
  }
  if (rest > 1) {
    if (rest <= mpz_class{tb} * tb) {
      entries.push_back({rest, 1});  // below trial bound squared, must be prime
    } else {
      factor_recursive(rest, cfg, entries);
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
  // Merge duplicates from separate recursive branches.
  std::vector<FactorEntry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().prime == e.prime) {
      merged.back().exponent += e.exponent;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return Factorization::from_certified(std::move(merged));
}

}  // namespace bindiv::arith
