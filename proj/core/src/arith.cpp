#include "bindiv/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>

namespace bindiv::arith {

namespace {

// Proven deterministic Miller-Rabin bases for all n < 3.317e24 (covers 2^64).
constexpr std::uint64_t kFixedBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Returns true when `a` proves n composite. n odd, n - 1 = d * 2^s.
bool witness_says_composite(const mpz_class& a, const mpz_class& n, const mpz_class& d,
                            unsigned long s) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

std::uint64_t derive_witness_seed(const mpz_class& n, std::uint64_t user_seed) {
  // Deterministic per-n seed so probabilistic results are reproducible.
  std::uint64_t h = mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFFFFFFFFC5ull);
  h ^= static_cast<std::uint64_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) << 32;
  h ^= 0x9E3779B97F4A7C15ull + user_seed;
  return h;
}

}  // namespace

Factorization::Factorization(std::vector<FactorEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
  for (auto& e : entries) {
    if (e.exponent == 0) continue;
    if (!entries_.empty() && entries_.back().prime == e.prime) {
      entries_.back().exponent += e.exponent;
      continue;
    }
    if (!is_prime(e.prime)) {
      std::ostringstream os;
      os << "factorization entry " << e.prime << " is not prime";
      throw std::invalid_argument(os.str());
    }
    entries_.push_back(std::move(e));
  }
}

Factorization Factorization::from_certified(std::vector<FactorEntry> entries) {
  Factorization f;
  f.entries_ = std::move(entries);
  return f;
}

mpz_class Factorization::value() const {
  mpz_class v = 1;
  mpz_class pw;
  for (const auto& e : entries_) {
    mpz_pow_ui(pw.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
    v *= pw;
  }
  return v;
}

std::uint64_t Factorization::valuation(const mpz_class& p) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const FactorEntry& e, const mpz_class& q) { return e.prime < q; });
  if (it != entries_.end() && it->prime == p) return it->exponent;
  return 0;
}

std::optional<mpz_class> Factorization::least_prime_factor() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().prime;
}

mpz_class Factorization::greatest_prime_factor() const {
  if (entries_.empty()) return 1;
  return entries_.back().prime;
}

std::uint64_t Factorization::total_prime_count() const {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.exponent;
  return total;
}

mpz_class Factorization::divisor_count() const {
  mpz_class count = 1;
  for (const auto& e : entries_) count *= e.exponent + 1;
  return count;
}

Factorization Factorization::multiplied_by(const Factorization& other) const {
  std::vector<FactorEntry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->prime < b->prime)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->prime < a->prime) {
      merged.push_back(*b++);
    } else {
      merged.push_back({a->prime, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  return from_certified(std::move(merged));
}

Factorization Factorization::divided_by(const Factorization& other) const {
  std::vector<FactorEntry> out;
  out.reserve(entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->prime < b->prime)) {
      out.push_back(*a++);
    } else if (a == entries_.end() || b->prime < a->prime) {
      std::ostringstream os;
      os << "exact division fails at prime " << b->prime;
      throw InternalInconsistency(os.str());
    } else {
      if (a->exponent < b->exponent) {
        std::ostringstream os;
        os << "exact division fails at prime " << a->prime << ": " << a->exponent << " < "
           << b->exponent;
        throw InternalInconsistency(os.str());
      }
      if (a->exponent > b->exponent) out.push_back({a->prime, a->exponent - b->exponent});
      ++a;
      ++b;
    }
  }
  return from_certified(std::move(out));
}

bool is_prime(const mpz_class& n, const PrimalityConfig& cfg) {
  if (n < 2) return false;
  for (std::uint64_t p : kFixedBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  for (std::uint64_t b : kFixedBases) {
    if (witness_says_composite(mpz_class{b}, n, d, s)) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;  // proven range

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(derive_witness_seed(n, cfg.witness_seed));
  mpz_class span = n - 3;  // witnesses in [2, n-2]
  for (unsigned i = 0; i < cfg.extra_witnesses; ++i) {
    mpz_class a = 2 + rng.get_z_range(span);
    if (witness_says_composite(a, n, d, s)) return false;
  }
  return true;
}

mpz_class legendre_valuation(const mpz_class& p, const mpz_class& m) {
  mpz_class sum = 0;
  mpz_class t = m / p;
  while (t > 0) {
    sum += t;
    t /= p;
  }
  return sum;
}

std::uint64_t kummer_valuation(const mpz_class& p, const mpz_class& n, const mpz_class& k) {
  // Add k and n-k in base p, counting carries. The loop touches only as many
  // digits as k occupies plus any trailing carry chain through n-k.
  mpz_class a = k;
  mpz_class b = n - k;
  mpz_class da, db;
  std::uint64_t carries = 0;
  unsigned carry = 0;
  while (a > 0 || carry != 0) {
    mpz_fdiv_qr(a.get_mpz_t(), da.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    mpz_fdiv_qr(b.get_mpz_t(), db.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());
    da += db + carry;
    carry = (da >= p) ? 1 : 0;
    carries += carry;
  }
  return carries;
}

bool carry_criterion(const mpz_class& p, const mpz_class& n, const mpz_class& k) {
  mpz_class rk = k % p;
  mpz_class rnk = (n - k) % p;
  return 2 * rk > p && 2 * rnk > p;
}

std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y, const SmoothConfig& cfg) {
  if (x == 0) return 0;
  if (y >= x) return x;  // every integer <= x is then y-smooth

  std::vector<std::uint64_t> primes = primes_in(2, static_cast<std::int64_t>(y));
  if (primes.empty()) return 1;  // only 1 is y-smooth for y < 2 handled by pre, y in {2,3,..}

  struct Node {
    std::uint64_t value;
    std::uint32_t max_prime_index;  // only multiply by primes[j], j >= this
    bool operator>(const Node& o) const { return value > o.value; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  heap.push({1, 0});
  std::uint64_t count = 0;
  while (!heap.empty()) {
    Node cur = heap.top();
    heap.pop();
    if (++count > cfg.enumeration_cap) {
      throw RangeTooLarge("smooth_count: enumeration cap exceeded (raise "
                          "SmoothConfig::enumeration_cap)");
    }
    for (std::uint32_t j = cur.max_prime_index; j < primes.size(); ++j) {
      if (cur.value > x / primes[j]) break;  // primes ascending, so done
      heap.push({cur.value * primes[j], j});
    }
  }
  return count;
}

CongruenceSystem crt_combine(std::span<const Congruence> congruences) {
  CongruenceSystem sys;
  sys.combined_residue = 0;
  sys.combined_modulus = 1;
  mpz_class g, u, v;
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    const Congruence& c = congruences[i];
    if (c.modulus < 1) throw std::invalid_argument("crt_combine: modulus must be >= 1");
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
               sys.combined_modulus.get_mpz_t(), c.modulus.get_mpz_t());
    if (g != 1) {
      // Locate the earlier congruence that collides, for the error message.
      std::size_t offender = i;
      for (std::size_t j = 0; j < i; ++j) {
        mpz_class gj;
        mpz_gcd(gj.get_mpz_t(), congruences[j].modulus.get_mpz_t(), c.modulus.get_mpz_t());
        if (gj != 1) {
          offender = j;
          break;
        }
      }
      std::ostringstream os;
      os << "crt_combine: moduli not coprime (entries " << offender << " and " << i
         << ": gcd(" << congruences[offender].modulus << ", " << c.modulus << ") > 1)";
      throw NonCoprimeModuli(os.str());
    }
    // x = r_old * v * m_new + r_new * u * m_old (mod m_old * m_new)
    mpz_class merged_mod = sys.combined_modulus * c.modulus;
    mpz_class x = sys.combined_residue * v % merged_mod * c.modulus +
                  c.residue * u % merged_mod * sys.combined_modulus;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), merged_mod.get_mpz_t());
    sys.combined_residue = x;
    sys.combined_modulus = merged_mod;
    sys.congruences.push_back(c);
  }
  return sys;
}

}  // namespace bindiv::arith
