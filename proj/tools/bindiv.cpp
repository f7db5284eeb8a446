// bindiv: exact binomial-coefficient divisor toolkit.
//
// Exit codes: 0 success / valid / all checks pass
//             1 invalid certificate, proven nonexistence, failed audit or check
//             2 malformed input (command line or JSON)
//             3 factoring budget exhausted
//             4 search or enumeration budget exhausted

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bindiv/arith.hpp"
#include "bindiv/covering.hpp"
#include "bindiv/divisors.hpp"
#include "bindiv/errors.hpp"
#include "bindiv/progression.hpp"
#include "bindiv/serialize.hpp"
#include "json.hpp"

using namespace bindiv;

namespace {

struct Globals {
  std::string format = "text";
  std::uint64_t budget_factor = arith::FactorConfig{}.rho_iteration_budget;
  std::uint64_t budget_search = covering::SearchOptions{}.node_budget;
  unsigned workers = 1;
  std::uint64_t seed = 0;

  bool json() const { return format == "json"; }
  arith::FactorConfig factor_config() const {
    arith::FactorConfig cfg;
    cfg.rho_iteration_budget = budget_factor;
    cfg.primality.witness_seed = seed;
    return cfg;
  }
  covering::SearchOptions search_options() const {
    covering::SearchOptions opts;
    opts.node_budget = budget_search;
    opts.workers = workers;
    opts.residue_order_seed = seed;
    return opts;
  }
};

mpz_class parse_mpz(const std::string& text) {
  mpz_class v;
  if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0) {
    throw ParseError("not a decimal integer: '" + text + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text << "\n";
}

std::string factorization_str(const arith::Factorization& f) {
  if (f.entries().empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& e : f.entries()) {
    if (!first) os << " * ";
    first = false;
    os << e.prime;
    if (e.exponent > 1) os << "^" << e.exponent;
  }
  return os.str();
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeArgs {
  std::string n, k;
  std::vector<std::string> intervals;
  std::uint64_t threshold = 0;
};

int cmd_analyze(const Globals& g, const AnalyzeArgs& a) {
  mpz_class n = parse_mpz(a.n);
  mpz_class k_z = parse_mpz(a.k);
  if (k_z < 1 || !k_z.fits_ulong_p()) throw ParseError("k out of range: " + a.k);
  std::uint64_t k = mpz_get_ui(k_z.get_mpz_t());

  std::vector<std::pair<mpz_class, mpz_class>> intervals;
  for (const std::string& spec : a.intervals) {
    if (spec == "half") {
      intervals.emplace_back(n / 2, n);
      continue;
    }
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
      throw ParseError("interval must be lo:hi or 'half', got '" + spec + "'");
    }
    intervals.emplace_back(parse_mpz(spec.substr(0, colon)),
                           parse_mpz(spec.substr(colon + 1)));
  }

  auto report = divisors::analyze(n, k, intervals, a.threshold, g.factor_config());
  if (g.json()) {
    std::cout << serialize::divisor_report_to_json(report) << "\n";
    return 0;
  }
  std::cout << "C(" << report.n << ", " << report.k
            << ") = " << factorization_str(report.binomial_factorization) << "\n";
  std::cout << "largest divisor <= " << report.n << " is " << report.largest_divisor_le_n
            << "\n";
  std::cout << "ratio " << serialize::ratio_to_decimal(report.ratio, 6) << "\n";
  for (const auto& q : report.interval_queries) {
    if (q.divisor.has_value()) {
      std::cout << "divisor " << *q.divisor << " in (" << q.lo << ", " << q.hi << "]\n";
    } else {
      std::cout << "no divisor in (" << q.lo << ", " << q.hi << "]\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------------- cert --

int cmd_cert_verify(const Globals& g, const std::string& path) {
  auto cert = serialize::certificate_from_json(read_file(path));
  auto report = covering::verify_certificate(cert);
  if (g.json()) {
    std::cout << serialize::coverage_report_to_json(report) << "\n";
  } else {
    std::cout << "certificate k=" << cert.k << " B=" << cert.B << ": "
              << (report.valid ? "valid" : "invalid") << "\n";
    for (auto i : report.uncovered) std::cout << "  uncovered: " << i << "\n";
    for (const auto& [p, a] : report.unrestricted) {
      std::cout << "  unrestricted class: a(" << p << ") = " << a << "\n";
    }
    for (auto p : report.out_of_range_primes) {
      std::cout << "  out-of-range prime: " << p << "\n";
    }
  }
  return report.valid ? 0 : 1;
}

const char* strategy_name(covering::SearchStrategy s) {
  switch (s) {
    case covering::SearchStrategy::kExhaustive: return "exhaustive";
    case covering::SearchStrategy::kGreedy: return "greedy";
    case covering::SearchStrategy::kErdos: return "erdos";
  }
  return "?";
}

int cmd_cert_search(const Globals& g, std::uint64_t k, std::uint64_t B,
                    const std::string& strategy, const std::string& out_path) {
  covering::SearchStrategy strat = covering::SearchStrategy::kExhaustive;
  if (strategy == "greedy") strat = covering::SearchStrategy::kGreedy;
  else if (strategy == "erdos") strat = covering::SearchStrategy::kErdos;
  else if (strategy != "exhaustive") throw ParseError("unknown strategy " + strategy);

  auto res = covering::search_certificate(k, B, strat, g.search_options());
  switch (res.status) {
    case covering::SearchStatus::kFound:
      std::cerr << "found certificate for k=" << k << " B=" << B << " ("
                << strategy_name(strat) << ", " << res.nodes_expanded << " nodes)\n";
      emit(serialize::certificate_to_json(*res.certificate), out_path);
      return 0;
    case covering::SearchStatus::kProvenNone:
      std::cerr << "no covering certificate exists for k=" << k << " B=" << B << "\n";
      return 1;
    case covering::SearchStatus::kBudgetExhausted:
      std::cerr << "search budget exhausted after " << res.nodes_expanded << " nodes\n";
      return 4;
  }
  return 2;
}

int cmd_cert_minimal(const Globals& g, std::uint64_t B, std::uint64_t k_max) {
  auto res = covering::minimal_k(B, k_max, g.search_options());
  if (g.json()) {
    nlohmann::json j;
    j["B"] = B;
    j["k_max"] = k_max;
    j["k"] = res.k.has_value() ? nlohmann::json(*res.k) : nlohmann::json(nullptr);
    j["status"] = res.status == covering::SearchStatus::kFound        ? "found"
                  : res.status == covering::SearchStatus::kProvenNone ? "none"
                                                                      : "budget-exhausted";
    j["nodes"] = res.nodes_expanded;
    std::cout << j.dump(2) << "\n";
  } else if (res.k.has_value()) {
    std::cout << *res.k << "\n";
  } else {
    std::cout << "none up to " << k_max << "\n";
  }
  if (res.status == covering::SearchStatus::kFound) return 0;
  return res.status == covering::SearchStatus::kProvenNone ? 1 : 4;
}

// ------------------------------------------------------------ progression --

int cmd_progression_build(const Globals& g, const std::string& cert_path,
                          const std::string& out_path) {
  (void)g;
  auto cert = serialize::certificate_from_json(read_file(cert_path));
  auto spec = progression::build_progression(cert);
  emit(serialize::progression_to_json(spec), out_path);
  return 0;
}

int cmd_progression_verify(const Globals& g, const std::string& spec_path,
                           std::uint64_t samples, bool augmented) {
  auto spec = serialize::progression_from_json(read_file(spec_path));
  auto audits = progression::verify_progression(spec, samples, augmented);
  bool all_ok = true;
  if (g.json()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& audit : audits) {
      nlohmann::json j;
      j["n"] = audit.n.get_str();
      j["passed"] = audit.passed();
      j["prime_divisor_violations"] = audit.prime_divisor_violations;
      j["term_coverage_violations"] = audit.term_coverage_violations;
      arr.push_back(std::move(j));
      all_ok = all_ok && audit.passed();
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < audits.size(); ++i) {
      const auto& audit = audits[i];
      std::cout << "sample " << i << ": n = " << audit.n << " "
                << (audit.passed() ? "ok" : "FAIL") << "\n";
      for (auto p : audit.prime_divisor_violations) {
        std::cout << "  prime " << p << " divides C(n, " << spec.k << ")\n";
      }
      for (auto i2 : audit.term_coverage_violations) {
        std::cout << "  term n - " << i2 << " not covered\n";
      }
      all_ok = all_ok && audit.passed();
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_progression_schinzel(const Globals& g, const std::string& n_str, std::uint64_t k) {
  auto report = progression::schinzel_checks(parse_mpz(n_str), k, g.factor_config());
  if (g.json()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : report.rows) {
      arr.push_back({{"i", row.index},
                     {"term", row.term.get_str()},
                     {"gcd_with_k_factorial", row.gcd_with_k_factorial.get_str()},
                     {"divides_binomial", row.term_divides_binomial}});
    }
    nlohmann::json j{{"n", report.n.get_str()},
                     {"k", report.k},
                     {"rows", std::move(arr)},
                     {"all_gcds_at_least_two", report.all_gcds_at_least_two()},
                     {"any_term_divides", report.any_term_divides()}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& row : report.rows) {
      std::cout << "i=" << row.index << " term=" << row.term
                << " gcd(term, k!)=" << row.gcd_with_k_factorial << " divides C(n,k): "
                << (row.term_divides_binomial ? "yes" : "no") << "\n";
    }
    std::cout << "all gcds >= 2: " << (report.all_gcds_at_least_two() ? "yes" : "no")
              << "\n";
    std::cout << "any term divides: " << (report.any_term_divides() ? "yes" : "no")
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------- smooth / scan --

int cmd_smooth_count(const Globals& g, std::uint64_t x, std::uint64_t y) {
  std::uint64_t count = arith::smooth_count(x, y);
  if (g.json()) {
    std::cout << nlohmann::json{{"x", x}, {"y", y}, {"count", count}}.dump(2) << "\n";
  } else {
    std::cout << "Psi(" << x << ", " << y << ") = " << count << "\n";
  }
  return 0;
}

nlohmann::json scan_entry_json(const divisors::ScanEntry& e) {
  return {{"n", e.n},
          {"k", e.k},
          {"ratio",
           {{"numerator", e.ratio.get_num().get_str()},
            {"denominator", e.ratio.get_den().get_str()}}}};
}

int cmd_scan(const Globals& g, std::uint64_t n_max) {
  auto scan = divisors::scan_min_ratio(n_max, std::max(1u, g.workers));
  if (g.json()) {
    nlohmann::json j;
    j["n_max"] = n_max;
    j["min_ratio"] = {{"numerator", scan.min_ratio.get_num().get_str()},
                      {"denominator", scan.min_ratio.get_den().get_str()}};
    j["minima"] = nlohmann::json::array();
    for (const auto& e : scan.minima) j["minima"].push_back(scan_entry_json(e));
    j["below_three_quarters"] = nlohmann::json::array();
    for (const auto& e : scan.below_three_quarters) {
      j["below_three_quarters"].push_back(scan_entry_json(e));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "scanned 2 <= n <= " << n_max << ", 1 <= k <= n/2\n";
    std::cout << "min ratio " << scan.min_ratio.get_num() << "/" << scan.min_ratio.get_den()
              << " at:";
    for (const auto& e : scan.minima) std::cout << " (" << e.n << "," << e.k << ")";
    std::cout << "\n";
    if (scan.below_three_quarters.empty()) {
      std::cout << "no ratio below 3/4\n";
    } else {
      for (const auto& e : scan.below_three_quarters) {
        std::cout << "below 3/4: (" << e.n << "," << e.k << ")\n";
      }
    }
  }
  return 0;
}

// -------------------------------------------------------------- reproduce --

struct Reproducer {
  const Globals& g;
  std::vector<std::pair<std::string, bool>> items;
  std::vector<std::string> details;

  void check(const std::string& name, bool ok, const std::string& detail) {
    items.emplace_back(name, ok);
    details.push_back(detail);
    if (!g.json()) {
      std::cout << (ok ? "ok   " : "FAIL ") << name << ": " << detail << "\n";
    }
  }

  bool all_ok() const {
    for (const auto& [name, ok] : items) {
      if (!ok) return false;
    }
    return true;
  }
};

void reproduce_examples(Reproducer& r, const nlohmann::json& expected, const Globals& g) {
  auto fcfg = g.factor_config();

  for (const char* key : {"small", "m0"}) {
    const auto& fix = expected.at(key);
    mpz_class n = parse_mpz(fix.at("n").get<std::string>());
    auto rep = divisors::analyze(n, fix.at("k").get<std::uint64_t>(), {}, 0, fcfg);
    mpz_class want = parse_mpz(fix.at("largest_divisor_le_n").get<std::string>());
    std::string ratio6 = serialize::ratio_to_decimal(rep.ratio, 6);
    bool ok = rep.largest_divisor_le_n == want &&
              ratio6 == fix.at("ratio_decimal_6").get<std::string>();
    if (fix.contains("ratio_decimal_5")) {
      ok = ok && serialize::ratio_to_decimal(rep.ratio, 5) ==
                     fix.at("ratio_decimal_5").get<std::string>();
    }
    r.check(std::string("largest divisor at n = ") + fix.at("n").get<std::string>(), ok,
            "largest " + rep.largest_divisor_le_n.get_str() + ", ratio " + ratio6);
  }

  {
    const auto& fix = expected.at("n0");
    mpz_class n0 = parse_mpz(fix.at("n").get<std::string>());
    std::uint64_t k = fix.at("k").get<std::uint64_t>();
    auto f = divisors::binomial_factorization(n0, k, fcfg);
    bool squarefree = true;
    for (const auto& e : f.entries()) squarefree = squarefree && e.exponent == 1;
    auto inside = divisors::divisor_in_interval(f, n0 / 2, n0);
    bool ok = f.size() == fix.at("distinct_primes").get<std::size_t>() && squarefree &&
              !inside.has_value();
    std::ostringstream os;
    os << f.size() << " distinct primes, "
       << (inside.has_value() ? "divisor in (n/2, n]" : "no divisor in (n/2, n]");
    r.check("squarefree record at n0", ok, os.str());
  }

  {
    const auto& fix = expected.at("schinzel");
    auto rep = progression::schinzel_checks(parse_mpz(fix.at("n").get<std::string>()),
                                            fix.at("k").get<std::uint64_t>(), fcfg);
    bool ok = rep.all_gcds_at_least_two() && !rep.any_term_divides();
    r.check("schinzel block at 99215", ok,
            std::string("gcds >= 2: ") + (rep.all_gcds_at_least_two() ? "yes" : "no") +
                ", any term divides: " + (rep.any_term_divides() ? "yes" : "no"));
  }

  {
    const auto& fix = expected.at("progression");
    auto cert = serialize::certificate_from_json(
        read_file(fix.at("certificate").get<std::string>()));
    auto spec = progression::build_progression(cert);
    mpz_class want_n = parse_mpz(fix.at("base_modulus").get<std::string>());
    std::uint64_t samples = fix.at("samples").get<std::uint64_t>();
    bool ok = spec.base_modulus == want_n;
    for (bool augmented : {false, true}) {
      for (const auto& audit : progression::verify_progression(spec, samples, augmented)) {
        ok = ok && audit.passed();
      }
    }
    r.check("progression construction at k = 15", ok,
            "N = " + spec.base_modulus.get_str() + ", " + std::to_string(samples) +
                " base + augmented audits");
  }
}

void reproduce_certificates(Reproducer& r, const Globals&) {
  for (const char* path : {"data/k15.json", "data/k430.json"}) {
    auto cert = serialize::certificate_from_json(read_file(path));
    auto report = covering::verify_certificate(cert);
    std::ostringstream os;
    os << "k=" << cert.k << " B=" << cert.B << " "
       << (report.valid ? "valid" : "invalid");
    r.check(std::string("certificate ") + path, report.valid, os.str());
  }
}

void reproduce_scan(Reproducer& r, const nlohmann::json& expected, const Globals& g,
                    std::uint64_t n_max_override) {
  const auto& fix = expected.at("scan");
  std::uint64_t n_max =
      n_max_override > 0 ? n_max_override : fix.at("n_max").get<std::uint64_t>();
  auto scan = divisors::scan_min_ratio(n_max, std::max(1u, g.workers));
  mpq_class want(fix.at("min_ratio_numerator").get<long>(),
                 fix.at("min_ratio_denominator").get<long>());
  bool ok = scan.below_three_quarters.empty() && scan.min_ratio == want;
  const auto& minima = fix.at("minima");
  ok = ok && scan.minima.size() == minima.size();
  if (ok) {
    for (std::size_t i = 0; i < minima.size(); ++i) {
      ok = ok && scan.minima[i].n == minima[i][0].get<std::uint64_t>() &&
           scan.minima[i].k == minima[i][1].get<std::uint64_t>();
    }
  }
  std::ostringstream os;
  os << "n <= " << n_max << ": min " << scan.min_ratio.get_num() << "/"
     << scan.min_ratio.get_den() << " at";
  for (const auto& e : scan.minima) os << " (" << e.n << "," << e.k << ")";
  r.check("small-binomial scan", ok, os.str());
}

int cmd_reproduce(const Globals& g, const std::string& suite, std::uint64_t n_max) {
  auto expected = nlohmann::json::parse(read_file("data/expected.json"), nullptr, false);
  if (expected.is_discarded()) throw ParseError("data/expected.json is not valid JSON");

  Reproducer r{g};
  try {
    if (suite == "all" || suite == "examples") reproduce_examples(r, expected, g);
    if (suite == "all" || suite == "certificates") reproduce_certificates(r, g);
    if (suite == "all" || suite == "scan") reproduce_scan(r, expected, g, n_max);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("data/expected.json: ") + e.what());
  }

  if (g.json()) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < r.items.size(); ++i) {
      arr.push_back({{"name", r.items[i].first},
                     {"ok", r.items[i].second},
                     {"detail", r.details[i]}});
    }
    std::cout << nlohmann::json{{"suite", suite}, {"items", std::move(arr)},
                                {"all_ok", r.all_ok()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (r.all_ok() ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return r.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"exact divisors of binomial coefficients: records, certificates, progressions"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("BINDIV_FORMAT");
  app.add_option("--budget-factor", g.budget_factor, "Pollard rho iteration budget")
      ->check(CLI::PositiveNumber)
      ->envname("BINDIV_BUDGET_FACTOR");
  app.add_option("--budget-search", g.budget_search, "covering search node budget")
      ->check(CLI::PositiveNumber)
      ->envname("BINDIV_BUDGET_SEARCH");
  app.add_option("--workers", g.workers, "worker threads for search and scan")
      ->check(CLI::PositiveNumber)
      ->envname("BINDIV_WORKERS");
  app.add_option("--seed", g.seed, "seed for randomized primality witnesses and search order")
      ->envname("BINDIV_SEED");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "factor C(n,k) and search its divisors");
  analyze->add_option("n", analyze_args.n, "n (decimal)")->required();
  analyze->add_option("k", analyze_args.k, "k (decimal)")->required();
  analyze->add_option("--interval", analyze_args.intervals,
                      "divisor interval query lo:hi (exclusive:inclusive), or 'half'");
  analyze->add_option("--threshold", analyze_args.threshold,
                      "smooth/rough split threshold (default k)");

  auto* cert = app.add_subcommand("cert", "covering certificates");
  cert->require_subcommand(1);
  std::string cert_path;
  auto* cert_verify = cert->add_subcommand("verify", "verify a certificate file");
  cert_verify->add_option("file", cert_path, "certificate JSON")->required();

  std::uint64_t search_k = 0, search_B = 2;
  std::string search_strategy = "exhaustive", search_out;
  auto* cert_search = cert->add_subcommand("search", "search for a certificate");
  cert_search->add_option("--k", search_k, "cover 0..k-1")->required();
  cert_search->add_option("--B", search_B, "least admissible prime")->required();
  cert_search->add_option("--strategy", search_strategy, "exhaustive | greedy | erdos")
      ->check(CLI::IsMember({"exhaustive", "greedy", "erdos"}));
  cert_search->add_option("-o,--output", search_out, "write certificate here");

  std::uint64_t minimal_B = 2, minimal_kmax = 0;
  auto* cert_minimal = cert->add_subcommand("minimal", "least k with a covering certificate");
  cert_minimal->add_option("--B", minimal_B, "least admissible prime")->required();
  cert_minimal->add_option("--kmax", minimal_kmax, "largest k to try")->required();

  auto* prog = app.add_subcommand("progression", "arithmetic progressions from certificates");
  prog->require_subcommand(1);
  std::string build_cert_path, build_out;
  auto* prog_build = prog->add_subcommand("build", "certificate -> progression spec");
  prog_build->add_option("certificate", build_cert_path, "certificate JSON")->required();
  prog_build->add_option("-o,--output", build_out, "write spec here");

  std::string verify_spec_path;
  std::uint64_t verify_samples = 8;
  bool verify_augmented = false;
  auto* prog_verify = prog->add_subcommand("verify", "audit progression members");
  prog_verify->add_option("spec", verify_spec_path, "progression spec JSON")->required();
  prog_verify->add_option("--samples", verify_samples, "members to audit")
      ->check(CLI::PositiveNumber);
  prog_verify->add_flag("--augmented", verify_augmented, "use the augmented progression");

  std::string schinzel_n;
  std::uint64_t schinzel_k = 0;
  auto* prog_schinzel = prog->add_subcommand("schinzel", "gcd/divisibility table for n..n-k+1");
  prog_schinzel->add_option("n", schinzel_n, "n (decimal)")->required();
  prog_schinzel->add_option("k", schinzel_k, "k")->required();

  std::uint64_t smooth_x = 0, smooth_y = 0;
  auto* smooth = app.add_subcommand("smooth-count", "Psi(x,y): y-smooth integers up to x");
  smooth->add_option("x", smooth_x, "upper bound")->required();
  smooth->add_option("y", smooth_y, "smoothness bound")->required();

  std::uint64_t scan_nmax = 0;
  auto* scan = app.add_subcommand("scan", "minimum near-n divisor ratio over all (n,k)");
  scan->add_option("--nmax", scan_nmax, "scan 2 <= n <= nmax")
      ->required()
      ->check(CLI::PositiveNumber);

  std::string repro_suite = "all";
  std::uint64_t repro_nmax = 0;
  auto* repro = app.add_subcommand("reproduce", "re-derive the bundled expected results");
  repro->add_option("suite", repro_suite, "all | examples | certificates | scan")
      ->check(CLI::IsMember({"all", "examples", "certificates", "scan"}));
  repro->add_option("--nmax", repro_nmax, "override the scan bound");

  // Global flags are accepted after subcommands too (bindiv analyze 4 2 --format json).
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::cerr << "seed: " << g.seed << "\n";

  try {
    if (*analyze) return cmd_analyze(g, analyze_args);
    if (*cert_verify) return cmd_cert_verify(g, cert_path);
    if (*cert_search) return cmd_cert_search(g, search_k, search_B, search_strategy, search_out);
    if (*cert_minimal) return cmd_cert_minimal(g, minimal_B, minimal_kmax);
    if (*prog_build) return cmd_progression_build(g, build_cert_path, build_out);
    if (*prog_verify) return cmd_progression_verify(g, verify_spec_path, verify_samples,
                                                    verify_augmented);
    if (*prog_schinzel) return cmd_progression_schinzel(g, schinzel_n, schinzel_k);
    if (*smooth) return cmd_smooth_count(g, smooth_x, smooth_y);
    if (*scan) return cmd_scan(g, scan_nmax);
    if (*repro) return cmd_reproduce(g, repro_suite, repro_nmax);
  } catch (const FactoringGaveUp& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const TupleCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const RangeTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const InvalidCertificate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
