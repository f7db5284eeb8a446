#include "bindiv/serialize.hpp"

#include <utility>

#include "json.hpp"

namespace bindiv::serialize {

using nlohmann::json;

namespace {

mpz_class mpz_from_string(const std::string& s) {
  try {
    return mpz_class{s};
  } catch (const std::invalid_argument&) {
    throw ParseError("not a decimal integer: \"" + s + "\"");
  }
}

mpz_class mpz_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string{"missing or non-string field \""} + key + "\"");
  }
  return mpz_from_string(j[key].get<std::string>());
}

std::uint64_t uint_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw ParseError(std::string{"missing or non-integer field \""} + key + "\"");
  }
  return j[key].get<std::uint64_t>();
}

json certificate_to_obj(const covering::CoverCertificate& cert) {
  json assignments = json::array();
  for (const auto& [p, a] : cert.assignments) {
    assignments.push_back({{"p", p}, {"a", a}});
  }
  return json{{"k", cert.k}, {"B", cert.B}, {"assignments", std::move(assignments)}};
}

covering::CoverCertificate certificate_from_obj(const json& j) {
  covering::CoverCertificate cert;
  cert.k = uint_field(j, "k");
  cert.B = uint_field(j, "B");
  if (!j.contains("assignments") || !j["assignments"].is_array()) {
    throw ParseError("missing or non-array field \"assignments\"");
  }
  for (const auto& entry : j["assignments"]) {
    std::uint64_t p = uint_field(entry, "p");
    std::uint64_t a = uint_field(entry, "a");
    if (!cert.assignments.emplace(p, a).second) {
      throw ParseError("duplicate assignment for p = " + std::to_string(p));
    }
  }
  return cert;
}

json factorization_to_obj(const arith::Factorization& f) {
  json arr = json::array();
  for (const auto& e : f.entries()) {
    arr.push_back({e.prime.get_str(), e.exponent});
  }
  return arr;
}

arith::Factorization factorization_from_obj(const json& j) {
  if (!j.is_array()) throw ParseError("factorization must be an array of [prime, exponent]");
  std::vector<arith::FactorEntry> entries;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_number_unsigned()) {
      throw ParseError("factorization entries must be [\"prime\", exponent]");
    }
    entries.push_back({mpz_from_string(pair[0].get<std::string>()),
                       pair[1].get<std::uint64_t>()});
  }
  try {
    return arith::Factorization{std::move(entries)};  // re-certifies primality
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string dump(const json& j, int indent) {
  return indent < 0 ? j.dump() : j.dump(indent);
}

}  // namespace

std::string certificate_to_json(const covering::CoverCertificate& cert, int indent) {
  return dump(certificate_to_obj(cert), indent);
}

covering::CoverCertificate certificate_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("malformed JSON certificate");
  return certificate_from_obj(j);
}

std::string coverage_report_to_json(const covering::CoverageReport& report, int indent) {
  json unrestricted = json::array();
  for (const auto& [p, a] : report.unrestricted) {
    unrestricted.push_back({{"p", p}, {"a", a}});
  }
  json j{{"valid", report.valid},
         {"uncovered", report.uncovered},
         {"unrestricted", std::move(unrestricted)},
         {"out_of_range_primes", report.out_of_range_primes}};
  return dump(j, indent);
}

std::string progression_to_json(const progression::ProgressionSpec& spec, int indent) {
  json j{{"k", spec.k},
         {"B", spec.B},
         {"N_k", spec.base_modulus.get_str()},
         {"alpha", spec.base_residue.get_str()},
         {"M", spec.augmented_modulus.get_str()},
         {"gamma", spec.augmented_residue.get_str()},
         {"certificate", certificate_to_obj(spec.certificate)}};
  return dump(j, indent);
}

progression::ProgressionSpec progression_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON progression spec");
  progression::ProgressionSpec spec;
  spec.k = uint_field(j, "k");
  spec.B = uint_field(j, "B");
  spec.base_modulus = mpz_field(j, "N_k");
  spec.base_residue = mpz_field(j, "alpha");
  spec.augmented_modulus = mpz_field(j, "M");
  spec.augmented_residue = mpz_field(j, "gamma");
  if (!j.contains("certificate")) throw ParseError("missing field \"certificate\"");
  spec.certificate = certificate_from_obj(j["certificate"]);
  return spec;
}

std::string divisor_report_to_json(const divisors::DivisorReport& report, int indent) {
  json splits = json::array();
  for (const auto& s : report.term_splits) {
    splits.push_back({{"index", s.index},
                      {"smooth_part", s.smooth_part.get_str()},
                      {"rough_part", s.rough_part.get_str()}});
  }
  json intervals = json::array();
  for (const auto& q : report.interval_queries) {
    json item{{"lo", q.lo.get_str()}, {"hi", q.hi.get_str()}};
    item["divisor"] = q.divisor ? json(q.divisor->get_str()) : json(nullptr);
    intervals.push_back(std::move(item));
  }
  json j{{"n", report.n.get_str()},
         {"k", report.k},
         {"binomial_factorization", factorization_to_obj(report.binomial_factorization)},
         {"largest_divisor_le_n", report.largest_divisor_le_n.get_str()},
         {"ratio",
          {{"numerator", report.ratio.get_num().get_str()},
           {"denominator", report.ratio.get_den().get_str()},
           {"decimal", ratio_to_decimal(report.ratio)}}},
         {"term_splits", std::move(splits)},
         {"interval_queries", std::move(intervals)}};
  return dump(j, indent);
}

divisors::DivisorReport divisor_report_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON divisor report");
  divisors::DivisorReport report;
  report.n = mpz_field(j, "n");
  report.k = uint_field(j, "k");
  if (!j.contains("binomial_factorization")) {
    throw ParseError("missing field \"binomial_factorization\"");
  }
  report.binomial_factorization = factorization_from_obj(j["binomial_factorization"]);
  report.largest_divisor_le_n = mpz_field(j, "largest_divisor_le_n");
  if (!j.contains("ratio") || !j["ratio"].is_object()) {
    throw ParseError("missing or malformed field \"ratio\"");
  }
  report.ratio = mpq_class{mpz_field(j["ratio"], "numerator"),
                           mpz_field(j["ratio"], "denominator")};
  report.ratio.canonicalize();
  if (j.contains("term_splits")) {
    for (const auto& s : j["term_splits"]) {
      report.term_splits.push_back({uint_field(s, "index"), mpz_field(s, "smooth_part"),
                                    mpz_field(s, "rough_part")});
    }
  }
  if (j.contains("interval_queries")) {
    for (const auto& q : j["interval_queries"]) {
      divisors::IntervalQuery iq;
      iq.lo = mpz_field(q, "lo");
      iq.hi = mpz_field(q, "hi");
      if (q.contains("divisor") && !q["divisor"].is_null()) {
        iq.divisor = mpz_from_string(q["divisor"].get<std::string>());
      }
      report.interval_queries.push_back(std::move(iq));
    }
  }
  return report;
}

std::string factorization_to_json(const arith::Factorization& f, int indent) {
  return dump(factorization_to_obj(f), indent);
}

arith::Factorization factorization_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON factorization");
  return factorization_from_obj(j);
}

std::string ratio_to_decimal(const mpq_class& ratio, int digits) {
  if (digits < 0) throw std::invalid_argument("ratio_to_decimal: digits must be >= 0");
  mpz_class num = ratio.get_num();
  const mpz_class& den = ratio.get_den();  // canonical: always positive
  bool negative = num < 0;
  if (negative) num = -num;

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mpz_class{num * scale}.get_mpz_t(),
              den.get_mpz_t());
  mpz_class twice_r = 2 * r;
  if (twice_r > den || (twice_r == den && mpz_odd_p(q.get_mpz_t()))) ++q;

  std::string out = mpz_class{q / scale}.get_str();
  if (digits > 0) {
    std::string frac = mpz_class{q % scale}.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  if (negative && q != 0) out.insert(out.begin(), '-');
  return out;
}

}  // namespace bindiv::serialize
