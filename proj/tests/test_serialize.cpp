#include "bindiv/serialize.hpp"

#include "bindiv/errors.hpp"
#include "bindiv/progression.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bindiv;
using namespace bindiv::serialize;

TEST_CASE("bundled certificates load") {
  auto k15 = certificate_from_json(oracles::slurp("data/k15.json"));
  CHECK(k15.k == 15);
  CHECK(k15.B == 2);
  REQUIRE(k15.assignments.size() == 6);
  CHECK(k15.assignments.at(2) == 1);
  CHECK(k15.assignments.at(13) == 12);

  auto k430 = certificate_from_json(oracles::slurp("data/k430.json"));
  CHECK(k430.k == 430);
  CHECK(k430.B == 3);
  CHECK(k430.assignments.size() == 81);
  CHECK(k430.assignments.at(3) == 1);
  CHECK(k430.assignments.count(2) == 0);
}

TEST_CASE("certificate round trip") {
  auto cert = certificate_from_json(oracles::slurp("data/k15.json"));
  auto back = certificate_from_json(certificate_to_json(cert));
  CHECK(back.k == cert.k);
  CHECK(back.B == cert.B);
  CHECK(back.assignments == cert.assignments);

  // Compact output parses too.
  auto compact = certificate_from_json(certificate_to_json(cert, -1));
  CHECK(compact.assignments == cert.assignments);
}

TEST_CASE("certificate parse failures") {
  CHECK_THROWS_AS(certificate_from_json("not json at all"), ParseError);
  CHECK_THROWS_AS(certificate_from_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(certificate_from_json(R"({"k": 15, "B": 2})"), ParseError);
  CHECK_THROWS_AS(certificate_from_json(R"({"k": 15, "B": 2, "assignments": 7})"),
                  ParseError);
  CHECK_THROWS_AS(
      certificate_from_json(R"({"k": 15, "B": 2, "assignments": [{"p": 3}]})"),
      ParseError);
  CHECK_THROWS_AS(
      certificate_from_json(
          R"({"k": 15, "B": 2, "assignments": [{"p": 3, "a": -1}]})"),
      ParseError);  // classes cross the wire normalized
  // Duplicate primes are rejected rather than silently merged.
  CHECK_THROWS_AS(
      certificate_from_json(
          R"({"k": 15, "B": 2,
              "assignments": [{"p": 3, "a": 1}, {"p": 3, "a": 2}]})"),
      ParseError);
  // Unknown fields ride along harmlessly.
  auto cert = certificate_from_json(
      R"({"k": 15, "B": 2, "note": "x", "assignments": [{"p": 3, "a": 1}]})");
  CHECK(cert.assignments.size() == 1);
}

TEST_CASE("factorization round trip") {
  auto f = arith::factorize(99215);
  auto back = factorization_from_json(factorization_to_json(f));
  CHECK(back.value() == 99215);
  CHECK(back.entries().size() == f.entries().size());

  auto g = factorization_from_json(R"([["7", 2], ["3", 1]])");
  CHECK(g.value() == 147);  // input order does not matter
  CHECK(g.entries()[0].prime == 3);

  CHECK_THROWS_AS(factorization_from_json(R"([["4", 2]])"), ParseError);
  CHECK_THROWS_AS(factorization_from_json(R"([["3"]])"), ParseError);
  CHECK(factorization_from_json(R"([["3", 0]])").value() == 1);  // dropped
  CHECK_THROWS_AS(factorization_from_json(R"({"3": 1})"), ParseError);
  CHECK_THROWS_AS(factorization_from_json(R"([["abc", 1]])"), ParseError);

  auto unit = factorization_from_json("[]");
  CHECK(unit.value() == 1);
}

TEST_CASE("progression spec round trip") {
  auto cert = certificate_from_json(oracles::slurp("data/k15.json"));
  auto spec = progression::build_progression(cert);
  auto text = progression_to_json(spec);
  for (const char* key : {"\"N_k\"", "\"alpha\"", "\"M\"", "\"gamma\"",
                          "\"certificate\""}) {
    CHECK(text.find(key) != std::string::npos);
  }
  auto back = progression_from_json(text);
  CHECK(back == spec);

  CHECK_THROWS_AS(progression_from_json(R"({"k": 15})"), ParseError);
  CHECK_THROWS_AS(progression_from_json("[[["), ParseError);
}

TEST_CASE("divisor report round trip") {
  std::vector<std::pair<mpz_class, mpz_class>> intervals{{5, 9}, {45, 100}};
  auto report = divisors::analyze(10, 2, intervals);
  REQUIRE(report.interval_queries.size() == 2);
  CHECK(report.interval_queries[0].divisor == mpz_class{9});
  CHECK(!report.interval_queries[1].divisor.has_value());

  auto back = divisor_report_from_json(divisor_report_to_json(report));
  CHECK(back.n == report.n);
  CHECK(back.k == report.k);
  CHECK(back.binomial_factorization.value() == 45);
  CHECK(back.largest_divisor_le_n == report.largest_divisor_le_n);
  CHECK(back.ratio == report.ratio);
  REQUIRE(back.term_splits.size() == report.term_splits.size());
  for (std::size_t i = 0; i < back.term_splits.size(); ++i) {
    CHECK(back.term_splits[i].smooth_part == report.term_splits[i].smooth_part);
    CHECK(back.term_splits[i].rough_part == report.term_splits[i].rough_part);
  }
  REQUIRE(back.interval_queries.size() == 2);
  CHECK(back.interval_queries[0].divisor == mpz_class{9});
  CHECK(!back.interval_queries[1].divisor.has_value());

  CHECK_THROWS_AS(divisor_report_from_json(R"({"n": "10"})"), ParseError);
}

TEST_CASE("ratio_to_decimal") {
  CHECK(ratio_to_decimal(mpq_class{3, 4}) == "0.750000");
  CHECK(ratio_to_decimal(mpq_class{3, 4}, 2) == "0.75");
  CHECK(ratio_to_decimal(mpq_class{1, 1}) == "1.000000");
  CHECK(ratio_to_decimal(mpq_class{0, 1}, 3) == "0.000");

  // Round half to even on the last kept digit.
  CHECK(ratio_to_decimal(mpq_class{1, 8}, 2) == "0.12");
  CHECK(ratio_to_decimal(mpq_class{3, 8}, 2) == "0.38");
  CHECK(ratio_to_decimal(mpq_class{7, 2}, 0) == "4");
  CHECK(ratio_to_decimal(mpq_class{5, 2}, 0) == "2");
  CHECK(ratio_to_decimal(mpq_class{-3, 8}, 2) == "-0.38");
  CHECK(ratio_to_decimal(mpq_class{-1, 8}, 2) == "-0.12");

  // The recorded minimum-ratio witness near 1.3e19.
  mpq_class m0_ratio{mpz_class{"9502357691425576661"},
                     mpz_class{"13085213870159810495"}};
  CHECK(ratio_to_decimal(m0_ratio) == "0.726190");
  CHECK(ratio_to_decimal(m0_ratio, 5) == "0.72619");
}
