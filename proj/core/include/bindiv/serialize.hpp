#pragma once

#include <string>

#include "bindiv/arith.hpp"
#include "bindiv/covering.hpp"
#include "bindiv/divisors.hpp"
#include "bindiv/progression.hpp"

// JSON wire formats. All big integers cross as decimal strings; a
// Factorization serializes as a list of [prime-string, exponent] pairs.

namespace bindiv::serialize {

std::string certificate_to_json(const covering::CoverCertificate& cert, int indent = 2);
/// Throws ParseError on malformed input.
covering::CoverCertificate certificate_from_json(const std::string& text);

std::string coverage_report_to_json(const covering::CoverageReport& report, int indent = 2);

std::string progression_to_json(const progression::ProgressionSpec& spec, int indent = 2);
progression::ProgressionSpec progression_from_json(const std::string& text);

std::string divisor_report_to_json(const divisors::DivisorReport& report, int indent = 2);
divisors::DivisorReport divisor_report_from_json(const std::string& text);

std::string factorization_to_json(const arith::Factorization& f, int indent = -1);
arith::Factorization factorization_from_json(const std::string& text);

/// Exact rational rendered as a decimal string with `digits` places,
/// round-half-even on the last place.
std::string ratio_to_decimal(const mpq_class& ratio, int digits = 6);

}  // namespace bindiv::serialize
