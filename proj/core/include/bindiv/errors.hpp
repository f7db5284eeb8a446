#pragma once

#include <stdexcept>
#include <string>

namespace bindiv {

/// A composite cofactor resisted the configured Pollard-rho iteration budget.
class FactoringGaveUp : public std::runtime_error {
 public:
  explicit FactoringGaveUp(const std::string& what) : std::runtime_error(what) {}
};

/// A sieve or enumeration request exceeded its configured limit.
class RangeTooLarge : public std::runtime_error {
 public:
  explicit RangeTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// CRT input moduli were not pairwise coprime; message names the offending pair.
class NonCoprimeModuli : public std::runtime_error {
 public:
  explicit NonCoprimeModuli(const std::string& what) : std::runtime_error(what) {}
};

/// Tuple enumeration tripped its combinatorial-explosion guard.
class TupleCapExceeded : public std::runtime_error {
 public:
  explicit TupleCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A certificate failed validation where a valid one is required.
class InvalidCertificate : public std::runtime_error {
 public:
  explicit InvalidCertificate(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed serialized input (bad JSON, bad integer string, schema violation).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of an internal invariant that valid inputs cannot trigger.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bindiv
