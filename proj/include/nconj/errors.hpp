#pragma once

#include <stdexcept>
#include <string>

namespace nconj {

/// Precondition on an argument does not hold (bad modulus, inadmissible family parameter, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Work would exceed a configured size or node limit; raised before the work starts.
class capacity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exact answer was requested but the factorization behind it is incomplete.
class inexact_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A factoring budget ran out where a complete factorization is mandatory.
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A generator built a tuple that its own verifier rejected.
class verification_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record.
class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace nconj
