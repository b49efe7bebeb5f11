#pragma once

#include <stdexcept>
#include <string>

namespace invbench {

/// Input violates a documented contract (bad field, bad argument range).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numeric argument outside the domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Stepping or observing a session whose horizon is exhausted.
class EpisodeFinished : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File or document does not follow the expected schema (or schema version).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace invbench
