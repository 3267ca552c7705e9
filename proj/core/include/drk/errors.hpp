#pragma once

#include <stdexcept>
#include <string>

namespace drk {

// Bad caller input: shape mismatches, malformed models, non-invariant subsets.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model violates one of its standing hypotheses (commuting, surjective, ...).
// `field` names the offending part of the input, e.g. "t1[3]" or "a2".
class ValidationError : public InputError {
 public:
  ValidationError(std::string field, const std::string& what)
      : InputError(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The requested analysis does not apply to this kind of model.
class NotApplicableError : public InputError {
 public:
  using InputError::InputError;
};

// An exhaustive enumeration would exceed its configured cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A machine check that holds by theory failed. Never caused by input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace drk
