#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantorgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (ln of a non-positive value,
// q outside (0,1), non-finite input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Result would need more tower layers than LogScalar::kMaxLayer.
class SaturationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// A generated sequence term left (0,1), or a rule is malformed.
class SpecViolation : public Error {
 public:
  SpecViolation(std::uint64_t index, const std::string& what)
      : Error(what + " (index " + std::to_string(index) + ")"), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

class ModeUnavailable : public Error {
 public:
  using Error::Error;
};

// sinh a * sinh b < 1: no right-angled pentagon with these legs.
class NoPentagon : public Error {
 public:
  using Error::Error;
};

class UnsupportedKind : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace cantorgeo
