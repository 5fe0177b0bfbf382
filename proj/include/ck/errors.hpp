#pragma once

#include <stdexcept>
#include <string>

namespace ck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (unknown labels, duplicates, missing table entries).
class InvalidData : public Error {
 public:
  using Error::Error;
};

// Two constructions that must share an endpoint do not.
class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

// A component that should be a bijection is not one.
class NonInvertible : public Error {
 public:
  using Error::Error;
};

// A truncated computation would need data beyond its declared bounds.
class BoundExceeded : public Error {
 public:
  BoundExceeded(std::string const& what, std::string hint)
      : Error(what), hint_(std::move(hint)) {}
  std::string const& hint() const noexcept { return hint_; }

 private:
  std::string hint_;
};

// Input text that does not parse or does not follow the schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ck
