#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chardep {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

class InadmissibleGuide : public Error {
 public:
  using Error::Error;
};

/// Raised by the JSON and guide-file readers. `location` is a JSON pointer
/// ("/terms/2/coeff") or "line N" for text formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::uint64_t cardinality, std::uint64_t cap, const std::string& what)
      : Error(what), cardinality_(cardinality), cap_(cap) {}
  std::uint64_t cardinality() const noexcept { return cardinality_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cardinality_;
  std::uint64_t cap_;
};

}  // namespace chardep
