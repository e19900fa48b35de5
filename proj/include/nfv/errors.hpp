#pragma once

#include <stdexcept>
#include <string>

namespace nfv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Substrate construction or deserialization rejected the input.
class SubstrateError : public Error {
 public:
  using Error::Error;
};

/// A commit would push an allocation above capacity.
class CapacityViolation : public Error {
 public:
  using Error::Error;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

class UnplaceableNf : public Error {
 public:
  UnplaceableNf(std::size_t position, const std::string& what)
      : Error(what), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class MalformedRoute : public Error {
 public:
  using Error::Error;
};

class Unreachable : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nfv
