#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph6 decoding failure; offset is the byte position inside the input line.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

// order limit (512) exceeded by an operator or constructor
struct CapacityError : Error {
  using Error::Error;
};

// family parameters violate the family's feasibility inequalities
struct ConstructionError : Error {
  using Error::Error;
};

// operation invoked outside its supported size regime (e.g. cut enumeration)
struct RegimeError : Error {
  using Error::Error;
};

// threshold/cubic parameters violate a rule's stated hypothesis ranges
struct RangeError : Error {
  using Error::Error;
};

}  // namespace qcert
