#pragma once

#include <stdexcept>

namespace scatterqual {

/// Malformed user input: bad dimensions, unparsable files, empty point sets.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not certify or complete its result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scatterqual
