#pragma once

#include <stdexcept>
#include <string>

namespace jointslab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad files, invalid parameters, violated preconditions
// on data the caller supplied. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace jointslab
