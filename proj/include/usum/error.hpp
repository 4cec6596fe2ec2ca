#pragma once

#include <stdexcept>
#include <string>

namespace usum {

/// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (sizes, ranges, empty inputs).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Bad or inconsistent configuration (config file keys, RunConfig bounds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A file or directory could not be read or written. The message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace usum
