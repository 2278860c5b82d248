#pragma once

#include <stdexcept>
#include <string>

namespace fiberprod {

// Base of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two words (or a word and a homomorphism) disagree on their alphabet.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input: bad tables, non-surjective maps, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation's precondition does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A combination of quotient kind and mode for which no decision procedure
// is implemented.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A resource guard (enumeration cap, census size, path cap) was hit.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fiberprod
