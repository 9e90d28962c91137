#pragma once

#include <stdexcept>
#include <string>

namespace qf1ca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Amplitude flowed to a negative counter in an automaton declared NonNegative.
class NegativeCounter : public Error {
 public:
  using Error::Error;
};

/// A simple automaton whose direction function is not total on Q x Gamma.
class MissingDirection : public Error {
 public:
  using Error::Error;
};

/// Columns handed to complete_unitary are not orthonormal.
class NotIsometric : public Error {
 public:
  using Error::Error;
};

class UnsupportedAcceptance : public Error {
 public:
  using Error::Error;
};

class BadParameter : public Error {
 public:
  using Error::Error;
};

/// Path enumeration refused: the word is too long for exponential search.
class TooLong : public Error {
 public:
  using Error::Error;
};

/// Malformed automaton document, sweep spec or word.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qf1ca
