// Exception types thrown by the hlirred library.
#pragma once

#include <stdexcept>
#include <string>

namespace hlirred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition (invalid window, bad spec, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class TableTooSmall : public Error {
 public:
  using Error::Error;
};

class LimitTooLarge : public Error {
 public:
  using Error::Error;
};

class CeilingExceedsTable : public Error {
 public:
  using Error::Error;
};

class SampleOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The deletion-set construction has nothing left to retain (omega >= k).
class EmptyRetained : public Error {
 public:
  using Error::Error;
};

class PrecondViolated : public Error {
 public:
  using Error::Error;
};

class InvalidT0 : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ProfileMismatch : public Error {
 public:
  using Error::Error;
};

/// Reduction modulo p kills the leading coefficient.
class LeadingVanishes : public Error {
 public:
  using Error::Error;
};

class NoWitness : public Error {
 public:
  using Error::Error;
};

/// Malformed or corrupt on-disk prime table.
class CacheFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hlirred
