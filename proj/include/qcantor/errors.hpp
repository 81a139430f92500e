#pragma once

#include <stdexcept>
#include <string>

namespace qcantor {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BackendMismatchError : public Error {
public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
public:
  using Error::Error;
};

class DepthExceededError : public Error {
public:
  using Error::Error;
};

// A domain-type invariant failed (density matrix not positive, measure not
// additive, circuit not unitary, ...).
class InvalidStateError : public Error {
public:
  using Error::Error;
};

// Bad scalar argument: delta/epsilon out of range, empty value list, ...
class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

// A declared mass / measure bound does not hold for the given object.
class MassBoundError : public Error {
public:
  using Error::Error;
};

class ProjectionAnnihilatesStateError : public Error {
public:
  using Error::Error;
};

// compress_via_test precondition: the state passes the test at this level.
class StatePassesError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace qcantor
