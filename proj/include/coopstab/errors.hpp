#pragma once

#include <stdexcept>
#include <string>

namespace coopstab {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-square matrices, wrong table sizes, bad files.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The request exceeds a documented size cap (exact TSP, full cost table).
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, long cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  long cap() const noexcept { return cap_; }

 private:
  long cap_;
};

// A hypothesis of a closed-form result does not hold for this game.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The game is degenerate for the requested quantity (zero grand cost...).
class DegenerateGameError : public Error {
 public:
  using Error::Error;
};

// The LP solver found no feasible point or an unbounded ray.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace coopstab
