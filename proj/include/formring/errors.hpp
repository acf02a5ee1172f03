#pragma once

#include <stdexcept>
#include <string>

namespace formring {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different polynomial rings.
class AmbientMismatch : public Error {
 public:
  AmbientMismatch() : Error("ambient ring mismatch") {}
};

// A precondition on the mathematical input does not hold (non-homogeneous
// ideal, ideal not inside the irrelevant ideal, zero ring, index range...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computational guard tripped: saturation exponent cap, Koszul power cap
// without stabilization.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace formring
