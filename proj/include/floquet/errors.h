#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient pair or matrix that should be Hermitian is not.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

// Gauge functions do not return the micro-motion to a global phase at t = nT.
class NonPeriodicGauge : public Error {
 public:
  using Error::Error;
};

class ToleranceNotReached : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class HorizonMismatch : public Error {
 public:
  using Error::Error;
};

class NonUnitaryInput : public Error {
 public:
  using Error::Error;
};

// A lattice expansion produced hoppings longer than the supported range.
class RangeOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace floquet
