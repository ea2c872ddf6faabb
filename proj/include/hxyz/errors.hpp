#pragma once

#include <stdexcept>
#include <string>

namespace hxyz {

// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NotIntegrable : public Error {
 public:
  using Error::Error;
};

class BranchExit : public Error {
 public:
  using Error::Error;
};

class ResonancePole : public Error {
 public:
  using Error::Error;
};

class NormDrift : public Error {
 public:
  using Error::Error;
};

class InvalidDensityMatrix : public Error {
 public:
  using Error::Error;
};

class NotStatic : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hxyz
