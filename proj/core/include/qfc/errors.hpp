#pragma once

#include <stdexcept>
#include <string>

namespace qfc {

// Invalid configuration (bad band tag, malformed config file, schema
// violation).  The CLI maps this family to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergent refinement, singular linear system,
// insufficient truncation.  The CLI maps this family to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class SingularParameterError : public NumericalError {
 public:
  explicit SingularParameterError(const std::string& what) : NumericalError(what) {}
};

class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double leakage)
      : NumericalError(what), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

class ResourceError : public NumericalError {
 public:
  explicit ResourceError(const std::string& what) : NumericalError(what) {}
};

}  // namespace qfc
