#pragma once

#include <stdexcept>
#include <string>

namespace gls {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad partition, weights, frequency vector, unknown digit.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but a required hypothesis does not hold
// (domination p_e > l_e, positive marginals).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gls
