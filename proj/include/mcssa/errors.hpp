#ifndef MCSSA_ERRORS_HPP
#define MCSSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcssa {

// Root of the library's exception hierarchy. Everything thrown on purpose
// derives from this, so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller-supplied argument violates a precondition (bad window length,
// non-unit projection vectors, out-of-range confidence, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data is unusable: non-finite values, too short, etc.
class DataError : public Error {
 public:
  using Error::Error;
};

// A text input could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

// Model fitting failed (degenerate series, non-finite likelihood).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// A numeric routine (eigensolver, quantile of the beta distribution)
// reported failure.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// A frequency range selected no projection vectors.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A surrogate sample has zero spread in some coordinate, so standardized
// statistics are undefined.
class DegenerateSurrogateError : public Error {
 public:
  using Error::Error;
};

// Too few surrogates for the requested quantile level.
class SampleSizeError : public Error {
 public:
  using Error::Error;
};

// A root/threshold search could not attain its target.
class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcssa

#endif
