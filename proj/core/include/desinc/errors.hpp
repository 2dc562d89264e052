#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace desinc {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the domain of a map or of its inverse: branch cuts,
// points outside the target interval, preimages leaving the strip.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid request: inconsistent sizes, missing reference
// value, unknown identifier, invalid decay parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The integrand produced a non-finite value at a quadrature node.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, long node_index)
      : Error(what), node_index_(node_index) {}
  long node_index() const { return node_index_; }

 private:
  long node_index_;
};

// A step-size formula received a log argument <= 1.
class DegenerateStepError : public Error {
 public:
  using Error::Error;
};

// The map parameter program failed to converge.
class OptimizationError : public Error {
 public:
  OptimizationError(const std::string& what, double failed_tau)
      : Error(what), failed_tau_(failed_tau) {}
  double failed_tau() const { return failed_tau_; }

 private:
  double failed_tau_;
};

// A returned map lost monotonicity on the audit grid.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

// A least-squares fit was rank deficient beyond tolerance.
class IllConditioningError : public Error {
 public:
  IllConditioningError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// Requested size outside the supported range (factorial overflow and
// similar hard caps).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Newton iteration diverged; carries the last iterate for inspection.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what,
                           std::vector<double> last_iterate = {})
      : Error(what), last_iterate_(std::move(last_iterate)) {}
  const std::vector<double>& last_iterate() const { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

// Expression parse failure; offset is the byte position in the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace desinc
