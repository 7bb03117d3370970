// Error types thrown by the fitting engines and the harness.

#pragma once

#include <stdexcept>
#include <string>

namespace neurorf {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands have inconsistent shapes (model dimension vs. dataset, etc.).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Fewer data points than model parameters.
class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

// A sampled subset is rank deficient or too ill-conditioned to fit.
class DegenerateSubset : public Error {
 public:
  using Error::Error;
};

// Every sampling attempt within the retry budget produced a degenerate subset.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class DegenerateHomography : public Error {
 public:
  using Error::Error;
};

// Ground-truth model has zero norm; the normalized distance is undefined.
class InvalidGroundTruth : public Error {
 public:
  using Error::Error;
};

// LFSR register seeded to zero (the all-zero state is a fixed point).
class InvalidSeed : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A fixed-point configuration value does not fit the state bit width.
class ConfigOverflow : public Error {
 public:
  using Error::Error;
};

// A derived synaptic weight does not fit the weight bit width.
class WeightOverflow : public Error {
 public:
  using Error::Error;
};

// Data that must be integral is not.
class NonIntegerData : public Error {
 public:
  using Error::Error;
};

}  // namespace neurorf
