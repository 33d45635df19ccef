#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nheth {

// Caller supplied something outside an operation's contract. CLI exit code 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The matrix-element correction is only defined for right-right elements.
class UnsupportedBasisError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A real-spectrum-only operation was handed a complex spectrum.
class InvalidRegimeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failure during a computation. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenvectors (nearly) coalesce: biorthogonal pairing could not be enforced.
class ExceptionalPointError : public NumericalError {
 public:
  ExceptionalPointError(std::size_t index, double conditioning, const std::string& what)
      : NumericalError(what), index_(index), conditioning_(conditioning) {}

  std::size_t index() const noexcept { return index_; }
  double conditioning() const noexcept { return conditioning_; }

 private:
  std::size_t index_;
  double conditioning_;
};

class AmbiguousAsymptoteError : public NumericalError {
 public:
  AmbiguousAsymptoteError(std::vector<std::size_t> tied, const std::string& what)
      : NumericalError(what), tied_(std::move(tied)) {}

  const std::vector<std::size_t>& tied_indices() const noexcept { return tied_; }

 private:
  std::vector<std::size_t> tied_;
};

class EmptyWindowError : public NumericalError {
 public:
  EmptyWindowError(std::vector<std::size_t> counts, const std::string& what)
      : NumericalError(what), counts_(std::move(counts)) {}

  const std::vector<std::size_t>& per_realization_counts() const noexcept { return counts_; }

 private:
  std::vector<std::size_t> counts_;
};

// Filesystem or format failure. CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nheth
