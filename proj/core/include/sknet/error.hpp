#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sknet {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid CSR arrays or edge lists (index out of range, negative weight...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Operand shapes or lengths do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An algorithm parameter is outside its valid domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input is structurally valid but the algorithm is undefined on it
// (edgeless graph for HITS, isolated nodes without regularization...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// Text input could not be parsed; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Binary or archive payload is malformed; offset is the byte position where
// decoding failed.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_ = 0;
};

// Remote download failed.
class FetchError : public Error {
 public:
  using Error::Error;
};

// Unknown dataset or node name.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace sknet
