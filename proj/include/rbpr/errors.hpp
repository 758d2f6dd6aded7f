#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

/// Recall is undefined when there are no real anomaly ranges.
class EmptyGroundTruth : public Error {
 public:
  EmptyGroundTruth() : Error("recall is undefined: no real anomaly ranges") {}
};

/// Precision is undefined when there are no predicted anomaly ranges.
class EmptyPrediction : public Error {
 public:
  EmptyPrediction() : Error("precision is undefined: no predicted anomaly ranges") {}
};

class ZeroDenominator : public Error {
 public:
  enum class Metric { precision, recall };

  explicit ZeroDenominator(Metric which)
      : Error(which == Metric::precision ? "precision is undefined: tp + fp == 0"
                                         : "recall is undefined: tp + fn == 0"),
        which_(which) {}

  Metric which() const noexcept { return which_; }

 private:
  Metric which_;
};

class BiasError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  /// 1-based line number; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace rbpr
