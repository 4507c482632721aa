#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

// Shape, variance or slot misuse. Always a programming error on the caller side.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular or badly conditioned input detected during a computation.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

// Evaluation point or finite-difference stencil outside the chart.
class DomainError : public std::out_of_range {
 public:
  DomainError(const std::string& what, double suggested_margin)
      : std::out_of_range(what), suggested_margin_(suggested_margin) {}
  double suggested_margin() const noexcept { return suggested_margin_; }

 private:
  double suggested_margin_;
};

// Invalid run configuration or command line; maps to the usage exit status.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sasaki
