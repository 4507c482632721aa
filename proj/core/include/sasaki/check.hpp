#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sasaki {

// Outcome of one numerical identity check at one sample.
struct CheckRecord {
  std::string id;
  std::string statement;  // the identity, in index notation
  std::string model;
  int k = 0;
  int point_index = -1;
  std::vector<double> point;
  std::optional<double> rho;
  double residual = 0.0;  // relative to scale
  double scale = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // A known-nonvanishing term run through the same vanishing test; it is expected to fail.
  bool control = false;
  // Reported for reference only (for instance a literal form of a statement that does not hold).
  bool informational = false;
  std::string note;
  std::map<std::string, double> values;

  bool gating() const noexcept { return !control && !informational; }
  bool operator==(const CheckRecord&) const = default;
};

using LemmaCheck = CheckRecord;

// residual / scale, falling back to the absolute residual for a vanishing scale.
double relative_residual(double absolute, double scale) noexcept;

// Fills residual, scale, tolerance and pass from an absolute residual.
CheckRecord make_check(std::string id, std::string statement, double absolute, double scale,
                       double tolerance);

// Checks that a value is bounded away from zero: residual is the ratio threshold/|value| so
// that pass means residual <= 1.
CheckRecord make_nonzero_check(std::string id, std::string statement, double value,
                               double threshold);

}  // namespace sasaki
