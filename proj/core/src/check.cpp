#include "sasaki/check.hpp"

#include <cmath>
#include <limits>

namespace sasaki {

double relative_residual(double absolute, double scale) noexcept {
  return scale > std::numeric_limits<double>::min() ? absolute / scale : absolute;
}

CheckRecord make_check(std::string id, std::string statement, double absolute, double scale,
                       double tolerance) {
  CheckRecord r;
  r.id = std::move(id);
  r.statement = std::move(statement);
  r.scale = scale;
  r.residual = relative_residual(absolute, scale);
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.residual) && r.residual <= tolerance;
  return r;
}

CheckRecord make_nonzero_check(std::string id, std::string statement, double value,
                               double threshold) {
  CheckRecord r;
  r.id = std::move(id);
  r.statement = std::move(statement);
  r.scale = std::abs(value);
  r.residual = std::abs(value) > 0.0 ? threshold / std::abs(value)
                                     : std::numeric_limits<double>::max();
  r.tolerance = 1.0;
  r.pass = r.residual <= 1.0;
  r.values["value"] = value;
  r.values["threshold"] = threshold;
  return r;
}

}  // namespace sasaki
