#pragma once

#include <Eigen/Dense>

#include "sasaki/tensor.hpp"

namespace sasaki {

inline constexpr double kMaxMetricCondition = 1e12;

Eigen::MatrixXd to_matrix(const DenseTensor& rank2);
DenseTensor from_matrix(const Eigen::MatrixXd& m, Variance row, Variance col);

// Ratio of extreme eigenvalues of a symmetric matrix; infinity if not positive definite.
double metric_condition(const DenseTensor& metric);

// Throws NumericalError if the metric is not symmetric positive definite or is ill-conditioned.
void require_positive_definite(const DenseTensor& metric);

// g^{ij} for a covariant metric, checked for conditioning.
DenseTensor inverse_metric(const DenseTensor& metric);

}  // namespace sasaki
