#include "sasaki/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sasaki/errors.hpp"

namespace sasaki {

Eigen::MatrixXd to_matrix(const DenseTensor& t) {
  if (t.rank() != 2) throw StructuralError("to_matrix: rank-2 tensor required");
  Eigen::MatrixXd m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  return m;
}

DenseTensor from_matrix(const Eigen::MatrixXd& m, Variance row, Variance col) {
  if (m.rows() != m.cols()) throw StructuralError("from_matrix: square matrix required");
  const int dim = static_cast<int>(m.rows());
  DenseTensor t(dim, {row, col});
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) t(i, j) = m(i, j);
  return t;
}

double metric_condition(const DenseTensor& metric) {
  const Eigen::MatrixXd m = to_matrix(metric);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

void require_positive_definite(const DenseTensor& metric) {
  if (metric.rank() != 2 || metric.variance(0) != Variance::lower ||
      metric.variance(1) != Variance::lower)
    throw StructuralError("metric must be a covariant rank-2 tensor");
  const double cond = metric_condition(metric);
  if (!(cond < kMaxMetricCondition))
    throw NumericalError("metric is singular, indefinite or ill-conditioned (condition " +
                             std::to_string(cond) + ")",
                         cond);
}

DenseTensor inverse_metric(const DenseTensor& metric) {
  require_positive_definite(metric);
  const Eigen::MatrixXd inv = to_matrix(metric).llt().solve(
      Eigen::MatrixXd::Identity(metric.dim(), metric.dim()));
  // symmetrize away solver round-off
  return from_matrix(0.5 * (inv + inv.transpose()), Variance::upper, Variance::upper);
}

}  // namespace sasaki
