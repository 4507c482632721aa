#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sasaki/tensor.hpp"

namespace sasaki {

using Point = std::vector<double>;
using TensorFn = std::function<DenseTensor(std::span<const double>)>;

struct ChartDomain {
  enum class Shape { box, ball };
  Shape shape = Shape::box;
  double radius = 1.0;  // half-width of the box or radius of the ball

  bool contains(std::span<const double> p) const noexcept;
  // Distance from p to the boundary; negative outside.
  double margin(std::span<const double> p) const noexcept;
};

struct SasakianFields {
  DenseTensor eta;        // eta_i
  DenseTensor xi;         // xi^i
  DenseTensor phi_mixed;  // phi_i^j, lower slot first
  DenseTensor phi_lower;  // phi_ij, obtained independently of phi_mixed
};

// Partial derivatives, differentiation slot first: d_eta[k][i], d_phi_mixed[k][i][j].
struct SasakianFieldPartials {
  DenseTensor d_eta;
  DenseTensor d_phi_mixed;
};

// A coordinate patch with its metric and, optionally, a compatible contact structure.
// Missing partial-derivative callbacks are replaced by finite differences where needed.
struct Chart {
  std::string name;
  int dim = 0;
  ChartDomain domain;
  TensorFn metric;                  // g_ij
  TensorFn metric_partials;         // d_k g_ij, index order [k][i][j]
  TensorFn metric_second_partials;  // d_l d_k g_ij, index order [l][k][i][j]
  std::function<SasakianFields(std::span<const double>)> sasakian_fields;
  std::function<SasakianFieldPartials(std::span<const double>)> sasakian_partials;

  void require_inside(std::span<const double> p) const;
};

struct FdOptions {
  double step = 1e-3;
};

struct FdDerivative {
  DenseTensor derivative;  // new covariant slot first
  double error_estimate;   // Richardson estimate from the (step, step/2) pair plus round-off
};

// Fourth-order central differences of every component of f.
FdDerivative fd_derivative(const TensorFn& f, std::span<const double> p, const ChartDomain& domain,
                           double step = 1e-3);

struct CurvatureData {
  Point point;
  DenseTensor metric;
  DenseTensor inverse_metric;
  double metric_condition = 0.0;
  DenseTensor gamma;                         // Gamma_ij^k, index order [i][j][k]
  std::optional<DenseTensor> gamma_partials;  // d_l Gamma_ij^k, order [l][i][j][k]
  std::optional<DenseTensor> riemann;         // R_kji^h, order [k][j][i][h]
  bool analytic = true;                       // false if any finite differences were used
  double fd_error_estimate = 0.0;
};

// Christoffel symbols from analytic metric partials when available, else finite differences.
CurvatureData christoffel(const Chart& chart, std::span<const double> p, const FdOptions& fd = {});

// R_kji^h = d_k Gamma_ji^h - d_j Gamma_ki^h + Gamma_kl^h Gamma_ji^l - Gamma_jl^h Gamma_ki^l.
// Partials of Gamma come from metric second partials when available, else finite differences
// of Gamma.
CurvatureData riemann(const Chart& chart, std::span<const double> p, const FdOptions& fd = {});

// Christoffel symbols from explicit metric data.
DenseTensor christoffel_from_partials(const DenseTensor& inverse_metric,
                                      const DenseTensor& metric_partials);
DenseTensor christoffel_partials_from_metric(const DenseTensor& inverse_metric,
                                             const DenseTensor& metric_partials,
                                             const DenseTensor& metric_second_partials);
DenseTensor riemann_from_christoffel(const DenseTensor& gamma, const DenseTensor& gamma_partials);

struct TensorField {
  TensorFn value;
  TensorFn partials;  // differentiation slot first
};

// Fills in missing partials of a field with finite differences inside the domain.
TensorField with_fd_partials(TensorField field, const ChartDomain& domain, double step = 1e-3);

// nabla_k T, differentiation slot first, for any variance pattern.
DenseTensor covariant_derivative(const DenseTensor& value, const DenseTensor& partials,
                                 const DenseTensor& gamma);
DenseTensor covariant_derivative(const Chart& chart, std::span<const double> p,
                                 const TensorField& field, const CurvatureData& connection);

}  // namespace sasaki
