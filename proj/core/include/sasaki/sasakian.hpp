#pragma once

#include <span>
#include <vector>

#include "sasaki/check.hpp"
#include "sasaki/geometry.hpp"
#include "sasaki/rho_poly.hpp"

namespace sasaki {

// Contact metric data at one point of a chart.
struct SasakianPointData {
  Point point;
  DenseTensor g;          // g_ij
  DenseTensor g_inv;      // g^ij
  DenseTensor eta;        // eta_i
  DenseTensor xi;         // xi^i
  DenseTensor phi_mixed;  // phi_i^j
  DenseTensor phi_lower;  // phi_ij

  int dim() const noexcept { return g.dim(); }
};

SasakianPointData point_data(const Chart& chart, std::span<const double> p);

// Contact structure built from an orthonormal adapted frame pushed through a linear coordinate
// change: xi = e_0, phi(e_{2a+1}) = e_{2a+2}, phi(e_{2a+2}) = -e_{2a+1}. `basis` holds the
// coordinate components of the frame vectors, one vector per row. Pointwise algebraic
// identities can be tested on it without a chart.
SasakianPointData frame_point_data(const std::vector<std::vector<double>>& basis);

struct SasakianTolerances {
  double algebraic = 1e-8;
  double differential = 1e-8;
};

// Contact metric and Sasakian identities at p, plus the contact volume check.
std::vector<CheckRecord> check_sasakian(const Chart& chart, std::span<const double> p,
                                        const SasakianTolerances& tol = {},
                                        const FdOptions& fd = {});

// Covariant derivatives of eta and phi at p: nabla_i eta_j and nabla_i phi_j^k.
struct ContactDerivatives {
  DenseTensor nabla_eta;
  DenseTensor nabla_phi;
};
ContactDerivatives contact_derivatives(const Chart& chart, std::span<const double> p,
                                       const CurvatureData& connection, const FdOptions& fd = {});

// Single component of eta ^ omega ^ ... ^ omega (2k factors of the 2-form omega), weight 1/d!.
double contact_volume_component(const DenseTensor& eta, const DenseTensor& two_form);

// h = g + rho^2 eta eta and h^-1 = g^-1 + alpha xi xi with alpha = -rho^2 / (1 + rho^2).
struct DeformedMetric {
  DenseTensor h;
  DenseTensor h_inv;
  double alpha = 0.0;
};
DeformedMetric deform_metric(const SasakianPointData& data, double rho);

// Gamma-bar_ij^k = Gamma_ij^k - rho^2 (phi_i^k eta_j + phi_j^k eta_i).
DenseTensor deformed_christoffel(const SasakianPointData& data, const DenseTensor& gamma,
                                 double rho);

// The bracket that multiplies -rho^2 in the deformed curvature.
DenseTensor deformation_quadratic(const SasakianPointData& data);
// eta_k eta_i delta_j^h - eta_j eta_i delta_k^h, which multiplies -rho^4.
DenseTensor deformation_quartic(const SasakianPointData& data);

// R-bar = R1 + rho^2 R2 + rho^4 R3, keyed by rho power.
struct DeformedCurvature {
  RhoPolyTensor r_bar;

  DenseTensor component(int power) const { return r_bar.coefficient(power); }
};
// Closed form R - rho^2 deformation_quadratic - rho^4 deformation_quartic. Its phi phi block has
// the opposite sign to the curvature of h_rho; see exact_deformed_curvature.
DeformedCurvature deformed_curvature(const SasakianPointData& data, const DenseTensor& riemann);

// The rho^2 bracket of the Levi-Civita curvature of h_rho, as obtained by expanding the
// Christoffel difference directly. It differs from deformation_quadratic in the sign of the
// phi phi block: -(phi_ki phi_j^h - phi_k^h phi_ji + 2 phi_kj phi_i^h) + 2 eta eta delta + g eta xi.
DenseTensor exact_deformation_quadratic(const SasakianPointData& data);
// R - rho^2 exact_deformation_quadratic - rho^4 deformation_quartic.
DeformedCurvature exact_deformed_curvature(const SasakianPointData& data, const DenseTensor& riemann);

// R_kji^h xi^i, index order [k][j][h].
DenseTensor xi_curvature_contraction(const DenseTensor& riemann, const SasakianPointData& data);
RhoPolyTensor xi_curvature_contraction(const RhoPolyTensor& riemann, const SasakianPointData& data);
// -(1 + rho^2)^2 (eta_k delta_j^h - eta_j delta_k^h)
DenseTensor xi_contraction_prediction(const SasakianPointData& data, double rho);

// Lowers the last slot of R_kji^h with a metric, giving R_kjih.
DenseTensor lower_curvature(const DenseTensor& riemann, const DenseTensor& metric);

// The chart with metric g + rho^2 eta eta built pointwise from the base chart. No analytic
// partials, so Christoffel symbols and curvature come from finite differences.
Chart deformed_chart(const Chart& base, double rho);

}  // namespace sasaki
