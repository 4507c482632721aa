#include "sasaki/sasakian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "sasaki/errors.hpp"
#include "sasaki/form_matrix.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

namespace {

const std::vector<Variance> kLL{Variance::lower, Variance::lower};
const std::vector<Variance> kLU{Variance::lower, Variance::upper};
const std::vector<Variance> kCurv{Variance::lower, Variance::lower, Variance::lower, Variance::upper};

double scale_of(std::initializer_list<double> magnitudes) {
  double s = 0.0;
  for (double m : magnitudes) s = std::max(s, m);
  return s;
}

}  // namespace

SasakianPointData point_data(const Chart& chart, std::span<const double> p) {
  chart.require_inside(p);
  if (!chart.sasakian_fields) throw StructuralError(chart.name + ": chart carries no contact structure");
  SasakianFields f = chart.sasakian_fields(p);
  SasakianPointData d;
  d.point.assign(p.begin(), p.end());
  d.g = chart.metric(p);
  d.g_inv = inverse_metric(d.g);
  d.eta = std::move(f.eta);
  d.xi = std::move(f.xi);
  d.phi_mixed = std::move(f.phi_mixed);
  d.phi_lower = std::move(f.phi_lower);
  return d;
}

SasakianPointData frame_point_data(const std::vector<std::vector<double>>& basis) {
  const int n = static_cast<int>(basis.size());
  if (n < 3 || n % 2 == 0) throw StructuralError("adapted frame needs an odd dimension >= 3");
  Eigen::MatrixXd b(n, n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(basis[a].size()) != n) throw StructuralError("frame basis must be square");
    for (int i = 0; i < n; ++i) b(a, i) = basis[a][i];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (!lu.isInvertible()) throw NumericalError("frame vectors are linearly dependent", INFINITY);
  const Eigen::MatrixXd c = lu.inverse();  // c(i, a): coframe theta^a_i
  // phi on the frame: image[a] = phi(e_a) expressed in frame indices
  Eigen::MatrixXd phi_frame = Eigen::MatrixXd::Zero(n, n);  // phi_frame(a, b) = theta^b(phi e_a)
  for (int a = 1; a + 1 < n; a += 2) {
    phi_frame(a, a + 1) = 1.0;
    phi_frame(a + 1, a) = -1.0;
  }
  const Eigen::MatrixXd g = c * c.transpose();
  SasakianPointData d;
  d.point.assign(static_cast<std::size_t>(n), 0.0);
  d.g = from_matrix(0.5 * (g + g.transpose()), Variance::lower, Variance::lower);
  d.g_inv = inverse_metric(d.g);
  d.eta = DenseTensor::lower(n, 1);
  d.xi = DenseTensor::upper(n, 1);
  for (int i = 0; i < n; ++i) {
    d.eta(i) = c(i, 0);
    d.xi(i) = b(0, i);
  }
  const Eigen::MatrixXd mixed = c * phi_frame * b;       // phi_i^j
  const Eigen::MatrixXd lower = c * phi_frame * c.transpose();  // phi_ij, frame is orthonormal
  d.phi_mixed = from_matrix(mixed, Variance::lower, Variance::upper);
  d.phi_lower = from_matrix(lower, Variance::lower, Variance::lower);
  return d;
}

ContactDerivatives contact_derivatives(const Chart& chart, std::span<const double> p,
                                       const CurvatureData& connection, const FdOptions& fd) {
  DenseTensor d_eta;
  DenseTensor d_phi;
  if (chart.sasakian_partials) {
    SasakianFieldPartials partials = chart.sasakian_partials(p);
    d_eta = std::move(partials.d_eta);
    d_phi = std::move(partials.d_phi_mixed);
  } else {
    const auto fields = chart.sasakian_fields;
    d_eta = fd_derivative([&](std::span<const double> q) { return fields(q).eta; }, p,
                          chart.domain, fd.step)
                .derivative;
    d_phi = fd_derivative([&](std::span<const double> q) { return fields(q).phi_mixed; }, p,
                          chart.domain, fd.step)
                .derivative;
  }
  const SasakianFields f = chart.sasakian_fields(p);
  return {covariant_derivative(f.eta, d_eta, connection.gamma),
          covariant_derivative(f.phi_mixed, d_phi, connection.gamma)};
}

double contact_volume_component(const DenseTensor& eta, const DenseTensor& two_form) {
  const int d = eta.dim();
  if ((d - 1) % 2 != 0) throw StructuralError("contact volume needs odd dimension");
  std::vector<FormMatrix> factors{FormMatrix::scalar_form(eta)};
  for (int i = 0; i < (d - 1) / 2; ++i) factors.push_back(FormMatrix::scalar_form(two_form));
  const FormMatrix top = wedge_contract_chain(factors);
  return top.top_trace().rho_coefficient(0) / d;
}

std::vector<CheckRecord> check_sasakian(const Chart& chart, std::span<const double> p,
                                        const SasakianTolerances& tol, const FdOptions& fd) {
  const SasakianPointData s = point_data(chart, p);
  const int n = s.dim();
  const DenseTensor delta = DenseTensor::kronecker(n);
  std::vector<CheckRecord> out;
  auto push = [&](CheckRecord r) {
    r.point = s.point;
    out.push_back(std::move(r));
  };

  const DenseTensor phi2 = contract_product(s.phi_mixed, 1, s.phi_mixed, 0);
  const DenseTensor eta_xi = tensor_product(s.eta, s.xi);
  push(make_check("contact.phi-squared", "phi_i^k phi_k^j = -delta_i^j + eta_i xi^j",
                  (phi2 + delta - eta_xi).max_abs(),
                  scale_of({phi2.max_abs(), 1.0, eta_xi.max_abs()}), tol.algebraic));
  const double ex = contract_product(s.eta, 0, s.xi, 0).value();
  push(make_check("contact.eta-xi", "eta_k xi^k = 1", std::abs(ex - 1.0), 1.0, tol.algebraic));
  push(make_check("contact.phi-xi", "phi_j^k xi^j = 0",
                  contract_product(s.xi, 0, s.phi_mixed, 0).max_abs(),
                  s.phi_mixed.max_abs() * s.xi.max_abs(), tol.algebraic));
  push(make_check("contact.phi-eta", "phi_j^k eta_k = 0",
                  contract_product(s.phi_mixed, 1, s.eta, 0).max_abs(),
                  s.phi_mixed.max_abs() * s.eta.max_abs(), tol.algebraic));

  // g_kl phi_i^k phi_j^l + eta_i eta_j
  const DenseTensor phi_g = contract_product(s.phi_mixed, 1, s.g, 0);          // phi_i^k g_kl -> [i][l]
  const DenseTensor assoc = contract_product(phi_g, 1, s.phi_mixed, 1);        // [i][j]
  const DenseTensor eta_eta = tensor_product(s.eta, s.eta);
  push(make_check("metric.associated", "g_ij = g_kl phi_i^k phi_j^l + eta_i eta_j",
                  (s.g - assoc - eta_eta).max_abs(), scale_of({s.g.max_abs(), assoc.max_abs()}),
                  tol.algebraic));
  const DenseTensor g_xi = contract_product(s.g, 1, s.xi, 0);
  push(make_check("metric.reeb-dual", "g_ij xi^j = eta_i", (g_xi - s.eta).max_abs(),
                  scale_of({g_xi.max_abs(), s.eta.max_abs()}), tol.algebraic));
  const DenseTensor lowered = raise_lower(s.phi_mixed, 1, s.g, s.g_inv);
  push(make_check("metric.phi-lowered", "phi_ij = phi_i^k g_kj", (lowered - s.phi_lower).max_abs(),
                  scale_of({lowered.max_abs(), s.phi_lower.max_abs()}), tol.algebraic));
  const DenseTensor phi_t = permute_slots(s.phi_lower, std::vector<int>{1, 0});
  push(make_check("metric.phi-skew", "phi_ij = -phi_ji", (s.phi_lower + phi_t).max_abs(),
                  s.phi_lower.max_abs(), tol.algebraic));

  const CurvatureData conn = christoffel(chart, p, fd);
  const ContactDerivatives nab = contact_derivatives(chart, p, conn, fd);
  const DenseTensor nab_eta_t = permute_slots(nab.nabla_eta, std::vector<int>{1, 0});
  const double deriv_scale = scale_of({nab.nabla_eta.max_abs(), s.phi_lower.max_abs()});
  push(make_check("contact.phi-from-d-eta", "phi_ij = -1/2 (nabla_i eta_j - nabla_j eta_i)",
                  (s.phi_lower + 0.5 * (nab.nabla_eta - nab_eta_t)).max_abs(), deriv_scale,
                  tol.differential));
  DenseTensor normal(n, {Variance::lower, Variance::lower, Variance::upper});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) normal(i, j, k) = s.g(i, j) * s.xi(k) - s.eta(j) * delta(i, k);
  push(make_check("sasakian.nabla-phi", "nabla_i phi_j^k = g_ij xi^k - eta_j delta_i^k",
                  (nab.nabla_phi - normal).max_abs(),
                  scale_of({nab.nabla_phi.max_abs(), normal.max_abs()}), tol.differential));
  push(make_check("sasakian.nabla-eta", "nabla_i eta_j = -phi_ij",
                  (nab.nabla_eta + s.phi_lower).max_abs(), deriv_scale, tol.differential));
  push(make_check("sasakian.killing", "nabla_i eta_j + nabla_j eta_i = 0",
                  (nab.nabla_eta + nab_eta_t).max_abs(), deriv_scale, tol.differential));

  // exterior derivative with weight 1/2: (d eta)_ij = (d_i eta_j - d_j eta_i) / 2
  const DenseTensor d_eta = 0.5 * (nab.nabla_eta - nab_eta_t);
  const int half = (n - 1) / 2;
  const double vol_d_eta = contact_volume_component(s.eta, d_eta);
  const double vol_phi = contact_volume_component(s.eta, s.phi_lower) * (half % 2 ? -1.0 : 1.0);
  auto identity = make_check("contact.volume-identity",
                             "eta ^ (d eta)^k = (-1)^k eta ^ phi^k",
                             std::abs(vol_d_eta - vol_phi), std::abs(vol_phi), tol.differential);
  identity.values["eta_d_eta_component"] = vol_d_eta;
  push(identity);
  const double vol_scale = s.eta.max_abs() * std::pow(s.phi_lower.max_abs(), half);
  push(make_nonzero_check("contact.volume-nonzero", "eta ^ (d eta)^k != 0", vol_d_eta,
                          1e-6 * vol_scale));
  return out;
}

DeformedMetric deform_metric(const SasakianPointData& data, double rho) {
  const double r2 = rho * rho;
  DeformedMetric m;
  m.alpha = -r2 / (1.0 + r2);
  m.h = data.g + r2 * tensor_product(data.eta, data.eta);
  m.h_inv = data.g_inv + m.alpha * tensor_product(data.xi, data.xi);
  return m;
}

DenseTensor deformed_christoffel(const SasakianPointData& data, const DenseTensor& gamma,
                                 double rho) {
  const int n = data.dim();
  const double r2 = rho * rho;
  DenseTensor out = gamma;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out(i, j, k) -= r2 * (data.phi_mixed(i, k) * data.eta(j) + data.phi_mixed(j, k) * data.eta(i));
  return out;
}

DenseTensor deformation_quadratic(const SasakianPointData& s) {
  const int n = s.dim();
  DenseTensor p(n, kCurv);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h) {
          const double dj = j == h ? 1.0 : 0.0;
          const double dk = k == h ? 1.0 : 0.0;
          p(k, j, i, h) = s.phi_lower(k, i) * s.phi_mixed(j, h) - s.phi_mixed(k, h) * s.phi_lower(j, i) +
                          2.0 * s.phi_lower(k, j) * s.phi_mixed(i, h) +
                          2.0 * s.eta(k) * s.eta(i) * dj - 2.0 * s.eta(j) * s.eta(i) * dk +
                          s.g(k, i) * s.eta(j) * s.xi(h) - s.g(j, i) * s.eta(k) * s.xi(h);
        }
  return p;
}

DenseTensor deformation_quartic(const SasakianPointData& s) {
  const int n = s.dim();
  DenseTensor q(n, kCurv);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        q(k, j, i, j) += s.eta(k) * s.eta(i);
        q(k, j, i, k) -= s.eta(j) * s.eta(i);
      }
  return q;
}

DeformedCurvature deformed_curvature(const SasakianPointData& data, const DenseTensor& riemann) {
  if (riemann.dim() != data.dim() || riemann.variance() != kCurv)
    throw StructuralError("deformed_curvature: curvature must be R_kji^h of the chart dimension");
  RhoPolyTensor r(data.dim(), kCurv);
  r.add_term(0, riemann);
  r.add_term(2, -deformation_quadratic(data));
  r.add_term(4, -deformation_quartic(data));
  return {std::move(r)};
}

DenseTensor exact_deformation_quadratic(const SasakianPointData& s) {
  const int n = s.dim();
  DenseTensor phi_block(n, kCurv);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          phi_block(k, j, i, h) = s.phi_lower(k, i) * s.phi_mixed(j, h) -
                                  s.phi_mixed(k, h) * s.phi_lower(j, i) +
                                  2.0 * s.phi_lower(k, j) * s.phi_mixed(i, h);
  return deformation_quadratic(s) - 2.0 * phi_block;
}

DeformedCurvature exact_deformed_curvature(const SasakianPointData& data, const DenseTensor& riemann) {
  if (riemann.dim() != data.dim() || riemann.variance() != kCurv)
    throw StructuralError("exact_deformed_curvature: curvature must be R_kji^h of the chart dimension");
  RhoPolyTensor r(data.dim(), kCurv);
  r.add_term(0, riemann);
  r.add_term(2, -exact_deformation_quadratic(data));
  r.add_term(4, -deformation_quartic(data));
  return {std::move(r)};
}

DenseTensor xi_curvature_contraction(const DenseTensor& riemann, const SasakianPointData& data) {
  return contract_product(riemann, 2, data.xi, 0);
}

RhoPolyTensor xi_curvature_contraction(const RhoPolyTensor& riemann, const SasakianPointData& data) {
  return contract_product(riemann, 2, RhoPolyTensor(data.xi), 0);
}

DenseTensor xi_contraction_prediction(const SasakianPointData& data, double rho) {
  const int n = data.dim();
  const double f = -(1.0 + rho * rho) * (1.0 + rho * rho);
  DenseTensor out(n, {Variance::lower, Variance::lower, Variance::upper});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      out(k, j, j) += f * data.eta(k);
      out(k, j, k) -= f * data.eta(j);
    }
  return out;
}

DenseTensor lower_curvature(const DenseTensor& riemann, const DenseTensor& metric) {
  return contract_product(riemann, 3, metric, 0);
}

Chart deformed_chart(const Chart& base, double rho) {
  if (!base.sasakian_fields) throw StructuralError(base.name + ": chart carries no contact structure");
  Chart out;
  out.name = base.name + "-deformed";
  out.dim = base.dim;
  out.domain = base.domain;
  const double r2 = rho * rho;
  out.metric = [metric = base.metric, fields = base.sasakian_fields, r2](std::span<const double> q) {
    const DenseTensor eta = fields(q).eta;
    return metric(q) + r2 * tensor_product(eta, eta);
  };
  return out;
}

}  // namespace sasaki
