#include "sasaki/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

namespace {

const std::vector<Variance> kLL{Variance::lower, Variance::lower};
const std::vector<Variance> kLU{Variance::lower, Variance::upper};
const std::vector<Variance> kCurv{Variance::lower, Variance::lower, Variance::lower, Variance::upper};

void check_k(int k) {
  if (k < 1 || k > 3) throw StructuralError("model parameter k must be 1, 2 or 3");
}

// Complex structure on R^(2m): (x0, y0, x1, y1, ...) -> (-y0, x0, -y1, x1, ...)
std::vector<double> apply_j(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t a = 0; a + 1 < v.size(); a += 2) {
    out[a] = -v[a + 1];
    out[a + 1] = v[a];
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return s;
}

SasakianFields sphere_fields(std::span<const double> u) {
  const int d = static_cast<int>(u.size());
  const double w = std::sqrt(1.0 - squared_norm(u));
  std::vector<double> x(u.begin(), u.end());
  x.push_back(w);
  // tangent vectors of the graph map
  std::vector<std::vector<double>> tangent(d, std::vector<double>(d + 1, 0.0));
  for (int i = 0; i < d; ++i) {
    tangent[i][i] = 1.0;
    tangent[i][d] = -u[i] / w;
  }
  const std::vector<double> jx = apply_j(x);
  SasakianFields f{DenseTensor::lower(d, 1), DenseTensor::upper(d, 1), DenseTensor(d, kLU),
                   DenseTensor(d, kLL)};
  for (int i = 0; i < d; ++i) {
    f.xi(i) = jx[i];
    f.eta(i) = dot(jx, tangent[i]);
  }
  for (int i = 0; i < d; ++i) {
    const std::vector<double> jt = apply_j(tangent[i]);
    const double normal = dot(jt, x);
    for (int j = 0; j < d; ++j) {
      // phi = -(J .)^T, read off in chart components and paired with the tangent frame
      f.phi_mixed(i, j) = -jt[j] + normal * x[j];
      f.phi_lower(i, j) = -dot(jt, tangent[j]);
    }
  }
  return f;
}

DenseTensor sphere_metric(std::span<const double> u) {
  const int d = static_cast<int>(u.size());
  const double f = 1.0 / (1.0 - squared_norm(u));
  DenseTensor g(d, kLL);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = (i == j ? 1.0 : 0.0) + u[i] * u[j] * f;
  return g;
}

DenseTensor sphere_metric_partials(std::span<const double> u) {
  const int d = static_cast<int>(u.size());
  const double f = 1.0 / (1.0 - squared_norm(u));
  DenseTensor dg = DenseTensor::lower(d, 3);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        dg(k, i, j) = ((k == i ? u[j] : 0.0) + (k == j ? u[i] : 0.0)) * f +
                      u[i] * u[j] * 2.0 * u[k] * f * f;
  return dg;
}

DenseTensor sphere_metric_second_partials(std::span<const double> u) {
  const int d = static_cast<int>(u.size());
  const double f = 1.0 / (1.0 - squared_norm(u));
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  DenseTensor ddg = DenseTensor::lower(d, 4);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      const double df_l = 2.0 * u[l] * f * f;
      const double df_k = 2.0 * u[k] * f * f;
      const double ddf = 2.0 * delta(k, l) * f * f + 8.0 * u[k] * u[l] * f * f * f;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          ddg(l, k, i, j) = (delta(k, i) * delta(l, j) + delta(l, i) * delta(k, j)) * f +
                            (delta(k, i) * u[j] + u[i] * delta(k, j)) * df_l +
                            (delta(l, i) * u[j] + u[i] * delta(l, j)) * df_k + u[i] * u[j] * ddf;
    }
  return ddg;
}

// Heisenberg coordinates: x^a at a, y^a at 2k + a, z at 4k.
DenseTensor heisenberg_eta(std::span<const double> p, int k) {
  const int d = 4 * k + 1;
  DenseTensor eta = DenseTensor::lower(d, 1);
  for (int a = 0; a < 2 * k; ++a) eta(a) = -0.5 * p[2 * k + a];
  eta(4 * k) = 0.5;
  return eta;
}

DenseTensor heisenberg_eta_partials(int k) {
  const int d = 4 * k + 1;
  DenseTensor deta = DenseTensor::lower(d, 2);  // [m][i] = d_m eta_i
  for (int a = 0; a < 2 * k; ++a) deta(2 * k + a, a) = -0.5;
  return deta;
}

}  // namespace

std::string model_name(ModelKind kind) {
  return kind == ModelKind::sphere ? "sphere" : "heisenberg";
}

ModelKind parse_model(const std::string& name) {
  if (name == "sphere") return ModelKind::sphere;
  if (name == "heisenberg") return ModelKind::heisenberg;
  throw StructuralError("unknown model '" + name + "'");
}

double space_form_constant(ModelKind kind) { return kind == ModelKind::sphere ? 1.0 : -3.0; }

Chart sphere_chart(int k) {
  check_k(k);
  Chart c;
  c.name = "sphere";
  c.dim = 4 * k + 1;
  c.domain = {ChartDomain::Shape::ball, 0.95};
  c.metric = sphere_metric;
  c.metric_partials = sphere_metric_partials;
  c.metric_second_partials = sphere_metric_second_partials;
  c.sasakian_fields = sphere_fields;
  return c;
}

Chart heisenberg_chart(int k) {
  check_k(k);
  const int d = 4 * k + 1;
  Chart c;
  c.name = "heisenberg";
  c.dim = d;
  c.domain = {ChartDomain::Shape::box, 1e6};
  c.metric = [k, d](std::span<const double> p) {
    const DenseTensor eta = heisenberg_eta(p, k);
    DenseTensor g = tensor_product(eta, eta);
    for (int i = 0; i < d - 1; ++i) g(i, i) += 0.25;
    return g;
  };
  const DenseTensor deta = heisenberg_eta_partials(k);
  c.metric_partials = [k, d, deta](std::span<const double> p) {
    const DenseTensor eta = heisenberg_eta(p, k);
    DenseTensor dg = DenseTensor::lower(d, 3);
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) dg(m, i, j) = deta(m, i) * eta(j) + eta(i) * deta(m, j);
    return dg;
  };
  c.metric_second_partials = [d, deta](std::span<const double>) {
    DenseTensor ddg = DenseTensor::lower(d, 4);
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            ddg(l, m, i, j) = deta(m, i) * deta(l, j) + deta(l, i) * deta(m, j);
    return ddg;
  };
  const int z = d - 1;
  // xi = 2 d/dz: eta(xi) = 1 and g(xi, .) = eta
  const Chart base = c;
  c.sasakian_fields = [base, k, d, z, deta](std::span<const double> p) {
    const CurvatureData conn = christoffel(base, p);
    SasakianFields f{heisenberg_eta(p, k), DenseTensor::upper(d, 1), DenseTensor(d, kLU),
                     DenseTensor(d, kLL)};
    f.xi(z) = 2.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // phi_i^j = -nabla_i xi^j and phi_ij = -nabla_i eta_j, computed separately
        f.phi_mixed(i, j) = -2.0 * conn.gamma(i, z, j);
        double lower = deta(i, j);
        for (int l = 0; l < d; ++l) lower -= conn.gamma(i, j, l) * f.eta(l);
        f.phi_lower(i, j) = -lower;
      }
    return f;
  };
  c.sasakian_partials = [base, d, z, deta](std::span<const double> p) {
    const DenseTensor ginv = inverse_metric(base.metric(p));
    const DenseTensor dgamma = christoffel_partials_from_metric(ginv, base.metric_partials(p),
                                                                base.metric_second_partials(p));
    SasakianFieldPartials out{deta, DenseTensor(d, {Variance::lower, Variance::lower, Variance::upper})};
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.d_phi_mixed(l, i, j) = -2.0 * dgamma(l, i, z, j);
    return out;
  };
  return c;
}

Chart make_chart(const ModelSpec& spec) {
  return spec.kind == ModelKind::sphere ? sphere_chart(spec.k) : heisenberg_chart(spec.k);
}

std::vector<Point> sample_points(const ModelSpec& spec) {
  check_k(spec.k);
  if (spec.sample_count < 1) throw StructuralError("sample count must be positive");
  const int d = spec.dim();
  std::mt19937_64 engine(spec.seed);
  // 53 random bits mapped to [-1, 1); platform independent unlike the std distributions
  auto uniform = [&engine] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  std::vector<Point> points;
  Point axis(d, 0.0);
  axis[0] = 0.5;
  points.push_back(axis);
  while (static_cast<int>(points.size()) < spec.sample_count) {
    Point p(d);
    if (spec.kind == ModelKind::sphere) {
      for (double& x : p) x = kSphereSampleRadius * uniform();
      if (squared_norm(p) > kSphereSampleRadius * kSphereSampleRadius) continue;
    } else {
      for (double& x : p) x = kHeisenbergSampleHalfWidth * uniform();
    }
    points.push_back(std::move(p));
  }
  return points;
}

void require_sample_point(const ModelSpec& spec, std::span<const double> p) {
  if (static_cast<int>(p.size()) != spec.dim())
    throw StructuralError("sample point has the wrong number of coordinates");
  const ChartDomain safe = spec.kind == ModelKind::sphere
                               ? ChartDomain{ChartDomain::Shape::ball, kSphereSampleRadius}
                               : ChartDomain{ChartDomain::Shape::box, kHeisenbergSampleHalfWidth};
  if (safe.margin(p) < 0.0)
    throw DomainError(model_name(spec.kind) + ": sample point outside the safe sampling region",
                      -safe.margin(p));
}

ContactCurvatureBlocks contact_curvature_blocks(const SasakianPointData& s) {
  const int n = s.dim();
  ContactCurvatureBlocks b{DenseTensor(n, kCurv), DenseTensor(n, kCurv), DenseTensor(n, kCurv),
                           DenseTensor(n, kCurv)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h) {
          const double dj = j == h ? 1.0 : 0.0;
          const double dk = k == h ? 1.0 : 0.0;
          b.cr1(k, j, i, h) = s.g(j, i) * dk - s.g(k, i) * dj;
          b.cr2(k, j, i, h) = s.phi_lower(k, i) * s.phi_mixed(j, h) -
                              s.phi_mixed(k, h) * s.phi_lower(j, i) +
                              2.0 * s.phi_lower(k, j) * s.phi_mixed(i, h);
          b.cr3(k, j, i, h) = (s.g(k, i) * s.eta(j) - s.g(j, i) * s.eta(k)) * s.xi(h);
          b.cr4(k, j, i, h) = (s.eta(k) * dj - s.eta(j) * dk) * s.eta(i);
        }
  return b;
}

ContactCurvatureCoefficients contact_curvature_coefficients(double c) {
  const double q = (c - 1.0) / 4.0;
  return {EvenPolynomial({(c + 3.0) / 4.0}), EvenPolynomial({-q, -1.0}),
          EvenPolynomial({q, -1.0}), EvenPolynomial({q, -2.0, -1.0})};
}

DenseTensor space_form_curvature(const SasakianPointData& s, double c) {
  const int n = s.dim();
  const double a = (c + 3.0) / 4.0;
  const double b = (c - 1.0) / 4.0;
  DenseTensor r(n, kCurv);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h) {
          const double dj = j == h ? 1.0 : 0.0;
          const double dk = k == h ? 1.0 : 0.0;
          r(k, j, i, h) =
              a * (s.g(j, i) * dk - s.g(k, i) * dj) +
              b * (s.eta(i) * s.eta(k) * dj - s.eta(j) * s.eta(i) * dk +
                   s.g(k, i) * s.eta(j) * s.xi(h) - s.g(j, i) * s.eta(k) * s.xi(h) +
                   s.phi_lower(j, i) * s.phi_mixed(k, h) - s.phi_lower(k, i) * s.phi_mixed(j, h) -
                   2.0 * s.phi_lower(k, j) * s.phi_mixed(i, h));
        }
  return r;
}

SpaceFormSplit space_form_split(const SasakianPointData& data, double c) {
  const ContactCurvatureBlocks b = contact_curvature_blocks(data);
  const double q = (c - 1.0) / 4.0;
  return {((c + 3.0) / 4.0) * b.cr1, -q * deformation_quadratic(data),
          q * (3.0 * b.cr4 + 2.0 * b.cr3)};
}

DenseTensor shifted_quadratic_part(const SasakianPointData& data, double c, double rho) {
  return -((c - 1.0) / 4.0 + rho * rho) * deformation_quadratic(data);
}

}  // namespace sasaki
