#include "sasaki/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

bool ChartDomain::contains(std::span<const double> p) const noexcept { return margin(p) > 0.0; }

double ChartDomain::margin(std::span<const double> p) const noexcept {
  if (shape == Shape::ball) {
    double r2 = 0.0;
    for (double x : p) r2 += x * x;
    return radius - std::sqrt(r2);
  }
  double worst = 0.0;
  for (double x : p) worst = std::max(worst, std::abs(x));
  return radius - worst;
}

void Chart::require_inside(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim)
    throw StructuralError(name + ": point has " + std::to_string(p.size()) +
                          " coordinates, chart dimension is " + std::to_string(dim));
  if (!domain.contains(p))
    throw DomainError(name + ": point lies outside the chart domain", -domain.margin(p));
}

FdDerivative fd_derivative(const TensorFn& f, std::span<const double> p, const ChartDomain& domain,
                           double step) {
  if (!(step > 0.0)) throw StructuralError("finite-difference step must be positive");
  const int dim = static_cast<int>(p.size());
  Point q(p.begin(), p.end());
  auto eval = [&](int axis, double offset) {
    q[axis] = p[axis] + offset;
    if (!domain.contains(q))
      throw DomainError("finite-difference stencil leaves the chart domain; keep at least " +
                            std::to_string(2.0 * step) + " from the boundary",
                        2.0 * step);
    DenseTensor v = f(q);
    q[axis] = p[axis];
    return v;
  };
  const DenseTensor centre = f(p);
  std::vector<Variance> variance{Variance::lower};
  variance.insert(variance.end(), centre.variance().begin(), centre.variance().end());
  DenseTensor out(centre.dim(), variance);
  const std::size_t block = centre.size();
  double richardson = 0.0;
  double magnitude = centre.max_abs();
  for (int axis = 0; axis < dim; ++axis) {
    auto stencil = [&](double h) {
      DenseTensor d = (eval(axis, -2 * h) - eval(axis, 2 * h) + 8.0 * (eval(axis, h) - eval(axis, -h)));
      magnitude = std::max(magnitude, d.max_abs() * h);
      return d * (1.0 / (12.0 * h));
    };
    const DenseTensor coarse = stencil(step);
    const DenseTensor fine = stencil(step / 2);
    richardson = std::max(richardson, (coarse - fine).max_abs());
    auto dst = out.components().subspan(static_cast<std::size_t>(axis) * block, block);
    std::copy(coarse.components().begin(), coarse.components().end(), dst.begin());
  }
  const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * magnitude / step;
  return {std::move(out), richardson * 16.0 / 15.0 + roundoff};
}

DenseTensor christoffel_from_partials(const DenseTensor& ginv, const DenseTensor& dg) {
  const int d = ginv.dim();
  DenseTensor gamma(d, {Variance::lower, Variance::lower, Variance::upper});
  std::vector<double> first(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      for (int m = 0; m < d; ++m) first[m] = 0.5 * (dg(i, j, m) + dg(j, i, m) - dg(m, i, j));
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += ginv(k, m) * first[m];
        gamma(i, j, k) = s;
      }
    }
  return gamma;
}

DenseTensor christoffel_partials_from_metric(const DenseTensor& ginv, const DenseTensor& dg,
                                             const DenseTensor& ddg) {
  const int d = ginv.dim();
  // d_l g^km = -g^ka d_l g_ab g^bm
  DenseTensor dginv(d, {Variance::lower, Variance::upper, Variance::upper});
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int m = 0; m < d; ++m) {
        double s = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) s += ginv(k, a) * dg(l, a, b) * ginv(b, m);
        dginv(l, k, m) = -s;
      }
  DenseTensor out(d, {Variance::lower, Variance::lower, Variance::lower, Variance::upper});
  std::vector<double> first(d), second(d);
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        for (int m = 0; m < d; ++m) {
          first[m] = 0.5 * (dg(i, j, m) + dg(j, i, m) - dg(m, i, j));
          second[m] = 0.5 * (ddg(l, i, j, m) + ddg(l, j, i, m) - ddg(l, m, i, j));
        }
        for (int k = 0; k < d; ++k) {
          double s = 0.0;
          for (int m = 0; m < d; ++m) s += dginv(l, k, m) * first[m] + ginv(k, m) * second[m];
          out(l, i, j, k) = s;
        }
      }
  return out;
}

DenseTensor riemann_from_christoffel(const DenseTensor& gamma, const DenseTensor& dgamma) {
  const int d = gamma.dim();
  DenseTensor r(d, {Variance::lower, Variance::lower, Variance::lower, Variance::upper});
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        for (int h = 0; h < d; ++h) {
          double s = dgamma(k, j, i, h) - dgamma(j, k, i, h);
          for (int l = 0; l < d; ++l) s += gamma(k, l, h) * gamma(j, i, l) - gamma(j, l, h) * gamma(k, i, l);
          r(k, j, i, h) = s;
        }
  return r;
}

CurvatureData christoffel(const Chart& chart, std::span<const double> p, const FdOptions& fd) {
  chart.require_inside(p);
  CurvatureData out;
  out.point.assign(p.begin(), p.end());
  out.metric = chart.metric(p);
  out.metric_condition = metric_condition(out.metric);
  out.inverse_metric = inverse_metric(out.metric);
  DenseTensor dg;
  if (chart.metric_partials) {
    dg = chart.metric_partials(p);
  } else {
    auto d = fd_derivative(chart.metric, p, chart.domain, fd.step);
    dg = std::move(d.derivative);
    out.analytic = false;
    out.fd_error_estimate = d.error_estimate;
  }
  out.gamma = christoffel_from_partials(out.inverse_metric, dg);
  return out;
}

CurvatureData riemann(const Chart& chart, std::span<const double> p, const FdOptions& fd) {
  CurvatureData out = christoffel(chart, p, fd);
  if (chart.metric_partials && chart.metric_second_partials) {
    out.gamma_partials = christoffel_partials_from_metric(
        out.inverse_metric, chart.metric_partials(p), chart.metric_second_partials(p));
  } else {
    const TensorFn gamma_fn = [&](std::span<const double> q) {
      return christoffel(chart, q, fd).gamma;
    };
    auto d = fd_derivative(gamma_fn, p, chart.domain, fd.step);
    out.gamma_partials = std::move(d.derivative);
    out.analytic = false;
    out.fd_error_estimate = std::max(out.fd_error_estimate, d.error_estimate);
  }
  out.riemann = riemann_from_christoffel(out.gamma, *out.gamma_partials);
  return out;
}

TensorField with_fd_partials(TensorField field, const ChartDomain& domain, double step) {
  if (!field.value) throw StructuralError("tensor field has no value callback");
  if (!field.partials) {
    field.partials = [value = field.value, domain, step](std::span<const double> q) {
      return fd_derivative(value, q, domain, step).derivative;
    };
  }
  return field;
}

DenseTensor covariant_derivative(const DenseTensor& value, const DenseTensor& partials,
                                 const DenseTensor& gamma) {
  const int d = value.dim();
  const int rank = value.rank();
  if (partials.rank() != rank + 1 || partials.dim() != d)
    throw StructuralError("covariant_derivative: partials must carry one extra leading slot");
  DenseTensor out = partials;
  std::vector<int> src(rank);
  for_each_index(d, rank + 1, [&](std::span<const int> idx) {
    const int k = idx[0];
    double s = 0.0;
    for (int slot = 0; slot < rank; ++slot) {
      std::copy(idx.begin() + 1, idx.end(), src.begin());
      const int a = idx[slot + 1];
      for (int l = 0; l < d; ++l) {
        src[slot] = l;
        if (value.variance(slot) == Variance::upper)
          s += gamma(k, l, a) * value.at(src);
        else
          s -= gamma(k, a, l) * value.at(src);
      }
    }
    out.at(idx) += s;
  });
  return out;
}

DenseTensor covariant_derivative(const Chart& chart, std::span<const double> p,
                                 const TensorField& field, const CurvatureData& connection) {
  chart.require_inside(p);
  if (!field.value || !field.partials)
    throw StructuralError("covariant_derivative: field must supply values and partials");
  return covariant_derivative(field.value(p), field.partials(p), connection.gamma);
}

}  // namespace sasaki
