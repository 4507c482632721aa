#include <doctest.h>

#include <cmath>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/geometry.hpp"
#include "sasaki/sasakian.hpp"
#include "test_support.hpp"

using namespace sasaki;

TEST_CASE("sphere graph chart Christoffel symbols match Gamma_ij^k = u^k g_ij") {
  const Chart chart = sphere_chart(1);
  for (const auto& p : sample_points({ModelKind::sphere, 1, 8, 42})) {
    const CurvatureData c = christoffel(chart, p);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          worst = std::max(worst, std::abs(c.gamma(i, j, k) - p[k] * c.metric(i, j)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("analytic metric partials agree with finite differences") {
  const Chart chart = sphere_chart(1);
  for (const auto& p : sample_points({ModelKind::sphere, 1, 5, 42})) {
    const DenseTensor analytic = chart.metric_partials(p);
    const auto fd = fd_derivative(chart.metric, p, chart.domain, 1e-3);
    const double error = (analytic - fd.derivative).max_abs();
    CHECK(error < 1e-8 * analytic.max_abs());
    CHECK(error <= fd.error_estimate);
  }
}

TEST_CASE("Richardson estimate bounds the error on polynomial test functions") {
  const ChartDomain domain{ChartDomain::Shape::box, 10.0};
  const TensorFn f = [](std::span<const double> q) {
    DenseTensor t(2, {Variance::lower});
    t(0) = std::pow(q[0], 6) - 3.0 * q[0] * q[1] * q[1];
    t(1) = std::pow(q[1], 5) * q[0];
    return t;
  };
  const std::vector<double> p{0.7, -1.1};
  const auto fd = fd_derivative(f, p, domain, 1e-2);
  DenseTensor exact(2, {Variance::lower, Variance::lower});
  exact(0, 0) = 6.0 * std::pow(p[0], 5) - 3.0 * p[1] * p[1];
  exact(1, 0) = -6.0 * p[0] * p[1];
  exact(0, 1) = std::pow(p[1], 5);
  exact(1, 1) = 5.0 * std::pow(p[1], 4) * p[0];
  const double error = (fd.derivative - exact).max_abs();
  CHECK(error > 0.0);
  CHECK(error <= fd.error_estimate);
}

TEST_CASE("finite differences refuse stencils that leave the chart") {
  const Chart chart = sphere_chart(1);
  const std::vector<double> edge{0.9995, 0, 0, 0, 0};
  CHECK_THROWS_AS(fd_derivative(chart.metric, edge, chart.domain, 1e-3), DomainError);
}

TEST_CASE("curvature without analytic second partials matches the analytic path") {
  const Chart chart = sphere_chart(1);
  Chart bare = chart;
  bare.metric_partials = {};
  bare.metric_second_partials = {};
  const auto p = sample_points({ModelKind::sphere, 1, 3, 42})[2];
  const CurvatureData analytic = riemann(chart, p);
  const CurvatureData numeric = riemann(bare, p);
  CHECK(analytic.analytic);
  CHECK_FALSE(numeric.analytic);
  CHECK((*analytic.riemann - *numeric.riemann).max_abs() < 1e-6);
}

TEST_CASE("covariant derivative of the metric vanishes") {
  for (ModelKind kind : {ModelKind::sphere, ModelKind::heisenberg}) {
    const Chart chart = make_chart({kind, 1, 4, 42});
    for (const auto& p : sample_points({kind, 1, 4, 42})) {
      const CurvatureData c = christoffel(chart, p);
      const DenseTensor nabla_g = covariant_derivative(c.metric, chart.metric_partials(p), c.gamma);
      CHECK(nabla_g.max_abs() < 1e-12);
    }
  }
}

TEST_CASE("Killing equation on the Heisenberg chart") {
  const auto mp = testing::model_point(ModelKind::heisenberg, 1, 3);
  const CurvatureData c = christoffel(mp.chart, mp.point);
  const ContactDerivatives nab = contact_derivatives(mp.chart, mp.point, c);
  const DenseTensor sym = nab.nabla_eta + permute_slots(nab.nabla_eta, std::vector<int>{1, 0});
  CHECK(sym.max_abs() < 1e-12);
}
