#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sasaki/errors.hpp"
#include "sasaki/models.hpp"
#include "test_support.hpp"

using namespace sasaki;

TEST_CASE("model names and constants") {
  CHECK(model_name(ModelKind::sphere) == "sphere");
  CHECK(parse_model("heisenberg") == ModelKind::heisenberg);
  CHECK_THROWS(parse_model("torus"));
  CHECK(space_form_constant(ModelKind::sphere) == 1.0);
  CHECK(space_form_constant(ModelKind::heisenberg) == -3.0);
}

TEST_CASE("chart curvature equals the space form curvature") {
  for (ModelKind kind : {ModelKind::sphere, ModelKind::heisenberg}) {
    const ModelSpec spec{kind, 1, 20, 42};
    const Chart chart = make_chart(spec);
    const double tol = kind == ModelKind::sphere ? 1e-8 : 1e-9;
    for (const auto& p : sample_points(spec)) {
      const SasakianPointData data = point_data(chart, p);
      const DenseTensor r = *riemann(chart, p).riemann;
      CHECK((r - space_form_curvature(data, space_form_constant(kind))).max_abs() < tol);
    }
  }
}

TEST_CASE("unit sphere curvature is g_ki delta_j^h - g_ji delta_k^h up to the slot convention") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 5);
  DenseTensor constant(5, mp.riemann.variance());
  for (int k = 0; k < 5; ++k)
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i)
        for (int h = 0; h < 5; ++h)
          constant(k, j, i, h) = mp.data.g(j, i) * (k == h) - mp.data.g(k, i) * (j == h);
  CHECK((mp.riemann - constant).max_abs() < 1e-12);
}

TEST_CASE("eta(xi) = 1 at every sphere sample") {
  const ModelSpec spec{ModelKind::sphere, 1, 20, 42};
  const Chart chart = make_chart(spec);
  for (const auto& p : sample_points(spec)) {
    const SasakianPointData data = point_data(chart, p);
    CHECK(contract_product(data.eta, 0, data.xi, 0).value() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("phi-sectional curvature of the Heisenberg group is -3") {
  const ModelSpec spec{ModelKind::heisenberg, 1, 6, 42};
  const Chart chart = make_chart(spec);
  for (const auto& p : sample_points(spec)) {
    const SasakianPointData data = point_data(chart, p);
    const DenseTensor r = lower_curvature(*riemann(chart, p).riemann, data.g);
    for (int axis = 0; axis < 4; ++axis) {
      DenseTensor x(5, {Variance::upper});
      x(axis) = 1.0;
      x = x - contract_product(data.eta, 0, x, 0).value() * data.xi;
      const DenseTensor y = contract_product(x, 0, data.phi_mixed, 0);
      double num = 0.0;
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          for (int c = 0; c < 5; ++c)
            for (int d = 0; d < 5; ++d) num += r(a, b, c, d) * x(a) * y(b) * y(c) * x(d);
      auto dot = [&](const DenseTensor& u, const DenseTensor& v) {
        return contract_product(contract_product(data.g, 0, u, 0), 0, v, 0).value();
      };
      const double den = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
      if (den < 1e-6) continue;
      CHECK(num / den == doctest::Approx(-3.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("block coefficients of the deformed space form") {
  const auto a = contact_curvature_coefficients(1.0);
  CHECK(a.a1.rho_coefficient(0) == 1.0);
  CHECK(a.a2.rho_coefficient(2) == -1.0);
  CHECK(a.a3.rho_coefficient(2) == -1.0);
  CHECK(a.a4.rho_coefficient(2) == -2.0);
  CHECK(a.a4.rho_coefficient(4) == -1.0);
  const auto h = contact_curvature_coefficients(-3.0);
  CHECK(h.a1.rho_coefficient(0) == 0.0);
  CHECK(h.a2.rho_coefficient(0) == 1.0);
  CHECK(h.a3.rho_coefficient(0) == -1.0);
  CHECK(h.a4.rho_coefficient(0) == -1.0);
}

TEST_CASE("sample points are reproducible and match the frozen fixture") {
  for (const char* name : {"sphere_k1_n20_seed42.kv", "heisenberg_k1_n20_seed42.kv"}) {
    std::ifstream in(std::string(SASAKI_DATA_DIR) + "/fixtures/" + name);
    REQUIRE(in.good());
    const PointFixture fx = read_fixture(in);
    ModelSpec spec = fx.spec;
    spec.sample_count = static_cast<int>(fx.points.size());
    CHECK(spec.seed == 42);
    CHECK(fx.points.size() == 20);
    const auto points = sample_points(spec);
    REQUIRE(points.size() == fx.points.size());
    for (std::size_t i = 0; i < points.size(); ++i) CHECK(points[i] == fx.points[i]);
    for (const auto& p : points) CHECK_NOTHROW(require_sample_point(spec, p));
  }
}

TEST_CASE("fixture text round trip and rejection of bad input") {
  PointFixture fx;
  fx.spec = {ModelKind::heisenberg, 1, 2, 7};
  fx.points = sample_points(fx.spec);
  fx.bounds["half_width"] = 1.0;
  std::stringstream ss;
  write_fixture(ss, fx);
  const PointFixture back = read_fixture(ss);
  CHECK(back.points == fx.points);
  CHECK(back.spec.kind == ModelKind::heisenberg);
  CHECK(back.bounds.at("half_width") == 1.0);

  std::istringstream bad("format sasaki-points 2\n");
  CHECK_THROWS_AS(read_fixture(bad), StructuralError);
  std::istringstream unknown("format sasaki-points 1\ncolour red\n");
  CHECK_THROWS_AS(read_fixture(unknown), StructuralError);
}

TEST_CASE("points outside the safe region are rejected") {
  const ModelSpec spec{ModelKind::sphere, 1, 1, 42};
  const std::vector<double> far{0.9, 0, 0, 0, 0};
  CHECK_THROWS_AS(require_sample_point(spec, far), DomainError);
}
