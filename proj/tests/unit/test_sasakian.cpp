#include <doctest.h>

#include <cmath>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/models.hpp"
#include "sasaki/pipeline.hpp"
#include "sasaki/sasakian.hpp"
#include "test_support.hpp"

using namespace sasaki;

namespace {

double worst(const std::vector<CheckRecord>& records) {
  double w = 0.0;
  for (const auto& r : records)
    if (r.id != "contact.volume-nonzero") w = std::max(w, r.residual);
  return w;
}

}  // namespace

TEST_CASE("Sasakian axioms hold at the seeded sample points") {
  SUBCASE("sphere") {
    const ModelSpec spec{ModelKind::sphere, 1, 20, 42};
    const Chart chart = make_chart(spec);
    for (const auto& p : sample_points(spec)) {
      const auto records = check_sasakian(chart, p);
      for (const auto& r : records) CHECK_MESSAGE(r.pass, r.id);
      CHECK(worst(records) < 1e-8);
    }
  }
  SUBCASE("heisenberg with analytic partials") {
    const ModelSpec spec{ModelKind::heisenberg, 1, 20, 42};
    const Chart chart = make_chart(spec);
    for (const auto& p : sample_points(spec)) {
      const auto records = check_sasakian(chart, p);
      for (const auto& r : records) CHECK_MESSAGE(r.pass, r.id);
      CHECK(worst(records) < 1e-9);
    }
  }
}

TEST_CASE("contact volume of an orthonormal adapted frame is 2^m m! / (2m+1)!") {
  // eta ^ (d eta)^m has 2^m m! nonzero permutation terms of equal sign out of (2m+1)!.
  const std::vector<std::pair<int, double>> cases{{1, 1.0 / 3.0}, {2, 1.0 / 15.0}, {4, 1.0 / 945.0}};
  for (auto [m, expected] : cases) {
    const int d = 2 * m + 1;
    std::vector<std::vector<double>> basis(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    const SasakianPointData frame = frame_point_data(basis);
    CHECK(std::abs(contact_volume_component(frame.eta, -frame.phi_lower)) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("deformed metric inverse") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 1);
  const DeformedMetric h1 = deform_metric(mp.data, 1.0);
  CHECK(h1.alpha == doctest::Approx(-0.5));
  const double xi_norm = contract_product(contract_product(h1.h, 0, mp.data.xi, 0), 0, mp.data.xi, 0).value();
  CHECK(xi_norm == doctest::Approx(2.0).epsilon(1e-13));
  for (double rho : {0.3, 1.0, 2.5}) {
    for (int idx = 0; idx < 4; ++idx) {
      const auto q = testing::model_point(ModelKind::heisenberg, 1, idx);
      const DeformedMetric h = deform_metric(q.data, rho);
      const DenseTensor id = contract_product(h.h, 1, h.h_inv, 0);
      CHECK((id - DenseTensor::kronecker(5)).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("closed-form deformed Christoffel symbols match finite differences of h_rho") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 2);
  const CurvatureData base = christoffel(mp.chart, mp.point);
  const DenseTensor closed = deformed_christoffel(mp.data, base.gamma, 1.0);
  const CurvatureData direct = christoffel(deformed_chart(mp.chart, 1.0), mp.point);
  CHECK((closed - direct.gamma).max_abs() < 1e-6);
}

TEST_CASE("curvature of h_rho against finite differences") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 2);
  for (double rho : {0.5, 1.0, 2.0}) {
    const DenseTensor direct = *riemann(deformed_chart(mp.chart, rho), mp.point).riemann;
    const DenseTensor exact = exact_deformed_curvature(mp.data, mp.riemann).r_bar.evaluate(rho);
    const DenseTensor closed = deformed_curvature(mp.data, mp.riemann).r_bar.evaluate(rho);
    CHECK((exact - direct).max_abs() < 1e-5);
    // The closed form differs exactly by 2 rho^2 times the phi phi block.
    const DenseTensor gap = closed - direct;
    const DenseTensor block = deformation_quadratic(mp.data) - exact_deformation_quadratic(mp.data);
    CHECK(gap.max_abs() > 0.1);
    CHECK((gap + rho * rho * block).max_abs() < 1e-5);
  }
}

TEST_CASE("phi-sectional curvature of h_rho on the sphere is 1 - 3 rho^2") {
  // Horizontal planes spanned by X and phi X lose 3 (h(xi, xi) - 1) of curvature.
  const auto mp = testing::model_point(ModelKind::sphere, 1, 3);
  DenseTensor x(5, {Variance::upper});
  x(1) = 1.0;
  x = x - contract_product(mp.data.eta, 0, x, 0).value() * mp.data.xi;
  const DenseTensor y = contract_product(x, 0, mp.data.phi_mixed, 0);
  for (double rho : {0.0, 0.5, 1.5}) {
    const DeformedMetric h = deform_metric(mp.data, rho);
    const DenseTensor r = lower_curvature(exact_deformed_curvature(mp.data, mp.riemann).r_bar.evaluate(rho), h.h);
    double num = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c)
          for (int d = 0; d < 5; ++d) num += r(a, b, c, d) * x(a) * y(b) * y(c) * x(d);
    auto dot = [&](const DenseTensor& u, const DenseTensor& v) {
      return contract_product(contract_product(h.h, 0, u, 0), 0, v, 0).value();
    };
    const double den = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
    CHECK(num / den == doctest::Approx(1.0 - 3.0 * rho * rho).epsilon(1e-10));
  }
}

TEST_CASE("xi contraction of the deformed curvature") {
  for (ModelKind kind : {ModelKind::sphere, ModelKind::heisenberg}) {
    const auto mp = testing::model_point(kind, 1, 4);
    const DeformedCurvature printed = deformed_curvature(mp.data, mp.riemann);
    const DeformedCurvature exact = exact_deformed_curvature(mp.data, mp.riemann);
    for (double rho : {0.0, 0.5, 1.0, 2.0}) {
      const DenseTensor expected = xi_contraction_prediction(mp.data, rho);
      CHECK((xi_curvature_contraction(printed.r_bar.evaluate(rho), mp.data) - expected).max_abs() <
            1e-9 * expected.max_abs());
      CHECK((xi_curvature_contraction(exact.r_bar.evaluate(rho), mp.data) - expected).max_abs() <
            1e-9 * expected.max_abs());
    }
  }
}

TEST_CASE("deformed curvature rejects mismatched shapes") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 0);
  CHECK_THROWS_AS(deformed_curvature(mp.data, mp.data.g), StructuralError);
}
