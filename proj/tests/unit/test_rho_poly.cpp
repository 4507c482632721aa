#include <doctest.h>

#include <cmath>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/rho_poly.hpp"
#include "test_support.hpp"

using namespace sasaki;
using sasaki::testing::random_tensor;

namespace {

RhoPolyTensor random_poly(int dim, std::vector<Variance> v, std::uint64_t seed) {
  RhoPolyTensor p(dim, v);
  for (int deg : {0, 2, 4}) p.add_term(deg, random_tensor(dim, v, seed + static_cast<std::uint64_t>(deg)));
  return p;
}

}  // namespace

TEST_CASE("RhoPolyTensor evaluation and coefficients") {
  const DenseTensor c0 = random_tensor(3, {Variance::lower}, 1);
  const DenseTensor c2 = random_tensor(3, {Variance::lower}, 2);
  RhoPolyTensor p(3, {Variance::lower});
  p.add_term(0, c0);
  p.add_term(2, c2);
  CHECK((p.evaluate(0.0) - c0).max_abs() == 0.0);
  CHECK((p.evaluate(0.7) - (c0 + 0.49 * c2)).max_abs() < 1e-15);
  CHECK((p.coefficient(2) - c2).max_abs() == 0.0);
  CHECK(p.coefficient(4).max_abs() == 0.0);
  CHECK(p.max_degree() == 2);
  CHECK_THROWS_AS(p.add_term(3, c0), StructuralError);
}

TEST_CASE("binomial expansion of (1 + rho^2)^2") {
  const EvenPolynomial sq = binomial_power(1.0, 1.0, 2);
  REQUIRE(sq.coefficients().size() == 3);
  CHECK(sq.rho_coefficient(0) == 1.0);
  CHECK(sq.rho_coefficient(2) == 2.0);
  CHECK(sq.rho_coefficient(4) == 1.0);
  CHECK(sq.rho_coefficient(3) == 0.0);
}

TEST_CASE("evaluation is a ring homomorphism for the contracted product") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const RhoPolyTensor p = random_poly(3, {Variance::lower, Variance::upper}, seed);
    const RhoPolyTensor q = random_poly(3, {Variance::lower, Variance::upper}, seed + 10);
    for (double rho : {0.0, 0.4, 1.3}) {
      const DenseTensor lhs = contract_product(p, 1, q, 0).evaluate(rho);
      const DenseTensor rhs = contract_product(p.evaluate(rho), 1, q.evaluate(rho), 0);
      CHECK((lhs - rhs).max_abs() < 1e-11 * std::max(1.0, rhs.max_abs()));
      const DenseTensor tp = tensor_product(p, q).evaluate(rho);
      CHECK((tp - tensor_product(p.evaluate(rho), q.evaluate(rho))).max_abs() < 1e-11 * std::max(1.0, tp.max_abs()));
    }
  }
}

TEST_CASE("deformed curvature as a polynomial equals the substituted closed form") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 2);
  const DeformedCurvature r_bar = deformed_curvature(mp.data, mp.riemann);
  const double rho = 0.7;
  const DenseTensor substituted = mp.riemann - rho * rho * deformation_quadratic(mp.data) -
                                  std::pow(rho, 4) * deformation_quartic(mp.data);
  CHECK((r_bar.r_bar.evaluate(rho) - substituted).max_abs() < 1e-12);
}

TEST_CASE("polynomial division and fitting") {
  const EvenPolynomial divisor = binomial_power(1.0, 1.0, 2);
  const EvenPolynomial quotient({0.5, -1.0, 3.0});
  const EvenPolynomial product = quotient * divisor;
  const auto div = divide(product, divisor);
  CHECK((div.quotient - quotient).max_abs() < 1e-14);
  CHECK(div.remainder.max_abs() < 1e-14);

  const EvenPolynomial with_rest = product - EvenPolynomial({-2.0});
  CHECK(divide(with_rest, divisor).remainder.rho_coefficient(0) == doctest::Approx(2.0));

  const std::vector<double> rho{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<double> values;
  for (double r : rho) values.push_back(product.evaluate(r));
  const EvenPolynomial fit = vandermonde_fit(rho, values, 8);
  CHECK((fit - product).max_abs() < 1e-9);
}
