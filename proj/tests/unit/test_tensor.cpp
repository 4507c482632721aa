#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/permutations.hpp"
#include "sasaki/tensor.hpp"
#include "test_support.hpp"

using namespace sasaki;
using sasaki::testing::random_form;
using sasaki::testing::random_metric;
using sasaki::testing::random_tensor;

namespace {
const std::vector<Variance> kLL{Variance::lower, Variance::lower};
const std::vector<Variance> kLLL{Variance::lower, Variance::lower, Variance::lower};
}  // namespace

TEST_CASE("tensor_product multiplies components and concatenates variance") {
  DenseTensor a(2, {Variance::lower}, {1.0, 2.0});
  DenseTensor b(2, {Variance::lower}, {3.0, 4.0});
  const DenseTensor p = tensor_product(a, b);
  CHECK(p.rank() == 2);
  const std::vector<double> expected{3.0, 4.0, 6.0, 8.0};
  CHECK(std::equal(p.components().begin(), p.components().end(), expected.begin()));

  const DenseTensor one = DenseTensor::scalar(1.0, 2);
  CHECK(tensor_product(one, b).max_abs() == doctest::Approx(4.0));
  CHECK((tensor_product(one, b) - b).max_abs() == 0.0);

  CHECK_THROWS_AS(tensor_product(a, DenseTensor(3, {Variance::lower})), StructuralError);
}

TEST_CASE("eta tensor eta on the sphere chart is symmetric and matches an explicit loop") {
  const auto mp = testing::model_point(ModelKind::sphere, 1, 3);
  const DenseTensor ee = tensor_product(mp.data.eta, mp.data.eta);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(ee(i, j) == mp.data.eta(i) * mp.data.eta(j));
      CHECK(ee(i, j) == ee(j, i));
    }
}

TEST_CASE("contract traces one upper and one lower slot") {
  SUBCASE("identity gives the dimension") {
    CHECK(contract(DenseTensor::kronecker(4), 0, 1).value() == doctest::Approx(4.0));
  }
  SUBCASE("phi phi = -delta + eta xi on the sphere") {
    const auto mp = testing::model_point(ModelKind::sphere, 1, 2);
    const DenseTensor phi2 = contract_product(mp.data.phi_mixed, 1, mp.data.phi_mixed, 0);
    const DenseTensor expected =
        tensor_product(mp.data.eta, mp.data.xi) - DenseTensor::kronecker(5);
    CHECK((phi2 - expected).max_abs() < 1e-12);
  }
  SUBCASE("random rank-3 tensor against a loop") {
    const DenseTensor a = random_tensor(3, {Variance::upper, Variance::lower, Variance::lower}, 7);
    const DenseTensor c = contract(a, 0, 2);
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int m = 0; m < 3; ++m) s += a(m, j, m);
      CHECK(c(j) == doctest::Approx(s).epsilon(1e-14));
    }
  }
  SUBCASE("mismatched variance is rejected") {
    const DenseTensor a = random_tensor(3, kLL, 1);
    CHECK_THROWS_AS(contract(a, 0, 1), StructuralError);
  }
}

TEST_CASE("contract is linear") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<Variance> v{Variance::lower, Variance::upper, Variance::lower};
    const DenseTensor a = random_tensor(4, v, seed);
    const DenseTensor b = random_tensor(4, v, seed + 100);
    const double s = 0.3 * static_cast<double>(seed) - 1.7;
    const DenseTensor lhs = contract(a * s + b, 0, 1);
    const DenseTensor rhs = contract(a, 0, 1) * s + contract(b, 0, 1);
    CHECK((lhs - rhs).max_abs() < 1e-12);
  }
}

TEST_CASE("skew_symmetrize") {
  SUBCASE("symmetric input vanishes") {
    const DenseTensor g = random_metric(4, 3);
    CHECK(skew_symmetrize(g, {0, 1}).max_abs() < 1e-15);
  }
  SUBCASE("antisymmetric input is unchanged and the projection is idempotent") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const DenseTensor a = random_tensor(4, kLLL, seed);
      const DenseTensor once = skew_symmetrize(a, {0, 1, 2});
      const DenseTensor twice = skew_symmetrize(once, {0, 1, 2});
      CHECK((once - twice).max_abs() < 1e-15);
      CHECK(antisymmetry_defect(once) < 1e-14);
    }
  }
  SUBCASE("rank-5 component against the explicit 120-term sum") {
    const DenseTensor a =
        random_tensor(5, std::vector<Variance>(5, Variance::lower), 11);
    std::array<int, 5> order{0, 1, 2, 3, 4};
    double sum = 0.0;
    int terms = 0;
    do {
      sum += permutation_sign(order) * a.at(order);
      ++terms;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(terms == 120);
    const DenseTensor s = skew_symmetrize(a, {0, 1, 2, 3, 4});
    const int sorted[] = {0, 1, 2, 3, 4};
    CHECK(s.at(sorted) == doctest::Approx(sum / 120.0).epsilon(1e-13));
    CHECK(top_component(a) == doctest::Approx(sum / 120.0).epsilon(1e-13));
  }
  SUBCASE("mixed variance slot sets are rejected") {
    const DenseTensor a = random_tensor(3, {Variance::lower, Variance::upper}, 2);
    CHECK_THROWS_AS(skew_symmetrize(a, {0, 1}), StructuralError);
  }
}

TEST_CASE("wedge normalization and graded anticommutativity") {
  DenseTensor a(2, {Variance::lower}, {1.0, 0.0});
  DenseTensor b(2, {Variance::lower}, {0.0, 1.0});
  CHECK(wedge(a, b)(0, 1) == doctest::Approx(0.5));
  CHECK(wedge(a, a).max_abs() == 0.0);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}}) {
      const DenseTensor x = random_form(5, p, seed);
      const DenseTensor y = random_form(5, q, seed + 50);
      const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
      CHECK((wedge(x, y) - sign * wedge(y, x)).max_abs() < 1e-12);
    }
  }
  CHECK_THROWS_AS(wedge(random_tensor(3, kLL, 1), DenseTensor(3, {Variance::lower})), StructuralError);
}

TEST_CASE("mod_equivalent is an equivalence relation that ignores symmetric parts") {
  const std::vector<int> slots{0, 1, 2};
  const DenseTensor a = random_tensor(4, kLLL, 1);
  const DenseTensor b = a + tensor_product(random_metric(4, 2), random_tensor(4, {Variance::lower}, 3));
  const DenseTensor c = b + permute_slots(b, std::vector<int>{1, 0, 2});
  CHECK(mod_equivalent(a, a, slots, 0.0));
  CHECK(mod_equivalent(a, b, slots, 1e-12));
  CHECK(mod_equivalent(b, a, slots, 1e-12));
  CHECK(mod_equivalent(b, c, slots, 1e-12) == mod_equivalent(c, b, slots, 1e-12));
  CHECK(mod_equivalent(c, DenseTensor(4, kLLL), slots, 1e-12));  // symmetric in slots 0, 1
  CHECK_FALSE(mod_equivalent(a, DenseTensor(4, kLLL), slots, 1e-6));
  CHECK(mod_equivalent(a, b, slots, 1e-12));
  CHECK(mod_equivalent(b, DenseTensor(4, kLLL) + a, slots, 1e-12));
}

TEST_CASE("raise_lower") {
  const DenseTensor g = random_metric(4, 9);
  const auto mp = testing::model_point(ModelKind::sphere, 1, 4);
  SUBCASE("identity metric leaves components unchanged") {
    const DenseTensor id(4, kLL, std::vector<double>{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
    const DenseTensor t = random_tensor(4, {Variance::upper, Variance::lower}, 5);
    DenseTensor id_inv(4, {Variance::upper, Variance::upper});
    for (int i = 0; i < 4; ++i) id_inv(i, i) = 1.0;
    const DenseTensor lowered = raise_lower(t, 0, id, id_inv);
    CHECK(lowered.variance(0) == Variance::lower);
    CHECK(std::equal(lowered.components().begin(), lowered.components().end(),
                     t.components().begin()));
  }
  SUBCASE("lowering xi with g gives eta on the sphere") {
    const DenseTensor lowered = raise_lower(mp.data.xi, 0, mp.data.g, mp.data.g_inv);
    CHECK((lowered - mp.data.eta).max_abs() < 1e-14);
  }
  SUBCASE("lower then raise is the identity") {
    Eigen::MatrixXd gm(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gm(i, j) = g(i, j);
    const Eigen::MatrixXd inv = gm.inverse();
    DenseTensor g_inv(4, {Variance::upper, Variance::upper});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g_inv(i, j) = inv(i, j);
    const DenseTensor t = random_tensor(4, {Variance::upper, Variance::lower, Variance::upper}, 8);
    const DenseTensor back = raise_lower(raise_lower(t, 2, g, g_inv), 2, g, g_inv);
    CHECK((back - t).max_abs() < 1e-12);
  }
}
