#include <doctest.h>

#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/form_matrix.hpp"
#include "sasaki/lemmas.hpp"
#include "sasaki/permutations.hpp"
#include "test_support.hpp"

using namespace sasaki;
using sasaki::testing::random_form;
using sasaki::testing::random_tensor;

TEST_CASE("blade bookkeeping") {
  const int idx[] = {0, 2, 3};
  const Blade b = blade_of(idx);
  CHECK(b == 0b1101u);
  CHECK(blade_indices(b) == std::vector<int>{0, 2, 3});
  CHECK(shuffle_sign(0b10u, 0b01u) == -1);
  CHECK(shuffle_sign(0b01u, 0b10u) == 1);
}

TEST_CASE("scalar forms reproduce the dense wedge product") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const DenseTensor a = random_form(4, 1, seed);
    const DenseTensor b = random_form(4, 2, seed + 7);
    const DenseTensor dense = wedge(a, b);
    const FormMatrix fm = wedge_contract(FormMatrix::scalar_form(a), FormMatrix::scalar_form(b));
    for (const auto& [blade, matrix] : fm.blades()) {
      const auto idx = blade_indices(blade);
      CHECK(matrix.evaluate(0.0)(0, 0) == doctest::Approx(dense.at(idx)).epsilon(1e-13));
    }
  }
}

TEST_CASE("top trace of a matrix chain equals the signed permutation sum") {
  const int d = 3;
  const std::vector<Variance> one_form{Variance::lower, Variance::upper, Variance::lower};
  const std::vector<Variance> two_form{Variance::lower, Variance::lower, Variance::upper, Variance::lower};
  const DenseTensor f = random_tensor(d, one_form, 3);  // [a][row][col]
  const DenseTensor p = random_tensor(d, two_form, 4);  // [a][b][row][col]
  const FormMatrix chain = wedge_contract(FormMatrix::from_tensor(RhoPolyTensor(f), 1, 1, 2),
                                          FormMatrix::from_tensor(RhoPolyTensor(p), 2, 2, 3));
  const auto oracle = signed_permutation_sum(d, 1, [&](std::span<const int> o, double sign, std::span<double> acc) {
    double tr = 0.0;
    for (int r = 0; r < d; ++r)
      for (int m = 0; m < d; ++m) tr += f(o[0], r, m) * p(o[1], o[2], m, r);
    acc[0] += sign * tr;
  });
  CHECK(chain.top_trace().rho_coefficient(0) == doctest::Approx(oracle[0]).epsilon(1e-13));
}

TEST_CASE("wedge_contract rejects degrees beyond the dimension") {
  const FormMatrix two = FormMatrix::scalar_form(random_form(3, 2, 1));
  CHECK_THROWS_AS(wedge_contract(two, two), StructuralError);
}

TEST_CASE("permutation sums are reproducible for any worker count") {
  auto term = [](std::span<const int> o, double sign, std::span<double> acc) {
    double w = 1.0;
    for (std::size_t i = 0; i < o.size(); ++i) w += 0.1 * static_cast<double>(o[i] * (i + 1));
    acc[0] += sign * w * w;
    acc[1] += w;
  };
  const auto one = signed_permutation_sum(7, 2, term, 1);
  const auto many = signed_permutation_sum(7, 2, term, 4);
  CHECK(one == many);
  CHECK(factorial(7) == 5040.0);
}
