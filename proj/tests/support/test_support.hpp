#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sasaki/models.hpp"
#include "sasaki/sasakian.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki::testing {

// Components uniform in [-1, 1) from a seeded engine.
inline DenseTensor random_tensor(int dim, std::vector<Variance> variance, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseTensor t(dim, std::move(variance));
  for (double& x : t.components()) x = dist(engine);
  return t;
}

inline DenseTensor random_form(int dim, int degree, std::uint64_t seed) {
  std::vector<int> slots(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) slots[static_cast<std::size_t>(i)] = i;
  return skew_symmetrize(
      random_tensor(dim, std::vector<Variance>(static_cast<std::size_t>(degree), Variance::lower), seed),
      slots);
}

// Random symmetric positive definite metric: A A^T + dim * identity.
inline DenseTensor random_metric(int dim, std::uint64_t seed) {
  const DenseTensor a = random_tensor(dim, {Variance::lower, Variance::lower}, seed);
  DenseTensor g(dim, {Variance::lower, Variance::lower});
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = i == j ? dim : 0.0;
      for (int m = 0; m < dim; ++m) s += a(i, m) * a(j, m);
      g(i, j) = s;
    }
  return g;
}

struct ModelPoint {
  ModelSpec spec;
  Chart chart;
  Point point;
  SasakianPointData data;
  DenseTensor riemann;
};

inline ModelPoint model_point(ModelKind kind, int k, int index, int samples = 6) {
  ModelSpec spec{kind, k, samples, 42};
  Chart chart = make_chart(spec);
  Point p = sample_points(spec).at(static_cast<std::size_t>(index));
  SasakianPointData data = point_data(chart, p);
  DenseTensor r = *riemann(chart, p).riemann;
  return {spec, std::move(chart), std::move(p), std::move(data), std::move(r)};
}

inline double max_abs_diff(const DenseTensor& a, const DenseTensor& b) { return (a - b).max_abs(); }

}  // namespace sasaki::testing
