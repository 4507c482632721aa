#include "sasaki/permutations.hpp"

#include <algorithm>
#include <numeric>

#include "sasaki/errors.hpp"
#include "sasaki/parallel.hpp"

namespace sasaki {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int permutation_sign(std::span<const int> order) {
  int inversions = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

std::vector<SignedPermutation> signed_permutations(int n) {
  if (n < 0 || n > 10) throw StructuralError("signed_permutations: unsupported size");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<SignedPermutation> out;
  do {
    out.push_back({order, permutation_sign(order)});
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<double> signed_permutation_sum(int d, int width, const PermutationTerm& term,
                                           int workers) {
  if (d < 1 || d > 12) throw StructuralError("signed_permutation_sum: unsupported size");
  std::vector<std::vector<double>> partial(d, std::vector<double>(width, 0.0));
  parallel_for(
      static_cast<std::size_t>(d),
      [&](std::size_t lead) {
        std::vector<int> order(d);
        order[0] = static_cast<int>(lead);
        int fill = 1;
        for (int v = 0; v < d; ++v)
          if (v != static_cast<int>(lead)) order[fill++] = v;
        auto& acc = partial[lead];
        do {
          term(order, permutation_sign(order), acc);
        } while (std::next_permutation(order.begin() + 1, order.end()));
      },
      workers);
  std::vector<double> total(width, 0.0);
  for (const auto& chunk : partial)
    for (int w = 0; w < width; ++w) total[w] += chunk[w];
  const double norm = 1.0 / factorial(d);
  for (double& x : total) x *= norm;
  return total;
}

}  // namespace sasaki
