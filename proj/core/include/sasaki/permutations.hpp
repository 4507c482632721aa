#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sasaki {

struct SignedPermutation {
  std::vector<int> order;
  int sign = 1;
};

double factorial(int n);
int permutation_sign(std::span<const int> order);

// All permutations of {0..n-1} in lexicographic order.
std::vector<SignedPermutation> signed_permutations(int n);

// Accumulates sign * term(order) into `width` outputs for every permutation of {0..d-1} and
// divides by d!. Work is split into chunks by leading element and reduced in chunk order, so
// the result is bitwise reproducible for any worker count.
using PermutationTerm = std::function<void(std::span<const int> order, double sign,
                                           std::span<double> accumulator)>;
std::vector<double> signed_permutation_sum(int d, int width, const PermutationTerm& term,
                                           int workers = 0);

}  // namespace sasaki
