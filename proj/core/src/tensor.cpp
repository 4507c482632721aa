#include "sasaki/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/linalg.hpp"
#include "sasaki/permutations.hpp"

namespace sasaki {

std::size_t power(int base, int exponent) {
  std::size_t result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

namespace {

constexpr std::size_t kMaxComponents = std::size_t{1} << 28;

std::size_t checked_size(int dim, int rank) {
  if (dim < 1) throw StructuralError("tensor dimension must be positive");
  double estimate = std::pow(static_cast<double>(dim), rank);
  if (estimate > static_cast<double>(kMaxComponents))
    throw StructuralError("tensor of rank " + std::to_string(rank) + " in dimension " +
                          std::to_string(dim) + " is too large to store densely");
  return power(dim, rank);
}

void check_slot(const DenseTensor& a, int slot, const char* op) {
  if (slot < 0 || slot >= a.rank())
    throw StructuralError(std::string(op) + ": slot " + std::to_string(slot) +
                          " out of range for rank " + std::to_string(a.rank()));
}

std::vector<std::size_t> strides_of(int dim, int rank) {
  std::vector<std::size_t> strides(rank, 1);
  for (int s = rank - 2; s >= 0; --s)
    strides[s] =
        strides[s + 1] * dim;
  return strides;
}

}  // namespace

DenseTensor::DenseTensor(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)) {
  data_.assign(checked_size(dim_, rank()), 0.0);
}

DenseTensor::DenseTensor(int dim, std::vector<Variance> variance, std::vector<double> components)
    : dim_(dim), variance_(std::move(variance)), data_(std::move(components)) {
  if (data_.size() != checked_size(dim_, rank()))
    throw StructuralError("component count " + std::to_string(data_.size()) +
                          " does not match dim^rank");
  if (!std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); }))
    throw StructuralError("tensor components must be finite");
}

DenseTensor DenseTensor::scalar(double value, int dim) { return {dim, {}, {value}}; }

DenseTensor DenseTensor::lower(int dim, int rank) {
  return {dim, std::vector<Variance>(rank, Variance::lower)};
}

DenseTensor DenseTensor::upper(int dim, int rank) {
  return {dim, std::vector<Variance>(rank, Variance::upper)};
}

DenseTensor DenseTensor::kronecker(int dim) {
  DenseTensor delta(dim, {Variance::lower, Variance::upper});
  for (int i = 0; i < dim; ++i) delta(i, i) = 1.0;
  return delta;
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank())
    throw StructuralError("index of length " + std::to_string(index.size()) +
                          " used on rank " + std::to_string(rank()) + " tensor");
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw StructuralError("component index out of range");
    off = off * dim_ + i;
  }
  return off;
}

double DenseTensor::value() const {
  if (rank() != 0) throw StructuralError("value() requires a rank-0 tensor");
  return data_[0];
}

double DenseTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool DenseTensor::same_shape(const DenseTensor& other) const noexcept {
  return dim_ == other.dim_ && variance_ == other.variance_;
}

void DenseTensor::require_same_shape(const DenseTensor& other, const char* op) const {
  if (!same_shape(other))
    throw StructuralError(std::string(op) + ": tensors differ in dimension or variance");
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  require_same_shape(other, "addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
  require_same_shape(other, "subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double factor) noexcept {
  for (double& x : data_) x *= factor;
  return *this;
}

DenseTensor tensor_product(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim() != b.dim()) throw StructuralError("tensor_product: dimension mismatch");
  std::vector<Variance> variance = a.variance();
  variance.insert(variance.end(), b.variance().begin(), b.variance().end());
  DenseTensor out(a.dim(), std::move(variance));
  auto ac = a.components();
  auto bc = b.components();
  auto oc = out.components();
  std::size_t n = 0;
  for (double x : ac)
    for (double y : bc) oc[n++] = x * y;
  return out;
}

DenseTensor permute_slots(const DenseTensor& a, std::span<const int> order) {
  const int rank = a.rank();
  if (static_cast<int>(order.size()) != rank)
    throw StructuralError("permute_slots: order length must equal rank");
  std::vector<int> seen(rank, 0);
  std::vector<Variance> variance(rank);
  for (int s = 0; s < rank; ++s) {
    check_slot(a, order[s], "permute_slots");
    if (seen[order[s]]++)
      throw StructuralError("permute_slots: repeated slot");
    variance[s] = a.variance(order[s]);
  }
  DenseTensor out(a.dim(), std::move(variance));
  const auto in_strides = strides_of(a.dim(), rank);
  std::vector<std::size_t> strides(rank);
  for (int s = 0; s < rank; ++s)
    strides[s] =
        in_strides[order[s]];
  auto ac = a.components();
  auto oc = out.components();
  std::size_t n = 0;
  for_each_index(a.dim(), rank, [&](std::span<const int> idx) {
    std::size_t off = 0;
    for (int s = 0; s < rank; ++s)
      off += strides[s] * idx[s];
    oc[n++] = ac[off];
  });
  return out;
}

DenseTensor contract_product(const DenseTensor& a, int slot_a, const DenseTensor& b, int slot_b) {
  if (a.dim() != b.dim()) throw StructuralError("contract_product: dimension mismatch");
  check_slot(a, slot_a, "contract_product");
  check_slot(b, slot_b, "contract_product");
  if (a.variance(slot_a) == b.variance(slot_b))
    throw StructuralError("contraction requires one upper and one lower slot");
  const int dim = a.dim();
  // move the contracted slot of a to the back and that of b to the front, then multiply
  std::vector<int> order_a;
  for (int s = 0; s < a.rank(); ++s)
    if (s != slot_a) order_a.push_back(s);
  order_a.push_back(slot_a);
  std::vector<int> order_b{slot_b};
  for (int s = 0; s < b.rank(); ++s)
    if (s != slot_b) order_b.push_back(s);
  const DenseTensor pa = slot_a == a.rank() - 1 ? a : permute_slots(a, order_a);
  const DenseTensor pb = slot_b == 0 ? b : permute_slots(b, order_b);

  std::vector<Variance> variance(pa.variance().begin(), pa.variance().end() - 1);
  variance.insert(variance.end(), pb.variance().begin() + 1, pb.variance().end());
  DenseTensor out(dim, std::move(variance));
  const std::size_t rows = pa.size() / dim;
  const std::size_t cols = pb.size() / dim;
  auto ac = pa.components();
  auto bc = pb.components();
  auto oc = out.components();
  for (std::size_t r = 0; r < rows; ++r) {
    double* orow = oc.data() + r * cols;
    for (int m = 0; m < dim; ++m) {
      const double x = ac[r * dim + m];
      if (x == 0.0) continue;
      const double* brow = bc.data() + m * cols;
      for (std::size_t c = 0; c < cols; ++c) orow[c] += x * brow[c];
    }
  }
  return out;
}

DenseTensor contract(const DenseTensor& a, int slot_a, int slot_b) {
  check_slot(a, slot_a, "contract");
  check_slot(a, slot_b, "contract");
  if (slot_a == slot_b) throw StructuralError("contract: slots must differ");
  if (a.variance(slot_a) == a.variance(slot_b))
    throw StructuralError("contraction requires one upper and one lower slot");
  std::vector<Variance> variance;
  for (int s = 0; s < a.rank(); ++s)
    if (s != slot_a && s != slot_b) variance.push_back(a.variance(s));
  DenseTensor out(a.dim(), variance);
  const auto strides = strides_of(a.dim(), a.rank());
  const std::size_t diag = strides[slot_a] +
                           strides[slot_b];
  auto ac = a.components();
  auto oc = out.components();
  std::size_t n = 0;
  const int rest = a.rank() - 2;
  for_each_index(a.dim(), rest, [&](std::span<const int> idx) {
    std::size_t base = 0;
    int k = 0;
    for (int s = 0; s < a.rank(); ++s) {
      if (s == slot_a || s == slot_b) continue;
      base += strides[s] * (idx[k++]);
    }
    double sum = 0.0;
    for (int m = 0; m < a.dim(); ++m) sum += ac[base + diag * m];
    oc[n++] = sum;
  });
  return out;
}

DenseTensor skew_symmetrize(const DenseTensor& a, std::span<const int> slots) {
  const int p = static_cast<int>(slots.size());
  std::vector<int> seen(a.rank(), 0);
  for (int s : slots) {
    check_slot(a, s, "skew_symmetrize");
    if (seen[s]++) throw StructuralError("skew_symmetrize: repeated slot");
    if (a.variance(s) != a.variance(slots[0]))
      throw StructuralError("skew_symmetrize: slots of mixed variance");
  }
  if (p < 2) return a;
  const auto perms = signed_permutations(p);
  const double norm = 1.0 / factorial(p);
  const auto strides = strides_of(a.dim(), a.rank());
  DenseTensor out(a.dim(), a.variance());
  auto ac = a.components();
  auto oc = out.components();
  std::size_t n = 0;
  for_each_index(a.dim(), a.rank(), [&](std::span<const int> idx) {
    std::size_t base = 0;
    for (int s = 0; s < a.rank(); ++s)
      if (!seen[s])
        base += strides[s] * idx[s];
    double sum = 0.0;
    for (const auto& perm : perms) {
      std::size_t off = base;
      for (int q = 0; q < p; ++q)
        off += strides[slots[q]] *
               idx[slots[perm.order[q]]];
      sum += perm.sign * ac[off];
    }
    oc[n++] = sum * norm;
  });
  return out;
}

DenseTensor skew_symmetrize(const DenseTensor& a, std::initializer_list<int> slots) {
  return skew_symmetrize(a, std::span<const int>(slots.begin(), slots.size()));
}

double antisymmetry_defect(const DenseTensor& a) {
  double worst = 0.0;
  for (int s = 0; s < a.rank(); ++s)
    for (int t = s + 1; t < a.rank(); ++t) {
      std::vector<int> order(a.rank());
      std::iota(order.begin(), order.end(), 0);
      std::swap(order[s], order[t]);
      const DenseTensor swapped = permute_slots(a, order);
      worst = std::max(worst, (a + swapped).max_abs());
    }
  const double scale = a.max_abs();
  return scale > 0.0 ? worst / scale : 0.0;
}

DenseTensor wedge(const DenseTensor& a, const DenseTensor& b) {
  for (const DenseTensor* t : {&a, &b}) {
    for (Variance v : t->variance())
      if (v != Variance::lower) throw StructuralError("wedge: inputs must be covariant forms");
    if (antisymmetry_defect(*t) > 1e-12) throw StructuralError("wedge: input is not a form");
  }
  const DenseTensor prod = tensor_product(a, b);
  std::vector<int> slots(prod.rank());
  std::iota(slots.begin(), slots.end(), 0);
  return skew_symmetrize(prod, slots);
}

double skew_difference(const DenseTensor& a, const DenseTensor& b, std::span<const int> slots) {
  if (!a.same_shape(b)) throw StructuralError("mod_equivalent: shapes differ");
  return skew_symmetrize(a - b, slots).max_abs();
}

bool mod_equivalent(const DenseTensor& a, const DenseTensor& b, std::span<const int> slots,
                    double tolerance) {
  return skew_difference(a, b, slots) <= tolerance;
}

DenseTensor raise_lower(const DenseTensor& a, int slot, const DenseTensor& metric,
                        const DenseTensor& inverse_metric) {
  check_slot(a, slot, "raise_lower");
  for (const DenseTensor* m : {&metric, &inverse_metric})
    if (m->rank() != 2 || m->dim() != a.dim())
      throw StructuralError("raise_lower: metric must be a rank-2 tensor of matching dimension");
  if (metric.variance(0) != Variance::lower || metric.variance(1) != Variance::lower ||
      inverse_metric.variance(0) != Variance::upper || inverse_metric.variance(1) != Variance::upper)
    throw StructuralError("raise_lower: metric must be covariant and its inverse contravariant");
  require_positive_definite(metric);
  const bool raising = a.variance(slot) == Variance::lower;
  const DenseTensor& m = raising ? inverse_metric : metric;
  // contract the slot with the first index of the (symmetric) metric, then move the new slot
  // back into place
  DenseTensor moved = contract_product(a, slot, m, 0);
  std::vector<int> order;
  for (int s = 0; s < a.rank(); ++s) {
    if (s == slot) order.push_back(a.rank() - 1);
    else order.push_back(s < slot ? s : s - 1);
  }
  return permute_slots(moved, order);
}

double top_component(const DenseTensor& a) {
  if (a.rank() != a.dim()) throw StructuralError("top_component: rank must equal dimension");
  for (Variance v : a.variance())
    if (v != Variance::lower) throw StructuralError("top_component: covariant tensor required");
  const int d = a.dim();
  const auto strides = strides_of(d, d);
  auto ac = a.components();
  const auto sum = signed_permutation_sum(
      d, 1, [&](std::span<const int> order, double sign, std::span<double> acc) {
        std::size_t off = 0;
        for (int s = 0; s < d; ++s)
          off += strides[s] * order[s];
        acc[0] += sign * ac[off];
      });
  return sum[0];
}

}  // namespace sasaki
