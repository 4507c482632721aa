#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sasaki {

enum class Variance : std::uint8_t { upper, lower };

// Components of a tensor at one point, stored row-major: the last slot varies fastest.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int dim, std::vector<Variance> variance);
  DenseTensor(int dim, std::vector<Variance> variance, std::vector<double> components);

  static DenseTensor scalar(double value, int dim);
  static DenseTensor lower(int dim, int rank);
  static DenseTensor upper(int dim, int rank);
  // delta_i^j with the lower slot first
  static DenseTensor kronecker(int dim);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  std::size_t size() const noexcept { return data_.size(); }
  const std::vector<Variance>& variance() const noexcept { return variance_; }
  Variance variance(int slot) const { return variance_.at(static_cast<std::size_t>(slot)); }

  std::span<const double> components() const noexcept { return data_; }
  std::span<double> components() noexcept { return data_; }

  std::size_t offset(std::span<const int> index) const;
  double& at(std::span<const int> index) { return data_[offset(index)]; }
  double at(std::span<const int> index) const { return data_[offset(index)]; }

  template <class... Index>
  double& operator()(Index... index) {
    const int idx[] = {static_cast<int>(index)...};
    return data_[offset(idx)];
  }
  template <class... Index>
  double operator()(Index... index) const {
    const int idx[] = {static_cast<int>(index)...};
    return data_[offset(idx)];
  }

  double value() const;  // rank 0 only
  double max_abs() const noexcept;
  bool same_shape(const DenseTensor& other) const noexcept;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator-=(const DenseTensor& other);
  DenseTensor& operator*=(double factor) noexcept;

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(DenseTensor a, double s) { return a *= s; }
  friend DenseTensor operator*(double s, DenseTensor a) { return a *= s; }
  friend DenseTensor operator-(DenseTensor a) { return a *= -1.0; }

 private:
  void require_same_shape(const DenseTensor& other, const char* op) const;

  int dim_ = 1;
  std::vector<Variance> variance_;
  std::vector<double> data_{0.0};
};

std::size_t power(int base, int exponent);

// Calls fn(index) for every multi-index of the given rank in row-major order.
template <class Fn>
void for_each_index(int dim, int rank, Fn&& fn) {
  std::vector<int> index(static_cast<std::size_t>(rank), 0);
  const std::size_t total = power(dim, rank);
  for (std::size_t n = 0; n < total; ++n) {
    fn(std::span<const int>(index));
    for (int s = rank - 1; s >= 0; --s) {
      if (++index[static_cast<std::size_t>(s)] < dim) break;
      index[static_cast<std::size_t>(s)] = 0;
    }
  }
}

DenseTensor tensor_product(const DenseTensor& a, const DenseTensor& b);

// Trace over one upper and one lower slot.
DenseTensor contract(const DenseTensor& a, int slot_a, int slot_b);

// contract(tensor_product(a, b), slot_a, a.rank() + slot_b) without forming the product.
DenseTensor contract_product(const DenseTensor& a, int slot_a, const DenseTensor& b, int slot_b);

// Reorders slots: result slot s is input slot order[s].
DenseTensor permute_slots(const DenseTensor& a, std::span<const int> order);

// (1/P!) sum over permutations of the listed slots, signed.
DenseTensor skew_symmetrize(const DenseTensor& a, std::span<const int> slots);
DenseTensor skew_symmetrize(const DenseTensor& a, std::initializer_list<int> slots);

// Full skew of the product of two forms: weight 1/(P+P')!.
DenseTensor wedge(const DenseTensor& a, const DenseTensor& b);

// Largest component of skew(a - b) over the slots.
double skew_difference(const DenseTensor& a, const DenseTensor& b, std::span<const int> slots);
bool mod_equivalent(const DenseTensor& a, const DenseTensor& b, std::span<const int> slots,
                    double tolerance);

// Raises a lower slot with inverse_metric or lowers an upper slot with metric.
DenseTensor raise_lower(const DenseTensor& a, int slot, const DenseTensor& metric,
                        const DenseTensor& inverse_metric);

// Largest antisymmetry defect among all slot pairs, relative to max_abs.
double antisymmetry_defect(const DenseTensor& a);

// Component [0,1,...,d-1] of the full skew of a rank-d covariant tensor.
double top_component(const DenseTensor& a);

}  // namespace sasaki
