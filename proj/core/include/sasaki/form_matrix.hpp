#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sasaki/rho_poly.hpp"

namespace sasaki {

using Blade = std::uint32_t;

Blade blade_of(std::span<const int> sorted_indices);
std::vector<int> blade_indices(Blade blade);
// Sign of sorting the concatenation (indices of a, then indices of b); a and b disjoint.
int shuffle_sign(Blade a, Blade b);

// Exterior form with values in (1,1)-tensors: one matrix M_I^row_col per increasing index set I.
// Matrix entries are polynomials in rho. Components follow the skew convention with weight 1/P!,
// so the blade value equals the component at the sorted indices.
class FormMatrix {
 public:
  FormMatrix(int dim, int degree);

  // Form slots are the first `degree` slots of t; row_slot must be upper and col_slot lower.
  static FormMatrix from_tensor(const RhoPolyTensor& t, int degree, int row_slot, int col_slot);
  // A scalar form times the identity matrix.
  static FormMatrix scalar_form(const DenseTensor& form);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::map<Blade, RhoPolyTensor>& blades() const noexcept { return blades_; }
  const RhoPolyTensor* find(Blade blade) const;
  void add(Blade blade, const RhoPolyTensor& matrix);

  double max_abs() const noexcept;
  FormMatrix evaluate(double rho) const;

  // Trace of the single component of a top-degree form.
  EvenPolynomial top_trace() const;

  FormMatrix& operator+=(const FormMatrix& other);
  FormMatrix& operator*=(double factor);
  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator-(FormMatrix a, const FormMatrix& b) { return a += b * -1.0; }
  friend FormMatrix operator*(FormMatrix a, double s) { return a *= s; }

 private:
  int dim_;
  int degree_;
  std::map<Blade, RhoPolyTensor> blades_;
};

// (A wedge B)_{I J} = skew over I,J of A_I^a_m B_J^m_b, i.e. the product with the inner matrix
// index contracted.
FormMatrix wedge_contract(const FormMatrix& a, const FormMatrix& b);
FormMatrix wedge_contract_chain(std::span<const FormMatrix> factors);

double max_abs_difference(const FormMatrix& a, const FormMatrix& b);

}  // namespace sasaki
