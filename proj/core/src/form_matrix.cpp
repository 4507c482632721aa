#include "sasaki/form_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sasaki/errors.hpp"
#include "sasaki/permutations.hpp"

namespace sasaki {

Blade blade_of(std::span<const int> sorted_indices) {
  Blade b = 0;
  for (int i : sorted_indices) {
    if (i < 0 || i >= 32) throw StructuralError("blade index out of range");
    b |= Blade{1} << i;
  }
  return b;
}

std::vector<int> blade_indices(Blade blade) {
  std::vector<int> out;
  for (int i = 0; blade; ++i, blade >>= 1)
    if (blade & 1u) out.push_back(i);
  return out;
}

int shuffle_sign(Blade a, Blade b) {
  int crossings = 0;
  for (Blade rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const Blade above = j >= 31 ? 0 : ~((Blade{2} << j) - 1);
    crossings += std::popcount(a & above);
  }
  return crossings % 2 ? -1 : 1;
}

FormMatrix::FormMatrix(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > 31) throw StructuralError("form dimension out of range");
  if (degree < 0 || degree > dim) throw StructuralError("form degree out of range");
}

namespace {

std::vector<Blade> blades_of_degree(int dim, int degree) {
  std::vector<Blade> out;
  for (Blade b = 0; b < (Blade{1} << dim); ++b)
    if (std::popcount(b) == degree) out.push_back(b);
  return out;
}

const std::vector<Variance> kMatrixVariance{Variance::upper, Variance::lower};

}  // namespace

FormMatrix FormMatrix::from_tensor(const RhoPolyTensor& t, int degree, int row_slot, int col_slot) {
  if (t.rank() != degree + 2) throw StructuralError("from_tensor: rank must be degree + 2");
  if (row_slot < degree || col_slot < degree || row_slot == col_slot)
    throw StructuralError("from_tensor: matrix slots must follow the form slots");
  for (int s = 0; s < degree; ++s)
    if (t.variance()[s] != Variance::lower) throw StructuralError("from_tensor: form slots must be covariant");
  if (t.variance()[row_slot] != Variance::upper || t.variance()[col_slot] != Variance::lower)
    throw StructuralError("from_tensor: matrix row must be upper and column lower");
  const int dim = t.dim();
  FormMatrix out(dim, degree);
  const auto perms = signed_permutations(degree);
  const double norm = 1.0 / factorial(degree);
  std::vector<int> idx(degree + 2);
  for (Blade blade : blades_of_degree(dim, degree)) {
    const auto sorted = blade_indices(blade);
    RhoPolyTensor matrix(dim, kMatrixVariance);
    for (const auto& [power, coeff] : t.terms()) {
      DenseTensor m(dim, kMatrixVariance);
      for (const auto& perm : perms) {
        for (int s = 0; s < degree; ++s) idx[s] = sorted[perm.order[s]];
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c) {
            idx[row_slot] = r;
            idx[col_slot] = c;
            m(r, c) += perm.sign * coeff.at(idx);
          }
      }
      if (m.max_abs() > 0.0) matrix.add_term(power, m * norm);
    }
    if (!matrix.terms().empty()) out.blades_.emplace(blade, std::move(matrix));
  }
  return out;
}

FormMatrix FormMatrix::scalar_form(const DenseTensor& form) {
  const int degree = form.rank();
  for (Variance v : form.variance())
    if (v != Variance::lower) throw StructuralError("scalar_form: covariant form required");
  const int dim = form.dim();
  FormMatrix out(dim, degree);
  const auto perms = signed_permutations(degree);
  const double norm = 1.0 / factorial(degree);
  std::vector<int> idx(degree);
  for (Blade blade : blades_of_degree(dim, degree)) {
    const auto sorted = blade_indices(blade);
    double value = 0.0;
    for (const auto& perm : perms) {
      for (int s = 0; s < degree; ++s) idx[s] = sorted[perm.order[s]];
      value += perm.sign * form.at(idx);
    }
    if (value == 0.0) continue;
    DenseTensor m(dim, kMatrixVariance);
    for (int r = 0; r < dim; ++r) m(r, r) = value * norm;
    out.blades_.emplace(blade, RhoPolyTensor(m));
  }
  return out;
}

const RhoPolyTensor* FormMatrix::find(Blade blade) const {
  auto it = blades_.find(blade);
  return it == blades_.end() ? nullptr : &it->second;
}

void FormMatrix::add(Blade blade, const RhoPolyTensor& matrix) {
  if (std::popcount(blade) != degree_ || blade >= (Blade{1} << dim_))
    throw StructuralError("blade does not match the form degree");
  if (matrix.dim() != dim_ || matrix.variance() != kMatrixVariance)
    throw StructuralError("form values must be (1,1)-tensors of the form dimension");
  auto [it, inserted] = blades_.try_emplace(blade, matrix);
  if (!inserted) it->second += matrix;
}

double FormMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& [blade, matrix] : blades_) m = std::max(m, matrix.max_abs());
  return m;
}

FormMatrix FormMatrix::evaluate(double rho) const {
  FormMatrix out(dim_, degree_);
  for (const auto& [blade, matrix] : blades_)
    out.blades_.emplace(blade, RhoPolyTensor(matrix.evaluate(rho)));
  return out;
}

EvenPolynomial FormMatrix::top_trace() const {
  if (degree_ != dim_) throw StructuralError("top_trace: form is not of top degree");
  auto it = blades_.find((Blade{1} << dim_) - 1);
  if (it == blades_.end()) return EvenPolynomial({0.0});
  std::vector<double> c(it->second.max_degree() / 2 + 1, 0.0);
  for (const auto& [power, m] : it->second.terms()) {
    double tr = 0.0;
    for (int i = 0; i < dim_; ++i) tr += m(i, i);
    c[power / 2] = tr;
  }
  return EvenPolynomial(std::move(c));
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_)
    throw StructuralError("adding forms of different dimension or degree");
  for (const auto& [blade, matrix] : other.blades_) add(blade, matrix);
  return *this;
}

FormMatrix& FormMatrix::operator*=(double factor) {
  for (auto& [blade, matrix] : blades_) matrix *= factor;
  return *this;
}

FormMatrix wedge_contract(const FormMatrix& a, const FormMatrix& b) {
  if (a.dim() != b.dim()) throw StructuralError("wedge_contract: dimension mismatch");
  const int p = a.degree();
  const int q = b.degree();
  if (p + q > a.dim()) throw StructuralError("wedge_contract: degree exceeds dimension");
  FormMatrix out(a.dim(), p + q);
  const double norm = factorial(p) * factorial(q) / factorial(p + q);
  for (const auto& [ba, ma] : a.blades())
    for (const auto& [bb, mb] : b.blades()) {
      if (ba & bb) continue;
      RhoPolyTensor prod = contract_product(ma, 1, mb, 0);
      prod *= norm * shuffle_sign(ba, bb);
      out.add(ba | bb, prod);
    }
  return out;
}

FormMatrix wedge_contract_chain(std::span<const FormMatrix> factors) {
  if (factors.empty()) throw StructuralError("wedge_contract_chain: no factors");
  FormMatrix acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = wedge_contract(acc, factors[i]);
  return acc;
}

double max_abs_difference(const FormMatrix& a, const FormMatrix& b) {
  return (a - b).max_abs();
}

}  // namespace sasaki
