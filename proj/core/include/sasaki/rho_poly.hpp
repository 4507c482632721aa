#pragma once

#include <map>
#include <span>
#include <vector>

#include "sasaki/tensor.hpp"

namespace sasaki {

// Polynomial in rho with tensor coefficients. Only even powers occur in the deformation, so an
// odd power is rejected as a structural error.
class RhoPolyTensor {
 public:
  RhoPolyTensor(int dim, std::vector<Variance> variance);
  explicit RhoPolyTensor(const DenseTensor& constant);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const noexcept { return variance_; }
  const std::map<int, DenseTensor>& terms() const noexcept { return terms_; }

  void add_term(int degree, const DenseTensor& coefficient);
  DenseTensor coefficient(int degree) const;
  int max_degree() const noexcept;
  DenseTensor evaluate(double rho) const;
  double max_abs() const noexcept;

  RhoPolyTensor& operator+=(const RhoPolyTensor& other);
  RhoPolyTensor& operator-=(const RhoPolyTensor& other);
  RhoPolyTensor& operator*=(double factor);
  friend RhoPolyTensor operator+(RhoPolyTensor a, const RhoPolyTensor& b) { return a += b; }
  friend RhoPolyTensor operator-(RhoPolyTensor a, const RhoPolyTensor& b) { return a -= b; }
  friend RhoPolyTensor operator*(RhoPolyTensor a, double s) { return a *= s; }
  friend RhoPolyTensor operator*(double s, RhoPolyTensor a) { return a *= s; }

 private:
  void check_degree(int degree) const;

  int dim_;
  std::vector<Variance> variance_;
  std::map<int, DenseTensor> terms_;
};

RhoPolyTensor tensor_product(const RhoPolyTensor& a, const RhoPolyTensor& b);
RhoPolyTensor contract_product(const RhoPolyTensor& a, int slot_a, const RhoPolyTensor& b,
                               int slot_b);
RhoPolyTensor skew_symmetrize(const RhoPolyTensor& a, std::span<const int> slots);

// Scalar polynomial in rho with even powers only; entry n multiplies rho^(2n).
class EvenPolynomial {
 public:
  EvenPolynomial() = default;
  explicit EvenPolynomial(std::vector<double> coefficients);
  static EvenPolynomial from_scalar(const RhoPolyTensor& rank0);

  std::span<const double> coefficients() const noexcept { return c_; }
  // Coefficient of rho^degree; zero for odd or out-of-range degrees.
  double rho_coefficient(int degree) const noexcept;
  int rho_degree() const noexcept { return c_.empty() ? 0 : 2 * (static_cast<int>(c_.size()) - 1); }
  double evaluate(double rho) const noexcept;
  double max_abs() const noexcept;

  friend EvenPolynomial operator*(const EvenPolynomial& a, const EvenPolynomial& b);
  friend EvenPolynomial operator-(const EvenPolynomial& a, const EvenPolynomial& b);
  friend EvenPolynomial operator*(double s, EvenPolynomial a);

 private:
  std::vector<double> c_;
};

// (a + b rho^2)^n
EvenPolynomial binomial_power(double a, double b, int n);

struct PolynomialDivision {
  EvenPolynomial quotient;
  EvenPolynomial remainder;
};

// Synthetic division in the variable rho^2.
PolynomialDivision divide(const EvenPolynomial& numerator, const EvenPolynomial& divisor);

// Least-squares fit of an even polynomial of the given rho-degree through samples.
EvenPolynomial vandermonde_fit(std::span<const double> rho, std::span<const double> values,
                               int rho_degree);

}  // namespace sasaki
