#include "sasaki/rho_poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "sasaki/errors.hpp"

namespace sasaki {

RhoPolyTensor::RhoPolyTensor(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)) {}

RhoPolyTensor::RhoPolyTensor(const DenseTensor& constant)
    : dim_(constant.dim()), variance_(constant.variance()) {
  terms_.emplace(0, constant);
}

void RhoPolyTensor::check_degree(int degree) const {
  if (degree < 0 || degree % 2 != 0)
    throw StructuralError("rho-polynomial degree " + std::to_string(degree) +
                          " is not a non-negative even integer");
}

void RhoPolyTensor::add_term(int degree, const DenseTensor& coefficient) {
  check_degree(degree);
  if (coefficient.dim() != dim_ || coefficient.variance() != variance_)
    throw StructuralError("rho-polynomial coefficient has the wrong shape");
  auto [it, inserted] = terms_.try_emplace(degree, coefficient);
  if (!inserted) it->second += coefficient;
}

DenseTensor RhoPolyTensor::coefficient(int degree) const {
  check_degree(degree);
  auto it = terms_.find(degree);
  return it != terms_.end() ? it->second : DenseTensor(dim_, variance_);
}

int RhoPolyTensor::max_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

DenseTensor RhoPolyTensor::evaluate(double rho) const {
  DenseTensor out(dim_, variance_);
  for (const auto& [degree, coeff] : terms_) out += coeff * std::pow(rho, degree);
  return out;
}

double RhoPolyTensor::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& [degree, coeff] : terms_) m = std::max(m, coeff.max_abs());
  return m;
}

RhoPolyTensor& RhoPolyTensor::operator+=(const RhoPolyTensor& other) {
  for (const auto& [degree, coeff] : other.terms_) add_term(degree, coeff);
  return *this;
}

RhoPolyTensor& RhoPolyTensor::operator-=(const RhoPolyTensor& other) {
  for (const auto& [degree, coeff] : other.terms_) add_term(degree, -coeff);
  return *this;
}

RhoPolyTensor& RhoPolyTensor::operator*=(double factor) {
  for (auto& [degree, coeff] : terms_) coeff *= factor;
  return *this;
}

RhoPolyTensor tensor_product(const RhoPolyTensor& a, const RhoPolyTensor& b) {
  if (a.dim() != b.dim()) throw StructuralError("tensor_product: dimension mismatch");
  std::vector<Variance> variance = a.variance();
  variance.insert(variance.end(), b.variance().begin(), b.variance().end());
  RhoPolyTensor out(a.dim(), std::move(variance));
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) out.add_term(da + db, tensor_product(ca, cb));
  return out;
}

RhoPolyTensor contract_product(const RhoPolyTensor& a, int slot_a, const RhoPolyTensor& b,
                               int slot_b) {
  if (a.dim() != b.dim()) throw StructuralError("contract_product: dimension mismatch");
  if (slot_a < 0 || slot_a >= a.rank() || slot_b < 0 || slot_b >= b.rank())
    throw StructuralError("contract_product: slot out of range");
  if (a.variance()[slot_a] == b.variance()[slot_b])
    throw StructuralError("contraction requires one upper and one lower slot");
  std::vector<Variance> variance;
  for (int s = 0; s < a.rank(); ++s)
    if (s != slot_a) variance.push_back(a.variance()[s]);
  for (int s = 0; s < b.rank(); ++s)
    if (s != slot_b) variance.push_back(b.variance()[s]);
  RhoPolyTensor out(a.dim(), std::move(variance));
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms())
      out.add_term(da + db, contract_product(ca, slot_a, cb, slot_b));
  return out;
}

RhoPolyTensor skew_symmetrize(const RhoPolyTensor& a, std::span<const int> slots) {
  RhoPolyTensor out(a.dim(), a.variance());
  for (const auto& [degree, coeff] : a.terms()) out.add_term(degree, skew_symmetrize(coeff, slots));
  return out;
}

EvenPolynomial::EvenPolynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

EvenPolynomial EvenPolynomial::from_scalar(const RhoPolyTensor& rank0) {
  if (rank0.rank() != 0) throw StructuralError("from_scalar: rank-0 polynomial required");
  std::vector<double> c(rank0.max_degree() / 2 + 1, 0.0);
  for (const auto& [degree, coeff] : rank0.terms()) c[degree / 2] = coeff.value();
  return EvenPolynomial(std::move(c));
}

double EvenPolynomial::rho_coefficient(int degree) const noexcept {
  if (degree < 0 || degree % 2 != 0) return 0.0;
  const std::size_t n = static_cast<std::size_t>(degree / 2);
  return n < c_.size() ? c_[n] : 0.0;
}

double EvenPolynomial::evaluate(double rho) const noexcept {
  const double t = rho * rho;
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double EvenPolynomial::max_abs() const noexcept {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

EvenPolynomial operator*(const EvenPolynomial& a, const EvenPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return EvenPolynomial(std::move(c));
}

EvenPolynomial operator-(const EvenPolynomial& a, const EvenPolynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return EvenPolynomial(std::move(c));
}

EvenPolynomial operator*(double s, EvenPolynomial a) {
  for (double& x : a.c_) x *= s;
  return a;
}

EvenPolynomial binomial_power(double a, double b, int n) {
  EvenPolynomial out({1.0});
  for (int i = 0; i < n; ++i) out = out * EvenPolynomial({a, b});
  return out;
}

PolynomialDivision divide(const EvenPolynomial& numerator, const EvenPolynomial& divisor) {
  auto d = divisor.coefficients();
  std::size_t dn = d.size();
  while (dn > 0 && d[dn - 1] == 0.0) --dn;
  if (dn == 0) throw StructuralError("division by the zero polynomial");
  std::vector<double> rem(numerator.coefficients().begin(), numerator.coefficients().end());
  if (rem.size() < dn) return {EvenPolynomial({0.0}), numerator};
  std::vector<double> quot(rem.size() - dn + 1, 0.0);
  for (std::size_t q = quot.size(); q-- > 0;) {
    const double factor = rem[q + dn - 1] / d[dn - 1];
    quot[q] = factor;
    for (std::size_t j = 0; j < dn; ++j) rem[q + j] -= factor * d[j];
  }
  rem.resize(dn - 1);
  if (rem.empty()) rem.push_back(0.0);
  return {EvenPolynomial(std::move(quot)), EvenPolynomial(std::move(rem))};
}

EvenPolynomial vandermonde_fit(std::span<const double> rho, std::span<const double> values,
                               int rho_degree) {
  if (rho.size() != values.size()) throw StructuralError("vandermonde_fit: size mismatch");
  if (rho_degree < 0 || rho_degree % 2 != 0)
    throw StructuralError("vandermonde_fit: degree must be even");
  const int cols = rho_degree / 2 + 1;
  if (static_cast<int>(rho.size()) < cols)
    throw StructuralError("vandermonde_fit: not enough samples for the requested degree");
  Eigen::MatrixXd v(rho.size(), cols);
  Eigen::VectorXd y(rho.size());
  for (std::size_t r = 0; r < rho.size(); ++r) {
    const double t = rho[r] * rho[r];
    double p = 1.0;
    for (int c = 0; c < cols; ++c, p *= t) v(static_cast<Eigen::Index>(r), c) = p;
    y(static_cast<Eigen::Index>(r)) = values[r];
  }
  const Eigen::VectorXd sol = v.colPivHouseholderQr().solve(y);
  return EvenPolynomial(std::vector<double>(sol.data(), sol.data() + sol.size()));
}

}  // namespace sasaki
