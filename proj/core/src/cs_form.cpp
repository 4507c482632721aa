#include "sasaki/cs_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/lemmas.hpp"
#include "sasaki/permutations.hpp"

namespace sasaki {

namespace {

const std::vector<Variance> kCurvature{Variance::lower, Variance::lower, Variance::lower,
                                       Variance::upper};

// Sum of |c_n| rho^n, the natural size of a polynomial value at rho.
double magnitude_at(const EvenPolynomial& p, double rho) {
  double total = 0.0;
  double power = 1.0;
  for (double c : p.coefficients()) {
    total += std::abs(c) * power;
    power *= rho * rho;
  }
  return total;
}

double max_coefficient_except(const EvenPolynomial& p, int degree) {
  double m = 0.0;
  for (int n = 0; n <= p.rho_degree(); n += 2)
    if (n != degree) m = std::max(m, std::abs(p.rho_coefficient(n)));
  return m;
}

// (1 + rho^2)^2 times a rank-3 tensor, as a polynomial.
RhoPolyTensor times_deformation_square(const DenseTensor& t) {
  RhoPolyTensor out(t.dim(), t.variance());
  out.add_term(0, t);
  out.add_term(2, 2.0 * t);
  out.add_term(4, t);
  return out;
}

FormMatrix pair_from_dense(const DenseTensor& r) { return pair_chain_factor(RhoPolyTensor(r)); }

}  // namespace

void require_cs_dimension(const SasakianPointData& data, int k) {
  if (k < 1) throw StructuralError("the curvature chain needs k >= 1");
  if (data.dim() != 4 * k + 1)
    throw StructuralError("the curvature chain regroups into a top form only in dimension 4k+1 (got " +
                          std::to_string(data.dim()) + " for k = " + std::to_string(k) + ")");
}

FormMatrix first_chain_factor(const RhoPolyTensor& contracted) {
  return FormMatrix::from_tensor(contracted, 1, 2, 1);
}

FormMatrix pair_chain_factor(const RhoPolyTensor& r_bar) {
  return FormMatrix::from_tensor(r_bar, 2, 3, 2);
}

EvenPolynomial chain_top_trace(const FormMatrix& first, const FormMatrix& pair, int k) {
  FormMatrix acc = first;
  for (int n = 0; n < 2 * k; ++n) acc = wedge_contract(acc, pair);
  return acc.top_trace();
}

RhoPolyTensor build_K(const DeformedCurvature& r_bar, const SasakianPointData& data, int k) {
  require_cs_dimension(data, k);
  const int d = data.dim();
  if (power(d, 4 * k + 4) > 20'000'000)
    throw StructuralError("build_K: dense chain too large; use the form-valued path");
  std::vector<std::pair<int, DenseTensor>> terms(r_bar.r_bar.terms().begin(),
                                                 r_bar.r_bar.terms().end());
  const int factors = 2 * k + 1;
  RhoPolyTensor out(d, std::vector<Variance>(static_cast<std::size_t>(4 * k + 2), Variance::lower));
  // Expand the product over the rho-degree of every factor.
  std::vector<std::size_t> choice(static_cast<std::size_t>(factors), 0);
  while (true) {
    int degree = terms[choice[0]].first;
    std::vector<DenseTensor> pairs;
    for (int f = 1; f < factors; ++f) {
      degree += terms[choice[f]].first;
      pairs.push_back(terms[choice[f]].second);
    }
    out.add_term(degree, dense_chain(terms[choice[0]].second, pairs));
    int f = 0;
    while (f < factors && ++choice[f] == terms.size()) choice[f++] = 0;
    if (f == factors) break;
  }
  return out;
}

CSIntegrandResult pullback_cs_component(const DeformedCurvature& r_bar,
                                        const SasakianPointData& data, int k) {
  require_cs_dimension(data, k);
  const int d = data.dim();
  CSIntegrandResult res;
  res.model.k = k;
  res.point = data.point;

  const FormMatrix pair = pair_chain_factor(r_bar.r_bar);
  const RhoPolyTensor contracted = xi_curvature_contraction(r_bar.r_bar, data);
  res.poly = chain_top_trace(first_chain_factor(contracted), pair, k);

  // The two halves of -(1+rho^2)^2 (eta_a delta_j^h - eta_j delta_a^h).
  DenseTensor k1(d, {Variance::lower, Variance::lower, Variance::upper});
  DenseTensor k2 = k1;
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j) {
      k1(a, j, j) -= data.eta(a);
      k2(a, j, a) += data.eta(j);
    }
  res.trace_k1 = chain_top_trace(first_chain_factor(times_deformation_square(k1)), pair, k);
  res.trace_k2 = chain_top_trace(first_chain_factor(times_deformation_square(k2)), pair, k);

  res.volume_component = contact_volume_component(data.eta, -data.phi_lower);
  const auto division = divide(res.poly, binomial_power(1.0, 1.0, 2));
  res.factored = division.quotient;
  res.remainder = division.remainder;
  return res;
}

double pullback_component_by_permutations(const DenseTensor& r_bar_at_rho,
                                          const SasakianPointData& data, int k, int workers) {
  require_cs_dimension(data, k);
  const int d = data.dim();
  const DenseTensor contracted = xi_curvature_contraction(r_bar_at_rho, data);
  // first[a](h, j) = (R-bar xi)_{a j}^h ; pair[a][b](h, i) = R-bar_{a b i}^h
  std::vector<Eigen::MatrixXd> first(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  std::vector<Eigen::MatrixXd> pair(static_cast<std::size_t>(d * d), Eigen::MatrixXd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int h = 0; h < d; ++h)
      for (int j = 0; j < d; ++j) {
        first[a](h, j) = contracted(a, j, h);
        for (int b = 0; b < d; ++b) pair[a * d + b](h, j) = r_bar_at_rho(a, b, j, h);
      }
  const auto sum = signed_permutation_sum(
      d, 1,
      [&](std::span<const int> order, double sign, std::span<double> acc) {
        Eigen::MatrixXd m = first[order[0]];
        for (int n = 1; n < d; n += 2) m = m * pair[order[n] * d + order[n + 1]];
        acc[0] += sign * m.trace();
      },
      workers);
  return sum[0];
}

std::vector<double> pullback_component_samples(const DeformedCurvature& r_bar,
                                               const SasakianPointData& data, int k,
                                               std::span<const double> rho) {
  require_cs_dimension(data, k);
  std::vector<double> out;
  out.reserve(rho.size());
  for (double r : rho) {
    const DenseTensor at = r_bar.r_bar.evaluate(r);
    const FormMatrix first = first_chain_factor(RhoPolyTensor(xi_curvature_contraction(at, data)));
    out.push_back(chain_top_trace(first, pair_from_dense(at), k).rho_coefficient(0));
  }
  return out;
}

std::vector<CheckRecord> leading_coefficient_check(std::span<const CSIntegrandResult> results, int k,
                                                   const CSTolerances& tol) {
  std::vector<CheckRecord> out;
  const double factor = std::pow(4.0, k) * (4 * k + 2);
  int reference_sign = 0;
  int mismatches = 0;
  for (const auto& r : results) {
    auto tag = [&](CheckRecord c) {
      c.model = model_name(r.model.kind);
      c.k = k;
      c.point_index = r.point_index;
      c.point = r.point;
      out.push_back(std::move(c));
    };
    const double lead = r.leading();
    const double expected = factor * std::abs(r.volume_component);
    auto lead_check = make_check("cs.leading-coefficient",
                                 "|a_4k| = 4^k (4k+2) |eta ^ (d eta)^{2k}|",
                                 std::abs(std::abs(lead) - expected), expected, tol.leading);
    const int sign = lead * r.volume_component >= 0.0 ? 1 : -1;
    lead_check.values = {{"a_4k", lead},
                         {"volume", r.volume_component},
                         {"ratio", lead / r.volume_component},
                         {"magnitude_factor", factor},
                         {"sign", sign}};
    tag(std::move(lead_check));
    if (reference_sign == 0) reference_sign = sign;
    if (sign != reference_sign) ++mismatches;

    const double poly_scale = r.poly.max_abs();
    tag(make_check("cs.factor-division", "K xi is divisible by (1 + rho^2)^2",
                   r.remainder.max_abs(), poly_scale, tol.remainder));
    double beyond = 0.0;
    for (int n = 4 * k + 2; n <= r.factored.rho_degree(); n += 2)
      beyond = std::max(beyond, std::abs(r.factored.rho_coefficient(n)));
    tag(make_check("cs.degree-bound", "coefficients above rho^4k vanish after factoring", beyond,
                   r.factored.max_abs(), tol.degree_bound));
    tag(make_check("cs.k2-trace", "tr(K2)_[i_1 ... i_d] = 0", r.trace_k2.max_abs(), poly_scale,
                   tol.k2_trace));
    tag(make_check("cs.k1-k2-split", "K xi = tr(K1) + tr(K2)",
                   (r.poly - r.trace_k1 - r.trace_k2).max_abs(), poly_scale, tol.k2_trace));
  }
  if (!results.empty()) {
    auto c = make_check("cs.leading-sign", "a_4k / (eta ^ (d eta)^{2k}) has one sign per model",
                        mismatches, 1.0, 0.0);
    c.model = model_name(results.front().model.kind);
    c.k = k;
    c.values["sign"] = reference_sign;
    c.values["points"] = static_cast<double>(results.size());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckRecord> space_form_factor_check(const CSIntegrandResult& r, double c,
                                                 std::span<const double> rho_grid,
                                                 const CSTolerances& tol) {
  std::vector<CheckRecord> out;
  const int k = r.model.k;
  const double lead = r.leading();
  const double shift = (c - 1.0) / 4.0;
  const EvenPolynomial expected = lead * binomial_power(shift, 1.0, 2 * k);
  auto push = [&](CheckRecord rec) {
    rec.model = model_name(r.model.kind);
    rec.k = k;
    rec.point_index = r.point_index;
    rec.point = r.point;
    out.push_back(std::move(rec));
  };
  auto factor = make_check("cs.space-form-factor", "K xi / (1+rho^2)^2 = a_4k ((c-1)/4 + rho^2)^{2k}",
                           (r.factored - expected).max_abs(), expected.max_abs(),
                           tol.space_form_factor);
  factor.values = {{"c", c}, {"a_4k", lead}};
  push(std::move(factor));
  if (std::abs(shift) < 1e-15) {
    auto purity = make_check("cs.sphere-purity", "a_0 = ... = a_{4k-2} = 0",
                             max_coefficient_except(r.factored, 4 * k), std::abs(lead), tol.purity);
    push(std::move(purity));
  }
  for (double rho : rho_grid) {
    const double value = r.poly.evaluate(rho);
    // At rho = 0 on the sphere every term vanishes, so fall back to the coefficient size.
    const double scale = std::max(magnitude_at(r.poly, rho), r.poly.max_abs());
    CheckRecord rec;
    if (std::abs(shift + rho * rho) < 1e-12) {
      rec = make_check("cs.grid-zero", "K xi vanishes where (c-1)/4 + rho^2 = 0", std::abs(value),
                       scale, tol.vanishing);
    } else {
      rec = make_nonzero_check("cs.grid-nonzero", "K xi != 0 where (c-1)/4 + rho^2 != 0", value,
                               tol.nonzero * scale);
    }
    rec.rho = rho;
    rec.values["value"] = value;
    push(std::move(rec));
  }
  return out;
}

CheckRecord exact_curvature_factor_check(const CSIntegrandResult& exact,
                                         const CSIntegrandResult& reference, double c,
                                         const CSTolerances& tol) {
  const int k = exact.model.k;
  const double lead = exact.leading();
  const EvenPolynomial expected = lead * binomial_power(-(c - 1.0) / 4.0, 1.0, 2 * k);
  const double residual = std::max((exact.factored - expected).max_abs(),
                                   std::abs(lead - reference.leading()));
  auto rec = make_check("cs.exact-curvature-factor",
                        "curvature of h_rho: K xi / (1+rho^2)^2 = a_4k (rho^2 - (c-1)/4)^{2k}",
                        residual, expected.max_abs(), tol.space_form_factor);
  rec.model = model_name(exact.model.kind);
  rec.k = k;
  rec.point_index = exact.point_index;
  rec.point = exact.point;
  rec.values = {{"c", c},
                {"a_4k", lead},
                {"ratio", lead / exact.volume_component},
                {"value_at_rho_1", exact.poly.evaluate(1.0)}};
  return rec;
}

CheckRecord vandermonde_check(const CSIntegrandResult& result, const DeformedCurvature& r_bar,
                              const SasakianPointData& data, const CSTolerances& tol) {
  const int k = result.model.k;
  const auto samples = pullback_component_samples(r_bar, data, k, kVandermondeRho);
  const EvenPolynomial fit = vandermonde_fit(kVandermondeRho, samples, 4 * k + 4);
  const int top = std::max(fit.rho_degree(), result.poly.rho_degree());
  double diff = 0.0;
  for (int n = 0; n <= top; n += 2)
    diff = std::max(diff, std::abs(fit.rho_coefficient(n) - result.poly.rho_coefficient(n)));
  auto rec = make_check("cs.vandermonde", "exact polynomial = fit through numeric samples", diff,
                        result.poly.max_abs(), tol.fit);
  rec.model = model_name(result.model.kind);
  rec.k = k;
  rec.point_index = result.point_index;
  rec.point = result.point;
  return rec;
}

CheckRecord permutation_oracle_check(const CSIntegrandResult& result,
                                     const DeformedCurvature& r_bar,
                                     const SasakianPointData& data, double rho,
                                     const CSTolerances& tol, int workers) {
  const double oracle =
      pullback_component_by_permutations(r_bar.r_bar.evaluate(rho), data, result.model.k, workers);
  const double value = result.poly.evaluate(rho);
  auto rec = make_check("cs.permutation-oracle", "form-valued chain = signed permutation sum",
                        std::abs(value - oracle), magnitude_at(result.poly, rho), tol.oracle);
  rec.model = model_name(result.model.kind);
  rec.k = result.model.k;
  rec.point_index = result.point_index;
  rec.point = result.point;
  rec.rho = rho;
  rec.values = {{"chain", value}, {"permutations", oracle}};
  return rec;
}

std::vector<EvenPolynomial> free_slot_components(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data, int k) {
  require_cs_dimension(data, k);
  const int d = data.dim();
  const FormMatrix pair = pair_chain_factor(r_bar.r_bar);
  std::vector<EvenPolynomial> out;
  for (int nu = 0; nu < d; ++nu) {
    DenseTensor unit(d, {Variance::upper});
    unit(nu) = 1.0;
    const RhoPolyTensor slice = contract_product(r_bar.r_bar, 2, RhoPolyTensor(unit), 0);
    out.push_back(chain_top_trace(first_chain_factor(slice), pair, k));
  }
  return out;
}

std::vector<double> metric_volume_components(const SasakianPointData& data) {
  const int d = data.dim();
  std::vector<double> out;
  for (int nu = 0; nu < d; ++nu) {
    DenseTensor row(d, {Variance::lower});
    for (int i = 0; i < d; ++i) row(i) = data.g(nu, i);
    out.push_back(contact_volume_component(row, -data.phi_lower));
  }
  return out;
}

namespace {

// Least-squares constant with values ~ C * reference, and the relative misfit.
std::pair<double, double> proportionality(const std::vector<double>& values,
                                          const std::vector<double>& reference) {
  double num = 0.0, den = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += values[i] * reference[i];
    den += reference[i] * reference[i];
    scale = std::max(scale, std::abs(values[i]));
  }
  const double c = den > 0.0 ? num / den : 0.0;
  double misfit = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    misfit = std::max(misfit, std::abs(values[i] - c * reference[i]));
  return {c, relative_residual(misfit, scale)};
}

}  // namespace

std::vector<CheckRecord> diff_integrand_check(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data, int k,
                                              ModelKind kind, const DiffTolerances& tol) {
  if (kind != ModelKind::sphere)
    throw StructuralError("the nu-free chain structure is established for the round sphere only");
  require_cs_dimension(data, k);
  const int top = 4 * k;
  const auto components = free_slot_components(r_bar, data, k);
  const auto metric_volume = metric_volume_components(data);
  const EvenPolynomial square = binomial_power(1.0, 1.0, 2);

  double lead_scale = 0.0, other = 0.0;
  double f_lead_scale = 0.0, f_other = 0.0;
  std::vector<double> lead, f_lead;
  for (const auto& p : components) {
    lead.push_back(p.rho_coefficient(top));
    lead_scale = std::max(lead_scale, std::abs(lead.back()));
    other = std::max(other, max_coefficient_except(p, top));
    const auto division = divide(p, square);
    f_lead.push_back(division.quotient.rho_coefficient(top));
    f_lead_scale = std::max(f_lead_scale, std::abs(f_lead.back()));
    f_other = std::max({f_other, max_coefficient_except(division.quotient, top),
                        division.remainder.max_abs()});
  }

  std::vector<CheckRecord> out;
  auto literal = make_check("diff.nu-free-purity",
                            "K_nu[lambda_1 ... lambda_d] has only the rho^4k coefficient", other,
                            lead_scale, tol.purity);
  literal.informational = true;
  literal.note = "fails: the chain carries the factor (1 + rho^2)^2 of its first curvature slot";
  out.push_back(std::move(literal));

  out.push_back(make_check("diff.nu-free-purity-factored",
                           "K_nu[lambda_1 ... lambda_d] / (1 + rho^2)^2 has only the rho^4k coefficient",
                           f_other, f_lead_scale, tol.purity));

  const auto [c_lit, misfit] = proportionality(lead, metric_volume);
  auto prop = make_check("diff.nu-free-proportionality",
                         "rho^4k coefficient of K_nu[lambda...] = C g_nu[lambda_1 (d eta)^{2k}...]",
                         misfit, 1.0, tol.proportionality);
  prop.values["C"] = c_lit;
  out.push_back(std::move(prop));

  const auto [c_fact, f_misfit] = proportionality(f_lead, metric_volume);
  auto fprop = make_check("diff.nu-free-proportionality-factored",
                          "factored rho^4k coefficient = C' g_nu[lambda_1 (d eta)^{2k}...]",
                          f_misfit, 1.0, tol.proportionality);
  fprop.values["C"] = c_fact;
  out.push_back(std::move(fprop));

  for (auto& rec : out) {
    rec.model = model_name(kind);
    rec.k = k;
    rec.point = data.point;
  }
  return out;
}

CheckRecord proportionality_constant_check(std::span<const CheckRecord> records,
                                           const DiffTolerances& tol) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int count = 0;
  std::string model;
  int k = 0;
  for (const auto& r : records) {
    if (r.id != "diff.nu-free-proportionality") continue;
    const double c = r.values.at("C");
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    model = r.model;
    k = r.k;
    ++count;
  }
  if (count == 0) {
    auto rec = make_check("diff.constant-across-points", "C is the same at every point", 1.0, 1.0, 0.0);
    rec.note = "no proportionality records";
    return rec;
  }
  auto rec = make_check("diff.constant-across-points", "C is the same at every point", hi - lo,
                        std::max(std::abs(lo), std::abs(hi)), tol.constant_spread);
  rec.model = model;
  rec.k = k;
  rec.values = {{"C_min", lo}, {"C_max", hi}, {"points", count}};
  return rec;
}

}  // namespace sasaki
