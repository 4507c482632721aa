#include "sasaki/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sasaki/cs_form.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/form_matrix.hpp"

namespace sasaki {

namespace {

const std::vector<Variance> kCurvature{Variance::lower, Variance::lower, Variance::lower,
                                       Variance::upper};
const std::vector<int> kFourFormSlots{0, 1, 2, 3};

std::string label(const char* prefix, int e) { return std::string(prefix) + std::to_string(e); }

CheckRecord vanishing(std::string id, std::string statement, double relative, double tolerance) {
  return make_check(std::move(id), std::move(statement), relative, 1.0, tolerance);
}

CheckRecord product_check(std::string id, std::string statement, const DenseTensor& a,
                          const DenseTensor& b, double tolerance, bool control = false) {
  auto rec = vanishing(std::move(id), std::move(statement), chained_pair_residual(a, b), tolerance);
  rec.control = control;
  return rec;
}

double bianchi_residual(const DenseTensor& r) {
  return relative_residual(skew_symmetrize(r, {0, 1, 2}).max_abs(), r.max_abs());
}

void stamp(std::vector<CheckRecord>& records, std::size_t from, const SasakianPointData& data) {
  for (std::size_t i = from; i < records.size(); ++i) records[i].point = data.point;
}

void require_sphere(ModelKind kind, const char* what) {
  if (kind != ModelKind::sphere)
    throw StructuralError(std::string(what) + " holds for the round sphere only");
}

// A 1-form slice T(e_index) of slot `slot`, kept as a polynomial.
RhoPolyTensor slice(const RhoPolyTensor& t, int slot, int index) {
  DenseTensor unit(t.dim(), {Variance::upper});
  unit(index) = 1.0;
  return contract_product(t, slot, RhoPolyTensor(unit), 0);
}

}  // namespace

DenseTensor chained_pair_product(const DenseTensor& a, const DenseTensor& b) {
  if (a.variance() != kCurvature || b.variance() != kCurvature)
    throw StructuralError("chained_pair_product expects tensors shaped like R_kji^h");
  // [i2 i3 l1 i4 i5 l3] -> [i2 i3 i4 i5 l3 l1]
  const DenseTensor p = contract_product(a, 2, b, 3);
  return permute_slots(p, std::vector<int>{0, 1, 3, 4, 5, 2});
}

double chained_pair_residual(const DenseTensor& a, const DenseTensor& b) {
  const DenseTensor skewed = skew_symmetrize(chained_pair_product(a, b), kFourFormSlots);
  return relative_residual(skewed.max_abs(), a.max_abs() * b.max_abs());
}

QuadraticSplit quadratic_split(const SasakianPointData& s) {
  const int n = s.dim();
  QuadraticSplit out{DenseTensor(n, kCurvature), DenseTensor(n, kCurvature)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h) {
          out.split1(k, j, i, h) = s.phi_lower(k, i) * s.phi_mixed(j, h) -
                                   s.phi_mixed(k, h) * s.phi_lower(j, i) +
                                   2.0 * s.phi_lower(k, j) * s.phi_mixed(i, h);
          const double dk = k == h ? 1.0 : 0.0;
          const double dj = j == h ? 1.0 : 0.0;
          out.split2(k, j, i, h) = 2.0 * (s.eta(k) * dj - s.eta(j) * dk) * s.eta(i) +
                                   (s.g(k, i) * s.eta(j) - s.g(j, i) * s.eta(k)) * s.xi(h);
        }
  return out;
}

DenseTensor phi_power(const SasakianPointData& data, int n) {
  if (n < 0) throw StructuralError("phi_power: negative exponent");
  DenseTensor out = DenseTensor::kronecker(data.dim());
  for (int i = 0; i < n; ++i) out = contract_product(out, 1, data.phi_mixed, 0);
  return out;
}

DenseTensor collapse_tensor(const SasakianPointData& s) {
  const int n = s.dim();
  const DenseTensor phi2 = phi_power(s, 2);
  const DenseTensor phi2_lower = raise_lower(phi2, 1, s.g, s.g_inv);
  DenseTensor out(n, kCurvature);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          out(a, b, l, m) = -phi2_lower(a, l) * s.phi_mixed(b, m) +
                            s.phi_lower(a, l) * phi2(b, m) + s.phi_lower(a, b) * phi2(l, m);
  return out;
}

std::vector<CheckRecord> check_component_bianchi(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data,
                                                 const LemmaTolerances& tol) {
  std::vector<CheckRecord> out;
  for (int e = 1; e <= 3; ++e)
    out.push_back(vanishing(label("lemma.bianchi.R", e), "(RE)_[kji]^h = 0",
                            bianchi_residual(r_bar.component(2 * (e - 1))), tol.vanishing));
  // phi_kj eta_i xi^h has a nonzero cyclic sum; added to R2 it must break the identity.
  DenseTensor corrupted = r_bar.component(2);
  const int n = data.dim();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          corrupted(k, j, i, h) += data.phi_lower(k, j) * data.eta(i) * data.xi(h);
  auto control = vanishing("lemma.bianchi.corrupted-R2", "(R2 + phi_kj eta_i xi^h)_[kji]^h = 0",
                           bianchi_residual(corrupted), tol.vanishing);
  control.control = true;
  out.push_back(std::move(control));
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_RE_R3_products(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data,
                                              const LemmaTolerances& tol) {
  std::vector<CheckRecord> out;
  const DenseTensor r3 = r_bar.component(4);
  for (int e = 1; e <= 3; ++e) {
    const DenseTensor re = r_bar.component(2 * (e - 1));
    out.push_back(product_check(label("lemma.product.R3xR", e), "((R3) x (RE))_[i2 i3 i4 i5] = 0",
                                r3, re, tol.vanishing));
    out.push_back(product_check(label("lemma.product.R", e) + "xR3",
                                "((RE) x (R3))_[i2 i3 i4 i5] = 0", re, r3, tol.vanishing));
  }
  out.push_back(product_check("lemma.product.R2xR2", "((R2) x (R2))_[i2 i3 i4 i5] = 0",
                              r_bar.component(2), r_bar.component(2), tol.vanishing, true));
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_R2_split_products(const SasakianPointData& data,
                                                 const LemmaTolerances& tol) {
  const QuadraticSplit split = quadratic_split(data);
  std::vector<CheckRecord> out;
  out.push_back(product_check("lemma.split.R21xR22", "((R2-1) x (R2-2))_[i2 i3 i4 i5] = 0",
                              split.split1, split.split2, tol.exact));
  out.push_back(product_check("lemma.split.R22xR21", "((R2-2) x (R2-1))_[i2 i3 i4 i5] = 0",
                              split.split2, split.split1, tol.exact));
  out.push_back(product_check("lemma.split.R22xR22", "((R2-2) x (R2-2))_[i2 i3 i4 i5] = 0",
                              split.split2, split.split2, tol.exact));
  out.push_back(product_check("lemma.split.R21xR21", "((R2-1) x (R2-1))_[i2 i3 i4 i5] = 0",
                              split.split1, split.split1, tol.exact, true));
  out.push_back(vanishing("lemma.split.bianchi-R21", "(R2-1)_[kji]^h = 0",
                          bianchi_residual(split.split1), tol.exact));
  out.push_back(vanishing("lemma.split.bianchi-R22", "(R2-2)_[kji]^h = 0",
                          bianchi_residual(split.split2), tol.exact));
  const DenseTensor sum = split.split1 + split.split2;
  const DenseTensor bracket = deformation_quadratic(data);
  out.push_back(make_check("lemma.split.sum", "(R2-1) + (R2-2) = -(R2 coefficient)",
                           (sum - bracket).max_abs(), bracket.max_abs(), tol.exact));
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_B_collapse(const SasakianPointData& data, int k,
                                          const LemmaTolerances& tol) {
  const int n = data.dim();
  std::vector<CheckRecord> out;
  const DenseTensor delta = DenseTensor::kronecker(n);
  const DenseTensor eta_xi = tensor_product(data.eta, data.xi);
  const DenseTensor phi2 = phi_power(data, 2);
  const DenseTensor phi3 = phi_power(data, 3);
  const DenseTensor phi4 = phi_power(data, 4);
  const DenseTensor expected2 = eta_xi - delta;
  out.push_back(make_check("lemma.phi-power.2", "(phi^(2))_k^h = -delta_k^h + eta_k xi^h",
                           (phi2 - expected2).max_abs(), expected2.max_abs(), tol.exact));
  out.push_back(make_check("lemma.phi-power.3", "(phi^(3))_k^h = -phi_k^h",
                           (phi3 + data.phi_mixed).max_abs(), data.phi_mixed.max_abs(), tol.exact));
  out.push_back(make_check("lemma.phi-power.4", "(phi^(4))_k^h = -(phi^(2))_k^h",
                           (phi4 + phi2).max_abs(), phi2.max_abs(), tol.exact));

  const DenseTensor b_star = collapse_tensor(data);
  const DenseTensor trace = contract(b_star, 2, 3);
  const double factor = 4.0 * k + 2.0;
  auto magnitude = make_check("lemma.collapse.trace", "B*_{ab l}^l = -(4k+2) phi_ab",
                              (trace + factor * data.phi_lower).max_abs(),
                              factor * data.phi_lower.max_abs(), tol.exact);
  magnitude.values["factor"] = factor;
  out.push_back(std::move(magnitude));
  auto literal = make_check("lemma.collapse.trace-positive", "B*_{ab l}^l = +(4k+2) phi_ab",
                            (trace - factor * data.phi_lower).max_abs(),
                            factor * data.phi_lower.max_abs(), tol.exact);
  literal.informational = true;
  literal.note = "each of the three B terms contributes with a minus sign";
  out.push_back(std::move(literal));

  // (R2-1)' = 2 (phi_{i2 l2} phi_{i3}^{l1} + phi_{i2 i3} phi_{l2}^{l1})
  DenseTensor prime(n, kCurvature);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          prime(a, b, l, m) = 2.0 * (data.phi_lower(a, l) * data.phi_mixed(b, m) +
                                     data.phi_lower(a, b) * data.phi_mixed(l, m));
  const QuadraticSplit split = quadratic_split(data);
  out.push_back(make_check("lemma.collapse.split-prime", "(R2-1)'_[i2 i3] = (R2-1)_[i2 i3]",
                           skew_difference(prime, split.split1, std::vector<int>{0, 1}),
                           split.split1.max_abs(), tol.exact));

  const FormMatrix a_prime =
      FormMatrix::from_tensor(RhoPolyTensor(chained_pair_product(prime, prime)), 4, 5, 4);
  const FormMatrix phi_form = FormMatrix::scalar_form(data.phi_lower);
  const FormMatrix b_form = FormMatrix::from_tensor(RhoPolyTensor(b_star), 2, 3, 2);
  const FormMatrix relabeled = wedge_contract(phi_form * 4.0, b_form);
  out.push_back(make_check("lemma.collapse.relabel", "A' ~ 4 phi_{i2 i3} B* mod (i2 ... i5)",
                           max_abs_difference(a_prime, relabeled), a_prime.max_abs(),
                           tol.collapse));
  if (k >= 2 && n >= 8) {
    const FormMatrix squared = wedge_contract(a_prime, a_prime);
    const std::array<FormMatrix, 4> chain{phi_form, phi_form, phi_form, b_form};
    const FormMatrix collapsed = wedge_contract_chain(chain) * -16.0;
    out.push_back(make_check("lemma.collapse.square",
                             "(A')^(2) ~ -16 phi phi phi B* mod (i2 ... i9)",
                             max_abs_difference(squared, collapsed), squared.max_abs(),
                             tol.collapse));
  }
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_sphere_R1_lemma(const DeformedCurvature& r_bar,
                                               const SasakianPointData& data, ModelKind kind,
                                               const LemmaTolerances& tol) {
  require_sphere(kind, "the R1 product lemma");
  std::vector<CheckRecord> out;
  const DenseTensor r1 = r_bar.component(0);
  for (int e = 1; e <= 3; ++e) {
    const DenseTensor re = r_bar.component(2 * (e - 1));
    out.push_back(product_check(label("lemma.sphere.R1xR", e), "((R1) x (RE))_[i2 i3 i4 i5] = 0",
                                r1, re, tol.vanishing));
    out.push_back(product_check(label("lemma.sphere.R", e) + "xR1",
                                "((RE) x (R1))_[i2 i3 i4 i5] = 0", re, r1, tol.vanishing));
  }
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> r1_product_controls(const DeformedCurvature& r_bar,
                                             const SasakianPointData& data,
                                             const LemmaTolerances& tol) {
  std::vector<CheckRecord> out;
  const DenseTensor r1 = r_bar.component(0);
  const DenseTensor r2 = r_bar.component(2);
  out.push_back(product_check("lemma.sphere-only.R1xR1", "((R1) x (R1))_[i2 i3 i4 i5] = 0", r1,
                              r1, tol.vanishing, true));
  out.push_back(product_check("lemma.sphere-only.R1xR2", "((R1) x (R2))_[i2 i3 i4 i5] = 0", r1,
                              r2, tol.vanishing, true));
  out.push_back(product_check("lemma.sphere-only.R2xR1", "((R2) x (R1))_[i2 i3 i4 i5] = 0", r2,
                              r1, tol.vanishing, true));
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_pair_antisymmetry(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data, double rho,
                                                 const LemmaTolerances& tol) {
  std::vector<CheckRecord> out;
  const DeformedMetric h = deform_metric(data, rho);
  const std::vector<int> swap_last{0, 1, 3, 2};
  const DenseTensor lowered = lower_curvature(r_bar.r_bar.evaluate(rho), h.h);
  auto rec = make_check("lemma.pair-antisymmetry", "R-bar_kjih = -R-bar_kjhi (lowered with h_rho)",
                        (lowered + permute_slots(lowered, swap_last)).max_abs(), lowered.max_abs(),
                        tol.antisymmetry);
  rec.rho = rho;
  out.push_back(std::move(rec));
  double worst = 0.0;
  for (int e = 1; e <= 3; ++e) {
    const DenseTensor l = lower_curvature(r_bar.component(2 * (e - 1)), data.g);
    worst = std::max(worst, relative_residual((l + permute_slots(l, swap_last)).max_abs(),
                                              l.max_abs()));
  }
  auto per_degree = vanishing("lemma.pair-antisymmetry.per-degree-g",
                              "(RE)_kjih = -(RE)_kjhi (each degree lowered with g)", worst,
                              tol.antisymmetry);
  per_degree.informational = true;
  per_degree.note = "the lowering metric depends on rho, so only the full sum is antisymmetric";
  out.push_back(std::move(per_degree));
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_space_form_S_lemma(const SasakianPointData& data, double c,
                                                  double rho, const LemmaTolerances& tol) {
  std::vector<CheckRecord> out;
  const SpaceFormSplit split = space_form_split(data, c);
  const std::array<DenseTensor, 3> s{split.s1, split.s2, split.s3};
  const std::array<DenseTensor, 3> r{space_form_curvature(data, c), -deformation_quadratic(data),
                                     -deformation_quartic(data)};
  auto pair = [&](int alpha, int e) {
    const std::string tag = "S" + std::to_string(alpha) + "xR" + std::to_string(e);
    const std::string rtag = "R" + std::to_string(e) + "xS" + std::to_string(alpha);
    out.push_back(product_check("lemma.space-form." + tag, "((S alpha) x (RE))_[i2 i3 i4 i5] = 0",
                                s[alpha - 1], r[e - 1], tol.vanishing));
    out.push_back(product_check("lemma.space-form." + rtag, "((RE) x (S alpha))_[i2 i3 i4 i5] = 0",
                                r[e - 1], s[alpha - 1], tol.vanishing));
  };
  for (int e = 1; e <= 3; ++e) pair(1, e);
  for (int alpha = 2; alpha <= 3; ++alpha) pair(alpha, 3);

  const DenseTensor total = split.s1 + split.s2 + split.s3;
  out.push_back(make_check("lemma.space-form.split-sum", "S1 + S2 + S3 = space form curvature",
                           (total - r[0]).max_abs(), r[0].max_abs(), tol.proportionality));
  if (rho != 0.0) {
    const double r2 = rho * rho;
    const double factor = ((c - 1.0) / 4.0 + r2) / r2;
    const DenseTensor shifted = shifted_quadratic_part(data, c, rho);
    const DenseTensor graded = r2 * r[1];
    auto prop = make_check("lemma.space-form.shifted-proportional",
                           "S2' = ((c-1)/4 + rho^2) / rho^2 * rho^2 R2",
                           (shifted - factor * graded).max_abs(), shifted.max_abs(),
                           tol.proportionality);
    prop.rho = rho;
    prop.values["factor"] = factor;
    out.push_back(std::move(prop));
    const DenseTensor regrouped = split.s1 + shifted + split.s3 + r2 * r2 * r[2];
    const DenseTensor direct = r[0] + graded + r2 * r2 * r[2];
    auto sum = make_check("lemma.space-form.regrouping", "R-bar = S1 + S2' + S3 + rho^4 R3",
                          (regrouped - direct).max_abs(), direct.max_abs(), tol.proportionality);
    sum.rho = rho;
    out.push_back(std::move(sum));
  }
  if (std::abs(c - 1.0) > 1e-12) {
    out.push_back(product_check("lemma.space-form.S2xR1", "((S2) x (R1))_[i2 i3 i4 i5] = 0",
                                split.s2, r[0], tol.vanishing, true));
    out.push_back(product_check("lemma.space-form.S2xR2", "((S2) x (R2))_[i2 i3 i4 i5] = 0",
                                split.s2, r[1], tol.vanishing, true));
  }
  stamp(out, 0, data);
  return out;
}

DenseTensor dense_chain(const DenseTensor& first, std::span<const DenseTensor> pairs) {
  if (first.variance() != kCurvature) throw StructuralError("dense_chain: first factor shape");
  DenseTensor cur = permute_slots(first, std::vector<int>{2, 0, 3, 1});  // [nu a kappa0 kappa1]
  for (const DenseTensor& p : pairs) {
    if (p.variance() != kCurvature) throw StructuralError("dense_chain: pair factor shape");
    cur = contract_product(cur, cur.rank() - 1, p, 3);
  }
  return contract(cur, 2, cur.rank() - 1);
}

DenseTensor dense_chain(const DenseTensor& first, const DenseTensor& curvature, int k) {
  const std::vector<DenseTensor> pairs(static_cast<std::size_t>(2 * k), curvature);
  return dense_chain(first, pairs);
}

std::vector<CheckRecord> check_CR_replacement(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data, int k,
                                              ModelKind kind, double rho,
                                              const LemmaTolerances& tol) {
  require_sphere(kind, "the CR1 replacement identity");
  require_cs_dimension(data, k);
  const int d = data.dim();
  const ContactCurvatureBlocks blocks = contact_curvature_blocks(data);
  const RhoPolyTensor cr1(blocks.cr1);
  const FormMatrix pair = pair_chain_factor(r_bar.r_bar);
  FormMatrix pairs = pair;
  for (int n = 1; n < 2 * k; ++n) pairs = wedge_contract(pairs, pair);

  double diff = 0.0, scale = 0.0;
  for (int j = 0; j < d; ++j) {
    const EvenPolynomial lhs = chain_top_trace(first_chain_factor(slice(cr1, 2, j)), pair, k);
    DenseTensor row(d, {Variance::lower});
    for (int i = 0; i < d; ++i) row(i) = data.g(j, i);
    const EvenPolynomial rhs = -1.0 * wedge_contract(FormMatrix::scalar_form(row), pairs).top_trace();
    diff = std::max(diff, (lhs - rhs).max_abs());
    scale = std::max(scale, lhs.max_abs());
  }
  std::vector<CheckRecord> out;
  out.push_back(make_check("lemma.cr1-replacement",
                           "(CR1)_{i1 k1 j}^{k0} x R-bar ... ~ -g_{i1 j} R-bar ... mod (i1 ... id)",
                           diff, scale, tol.collapse));
  if (k == 1) {
    const DenseTensor at = r_bar.r_bar.evaluate(rho);
    const DenseTensor lhs = dense_chain(blocks.cr1, at, 1);
    const DenseTensor t = contract(contract_product(at, 2, at, 3), 2, 5);
    const DenseTensor rhs = -tensor_product(data.g, t);
    auto literal = make_check("lemma.cr1-replacement.first-three",
                              "(CR1)_{i1 k1 j}^{k0} x R-bar ... ~ -g_{i1 j} R-bar ... mod (i1 i2 i3)",
                              skew_difference(lhs, rhs, std::vector<int>{1, 2, 3}), lhs.max_abs(),
                              tol.collapse);
    literal.informational = true;
    literal.rho = rho;
    literal.note = "the dropped term is a Bianchi cycle over (i1, i4, i5), not (i1, i2, i3)";
    out.push_back(std::move(literal));
  }
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_CR_products(const SasakianPointData& data, ModelKind kind,
                                           const LemmaTolerances& tol) {
  require_sphere(kind, "the CR product lemma");
  const ContactCurvatureBlocks b = contact_curvature_blocks(data);
  const std::array<const DenseTensor*, 4> blocks{&b.cr1, &b.cr2, &b.cr3, &b.cr4};
  std::vector<CheckRecord> out;
  for (int e = 1; e <= 4; ++e)
    for (int f = 1; f <= 4; ++f) {
      const bool survivor = e == 2 && f == 2;
      out.push_back(product_check("lemma.cr-product.CR" + std::to_string(e) + "xCR" +
                                      std::to_string(f),
                                  "((CRE) x (CRF))_[i2 i3 i4 i5] = 0", *blocks[e - 1],
                                  *blocks[f - 1], tol.vanishing, survivor));
    }
  stamp(out, 0, data);
  return out;
}

std::vector<CheckRecord> check_CR_decomposition(const DeformedCurvature& r_bar,
                                                const SasakianPointData& data, double c,
                                                const LemmaTolerances& tol) {
  const ContactCurvatureBlocks b = contact_curvature_blocks(data);
  const ContactCurvatureCoefficients a = contact_curvature_coefficients(c);
  auto assemble = [&](const std::array<EvenPolynomial, 4>& coeff) {
    RhoPolyTensor sum(data.dim(), kCurvature);
    const std::array<const DenseTensor*, 4> blocks{&b.cr1, &b.cr2, &b.cr3, &b.cr4};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n <= coeff[m].rho_degree(); n += 2)
        if (coeff[m].rho_coefficient(n) != 0.0)
          sum.add_term(n, coeff[m].rho_coefficient(n) * *blocks[m]);
    return sum;
  };
  const double scale = r_bar.r_bar.max_abs();
  std::vector<CheckRecord> out;
  const RhoPolyTensor blocks_sum = assemble({a.a1, a.a2, a.a3, a.a4});
  out.push_back(make_check("lemma.cr-decomposition",
                           "R-bar = a1 CR1 + a2 CR2 + a3 CR3 + a4 CR4, a4 = (c-1)/4 - 2 rho^2 - rho^4",
                           (blocks_sum - r_bar.r_bar).max_abs(), scale, tol.exact));
  const RhoPolyTensor printed =
      assemble({EvenPolynomial({1.0}), EvenPolynomial({0.0, -1.0}), EvenPolynomial({0.0, -1.0}),
                EvenPolynomial({0.0, -1.0, -1.0})});
  auto literal = make_check("lemma.cr-decomposition.printed",
                            "R-bar = CR1 - rho^2 CR2 - rho^2 CR3 - (rho^2 + rho^4) CR4",
                            (printed - r_bar.r_bar).max_abs(), scale, tol.exact);
  literal.informational = true;
  literal.note = "the quadratic bracket contributes 2 CR4, so the CR4 coefficient is -(2 rho^2 + rho^4)";
  out.push_back(std::move(literal));
  stamp(out, 0, data);
  return out;
}

}  // namespace sasaki
