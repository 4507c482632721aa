#pragma once

#include <span>
#include <vector>

#include "sasaki/check.hpp"
#include "sasaki/models.hpp"
#include "sasaki/sasakian.hpp"

namespace sasaki {

// P_{i2 i3 i4 i5 l3}^{l1} = A_{i2 i3 l2}^{l1} B_{i4 i5 l3}^{l2} for curvature-shaped A and B.
DenseTensor chained_pair_product(const DenseTensor& a, const DenseTensor& b);

// Largest component of the product skewed over its four form slots, relative to
// max|A| max|B|.
double chained_pair_residual(const DenseTensor& a, const DenseTensor& b);

// Split of the quadratic deformation bracket into phi and eta parts: P = split1 + split2.
struct QuadraticSplit {
  DenseTensor split1;  // phi_ki phi_j^h - phi_k^h phi_ji + 2 phi_kj phi_i^h
  DenseTensor split2;  // 2 (eta_k delta_j^h - eta_j delta_k^h) eta_i + (g_ki eta_j - g_ji eta_k) xi^h
};
QuadraticSplit quadratic_split(const SasakianPointData& data);

// Powers of phi as (1,1)-tensors: phi_power(data, n)_k^h.
DenseTensor phi_power(const SasakianPointData& data, int n);

// B*_{ab l}^{m} = -phi2_{a l} phi_b^m + phi_{a l} phi2_b^m + phi_{ab} phi2_l^m, phi2 = phi^2.
DenseTensor collapse_tensor(const SasakianPointData& data);

struct LemmaTolerances {
  double vanishing = 1e-9;
  double exact = 1e-10;
  double collapse = 1e-8;
  double antisymmetry = 1e-9;
  double proportionality = 1e-12;
  double control_floor = 1e-2;
};

// Each rho-degree coefficient of R-bar satisfies the first Bianchi identity; a structurally
// corrupted quadratic coefficient is run as a control.
std::vector<CheckRecord> check_component_bianchi(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data,
                                                 const LemmaTolerances& tol = {});

// (RE x R3) and (R3 x RE) vanish after skewing over the four form slots; R2 x R2 is a control.
std::vector<CheckRecord> check_RE_R3_products(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data,
                                              const LemmaTolerances& tol = {});

// Products of the split pieces of the quadratic coefficient and their Bianchi identities.
std::vector<CheckRecord> check_R2_split_products(const SasakianPointData& data,
                                                 const LemmaTolerances& tol = {});

// phi-power identities, trace of B*, the relabeling A' ~ 4 phi B*, and for k >= 2 the
// collapse (A')^(2) ~ -16 phi phi phi B* over eight slots.
std::vector<CheckRecord> check_B_collapse(const SasakianPointData& data, int k,
                                          const LemmaTolerances& tol = {});

// (R1 x RE) and (RE x R1) vanish on the round sphere. Throws StructuralError for other models.
std::vector<CheckRecord> check_sphere_R1_lemma(const DeformedCurvature& r_bar,
                                               const SasakianPointData& data, ModelKind kind,
                                               const LemmaTolerances& tol = {});
// The same products on a model where they need not vanish, reported as controls.
std::vector<CheckRecord> r1_product_controls(const DeformedCurvature& r_bar,
                                             const SasakianPointData& data,
                                             const LemmaTolerances& tol = {});

// R-bar lowered with h_rho is antisymmetric in its last two slots. The per-degree lowering
// with g is reported for reference.
std::vector<CheckRecord> check_pair_antisymmetry(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data, double rho,
                                                 const LemmaTolerances& tol = {});

// Space form split products (S alpha x RE, RE x S alpha) for alpha = 1 with any E and E = 3 with
// any alpha, the S2' proportionality to R2 at rho, and the excluded S2 x R1, S2 x R2 as controls.
std::vector<CheckRecord> check_space_form_S_lemma(const SasakianPointData& data, double c,
                                                  double rho, const LemmaTolerances& tol = {});

// K_{nu lambda_1 ... lambda_d} built densely from a first factor F_{a kappa1 nu}^{kappa0} and
// curvature-shaped pair factors chained on their last two slots; slot order
// [nu][lambda_1]...[lambda_d].
DenseTensor dense_chain(const DenseTensor& first, std::span<const DenseTensor> pairs);
DenseTensor dense_chain(const DenseTensor& first, const DenseTensor& curvature, int k);

// The CR block lemmas on the sphere. Replacing the first chain factor by CR1 gives
// -g_{j[i_1} T_{...]}: checked exactly in rho over all form slots, and at the given rho over
// (i_1 i_2 i_3) only (k = 1), where the leftover Bianchi cycle does not close.
std::vector<CheckRecord> check_CR_replacement(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data, int k,
                                              ModelKind kind, double rho,
                                              const LemmaTolerances& tol = {});
// All products CRE x CRF with (E,F) != (2,2) vanish over four form slots; (2,2) is a control.
std::vector<CheckRecord> check_CR_products(const SasakianPointData& data, ModelKind kind,
                                           const LemmaTolerances& tol = {});
// R-bar of the sphere against a1 CR1 + a2 CR2 + a3 CR3 + a4 CR4; the printed coefficient
// -(rho^2 + rho^4) of CR4 is reported for reference.
std::vector<CheckRecord> check_CR_decomposition(const DeformedCurvature& r_bar,
                                                const SasakianPointData& data, double c,
                                                const LemmaTolerances& tol = {});

}  // namespace sasaki
