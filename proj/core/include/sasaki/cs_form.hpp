#pragma once

#include <span>
#include <vector>

#include "sasaki/check.hpp"
#include "sasaki/form_matrix.hpp"
#include "sasaki/models.hpp"
#include "sasaki/sasakian.hpp"

namespace sasaki {

// Top-form component of the xi-contracted, antisymmetrized curvature chain at one point,
// exact in rho.
struct CSIntegrandResult {
  ModelSpec model;
  int point_index = -1;
  Point point;
  EvenPolynomial poly;           // K_{j[i_1 ... i_d]} xi^j at (0, ..., d-1)
  double volume_component = 0;   // eta ^ (d eta)^{2k} at (0, ..., d-1), d eta = -phi
  EvenPolynomial factored;       // poly / (1 + rho^2)^2
  EvenPolynomial remainder;      // remainder of that division
  EvenPolynomial trace_k1;       // chain started by -(1+rho^2)^2 eta_a delta_j^h
  EvenPolynomial trace_k2;       // chain started by (1+rho^2)^2 delta_a^h eta_j; vanishes

  double leading() const noexcept { return factored.rho_coefficient(4 * model.k); }
};

// Throws StructuralError unless the point data has dimension 4k + 1.
void require_cs_dimension(const SasakianPointData& data, int k);

// The first chain factor, a 1-form with matrix values: slot 0 is the form slot, then the
// column (lower) and row (upper) slots.
FormMatrix first_chain_factor(const RhoPolyTensor& contracted);
// R-bar as a 2-form with matrix values (row = slot 3, column = slot 2).
FormMatrix pair_chain_factor(const RhoPolyTensor& r_bar);
// Trace of the top component of first ^ pair ^ ... ^ pair (2k pair factors).
EvenPolynomial chain_top_trace(const FormMatrix& first, const FormMatrix& pair, int k);

// K_{nu lambda_1 ... lambda_{4k+1}} with all slots lower, materialized as a dense polynomial
// tensor. Intermediate storage grows like dim^(4k+4), so this is limited to small cases.
RhoPolyTensor build_K(const DeformedCurvature& r_bar, const SasakianPointData& data, int k);

CSIntegrandResult pullback_cs_component(const DeformedCurvature& r_bar,
                                        const SasakianPointData& data, int k);

// Independent evaluation at a fixed rho: the d! signed permutation sum of traced matrix chains.
double pullback_component_by_permutations(const DenseTensor& r_bar_at_rho,
                                          const SasakianPointData& data, int k, int workers = 0);

// Top component evaluated numerically at each rho (no polynomial arithmetic).
std::vector<double> pullback_component_samples(const DeformedCurvature& r_bar,
                                               const SasakianPointData& data, int k,
                                               std::span<const double> rho);

inline constexpr double kVandermondeRho[] = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};

struct CSTolerances {
  double leading = 1e-8;
  double degree_bound = 1e-9;
  double remainder = 1e-9;
  double k2_trace = 1e-9;
  double purity = 1e-8;
  double space_form_factor = 1e-8;
  double fit = 1e-7;
  double oracle = 1e-9;
  double vanishing = 1e-9;
  double nonzero = 1e-6;
};

// Per-point checks of the leading coefficient, division, degree bound and K2 trace, plus one
// sign-consistency record over all points.
std::vector<CheckRecord> leading_coefficient_check(std::span<const CSIntegrandResult> results, int k,
                                                   const CSTolerances& tol = {});

// Model-level checks: the factor ((c-1)/4 + rho^2)^{2k}, sphere purity, and vanishing or
// nonvanishing of the component on the rho grid.
std::vector<CheckRecord> space_form_factor_check(const CSIntegrandResult& result, double c,
                                                 std::span<const double> rho_grid,
                                                 const CSTolerances& tol = {});

// The same integrand built from the curvature of h_rho itself (exact_deformed_curvature) on a
// space form: factored = a_4k (rho^2 - (c-1)/4)^{2k}. `reference` is the closed-form result at
// the same point, whose leading coefficient must agree.
CheckRecord exact_curvature_factor_check(const CSIntegrandResult& exact,
                                         const CSIntegrandResult& reference, double c,
                                         const CSTolerances& tol = {});

// Exact polynomial against a Vandermonde fit through numerically evaluated samples.
CheckRecord vandermonde_check(const CSIntegrandResult& result, const DeformedCurvature& r_bar,
                              const SasakianPointData& data, const CSTolerances& tol = {});

// Exact polynomial at rho against the permutation-sum oracle.
CheckRecord permutation_oracle_check(const CSIntegrandResult& result,
                                     const DeformedCurvature& r_bar,
                                     const SasakianPointData& data, double rho,
                                     const CSTolerances& tol = {}, int workers = 0);

// K_{nu [lambda_1 ... lambda_d]} for every nu, top component, as polynomials in rho.
std::vector<EvenPolynomial> free_slot_components(const DeformedCurvature& r_bar,
                                                 const SasakianPointData& data, int k);
// g_{nu [lambda_1} (d eta)^{2k}_{...]} top component for every nu.
std::vector<double> metric_volume_components(const SasakianPointData& data);

struct DiffTolerances {
  double purity = 1e-8;
  double proportionality = 1e-8;
  double constant_spread = 1e-7;
};

// rho-structure of the nu-free antisymmetrized chain on the round sphere. The proportionality
// constant is stored in values["C"].
std::vector<CheckRecord> diff_integrand_check(const DeformedCurvature& r_bar,
                                              const SasakianPointData& data, int k,
                                              ModelKind kind, const DiffTolerances& tol = {});

// The proportionality constant must agree across points.
CheckRecord proportionality_constant_check(std::span<const CheckRecord> records,
                                           const DiffTolerances& tol = {});

}  // namespace sasaki
