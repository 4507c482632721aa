#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sasaki/geometry.hpp"
#include "sasaki/rho_poly.hpp"
#include "sasaki/sasakian.hpp"

namespace sasaki {

enum class ModelKind { sphere, heisenberg };

std::string model_name(ModelKind kind);
ModelKind parse_model(const std::string& name);
// phi-sectional curvature: 1 for the round sphere, -3 for the Heisenberg group.
double space_form_constant(ModelKind kind);

struct ModelSpec {
  ModelKind kind = ModelKind::sphere;
  int k = 1;  // dimension 4k + 1
  int sample_count = 20;
  std::uint64_t seed = 42;

  int dim() const noexcept { return 4 * k + 1; }
};

inline constexpr double kSphereSampleRadius = 0.8;
inline constexpr double kHeisenbergSampleHalfWidth = 1.0;

// Upper-hemisphere graph chart of the unit sphere in C^(2k+1) with the Hopf contact structure.
Chart sphere_chart(int k);
// Heisenberg group with g = 1/4 sum(dx^2 + dy^2) + eta eta, eta = 1/2 (dz - sum y dx);
// phi is derived from the Levi-Civita derivative of xi.
Chart heisenberg_chart(int k);
Chart make_chart(const ModelSpec& spec);

// Deterministic samples; the first point is an axis point.
std::vector<Point> sample_points(const ModelSpec& spec);
// Throws DomainError for points outside the safe sampling region of the model.
void require_sample_point(const ModelSpec& spec, std::span<const double> p);

// Curvature of a Sasakian space form with phi-sectional curvature c, built from the contact data.
DenseTensor space_form_curvature(const SasakianPointData& data, double c);

// Contact curvature building blocks.
struct ContactCurvatureBlocks {
  DenseTensor cr1;  // g_ji delta_k^h - g_ki delta_j^h
  DenseTensor cr2;  // phi_ki phi_j^h - phi_k^h phi_ji + 2 phi_kj phi_i^h
  DenseTensor cr3;  // g_ki eta_j xi^h - g_ji eta_k xi^h
  DenseTensor cr4;  // eta_k eta_i delta_j^h - eta_j eta_i delta_k^h
};
ContactCurvatureBlocks contact_curvature_blocks(const SasakianPointData& data);

// Coefficients of the blocks in the deformed curvature of a space form, as polynomials in rho.
struct ContactCurvatureCoefficients {
  EvenPolynomial a1, a2, a3, a4;
};
ContactCurvatureCoefficients contact_curvature_coefficients(double c);

// Space form curvature split as S1 + S2 + S3 with S1 = (c+3)/4 CR1, S2 = -(c-1)/4 P and
// S3 = (c-1)/4 (3 CR4 + 2 CR3), where P is the quadratic deformation bracket.
struct SpaceFormSplit {
  DenseTensor s1, s2, s3;
};
SpaceFormSplit space_form_split(const SasakianPointData& data, double c);
// S2 + rho^2 R2 = -((c-1)/4 + rho^2) P
DenseTensor shifted_quadratic_part(const SasakianPointData& data, double c, double rho);

// Frozen sample points stored as versioned key-value text.
struct PointFixture {
  int version = 1;
  ModelSpec spec;
  std::vector<Point> points;
  std::map<std::string, double> bounds;
};
void write_fixture(std::ostream& os, const PointFixture& fixture);
PointFixture read_fixture(std::istream& is);

}  // namespace sasaki
