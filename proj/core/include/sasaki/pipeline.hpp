#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sasaki/cs_form.hpp"
#include "sasaki/lemmas.hpp"
#include "sasaki/models.hpp"
#include "sasaki/report.hpp"
#include "sasaki/sasakian.hpp"

namespace sasaki {

struct CurvatureTolerances {
  double space_form = 1e-8;
  double bianchi = 1e-8;
  double antisymmetry = 1e-8;
  double xi_contraction = 1e-8;
  double metric_compatibility = 1e-8;
  double inverse = 1e-12;
  double christoffel_fd = 1e-6;
  double curvature_fd = 1e-5;
  double killing = 1e-8;
};

struct ToleranceSet {
  SasakianTolerances structure;
  CurvatureTolerances curvature;
  CSTolerances cs;
  LemmaTolerances lemmas;
  DiffTolerances diff;
};

// Names accepted by apply_tolerance_override, e.g. "cs.leading".
std::vector<std::string> tolerance_names();
// Throws ConfigError for an unknown name or a non-positive value.
void apply_tolerance_override(ToleranceSet& set, const std::string& name, double value);
ToleranceSet resolve_tolerances(const RunConfig& config);

// Throws ConfigError for invalid models, suites, k, grids or counts, and for k >= 2 without the
// slow flag.
void validate(const RunConfig& config);

using ProgressFn = std::function<void(const std::string&)>;

// Runs the requested suites in the fixed order structure, curvature, cs, lemmas, diff, each for
// every requested model. Failures inside a point become failing records named "error".
VerificationReport run(const RunConfig& config, const ProgressFn& progress = {});

// Individual suites for one model, as used by run().
SuiteReport run_structure_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol);
SuiteReport run_curvature_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol,
                                std::span<const double> fd_rho);
SuiteReport run_cs_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol);
SuiteReport run_lemma_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol);
SuiteReport run_diff_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol);

// Deformation checks against finite differences of the h_rho chart.
std::vector<CheckRecord> deformation_fd_checks(const Chart& chart, const SasakianPointData& data,
                                               const CurvatureData& curvature, double rho,
                                               const CurvatureTolerances& tol);

}  // namespace sasaki
