#include "sasaki/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "sasaki/errors.hpp"
#include "sasaki/parallel.hpp"

namespace sasaki {

namespace {

using ToleranceRef = double& (*)(ToleranceSet&);

const std::map<std::string, ToleranceRef>& tolerance_table() {
  static const std::map<std::string, ToleranceRef> table{
      {"structure.algebraic", [](ToleranceSet& t) -> double& { return t.structure.algebraic; }},
      {"structure.differential", [](ToleranceSet& t) -> double& { return t.structure.differential; }},
      {"curvature.space-form", [](ToleranceSet& t) -> double& { return t.curvature.space_form; }},
      {"curvature.bianchi", [](ToleranceSet& t) -> double& { return t.curvature.bianchi; }},
      {"curvature.antisymmetry", [](ToleranceSet& t) -> double& { return t.curvature.antisymmetry; }},
      {"curvature.xi-contraction", [](ToleranceSet& t) -> double& { return t.curvature.xi_contraction; }},
      {"curvature.metric-compatibility",
       [](ToleranceSet& t) -> double& { return t.curvature.metric_compatibility; }},
      {"curvature.inverse", [](ToleranceSet& t) -> double& { return t.curvature.inverse; }},
      {"curvature.christoffel-fd", [](ToleranceSet& t) -> double& { return t.curvature.christoffel_fd; }},
      {"curvature.curvature-fd", [](ToleranceSet& t) -> double& { return t.curvature.curvature_fd; }},
      {"curvature.killing", [](ToleranceSet& t) -> double& { return t.curvature.killing; }},
      {"cs.leading", [](ToleranceSet& t) -> double& { return t.cs.leading; }},
      {"cs.degree-bound", [](ToleranceSet& t) -> double& { return t.cs.degree_bound; }},
      {"cs.remainder", [](ToleranceSet& t) -> double& { return t.cs.remainder; }},
      {"cs.k2-trace", [](ToleranceSet& t) -> double& { return t.cs.k2_trace; }},
      {"cs.purity", [](ToleranceSet& t) -> double& { return t.cs.purity; }},
      {"cs.space-form-factor", [](ToleranceSet& t) -> double& { return t.cs.space_form_factor; }},
      {"cs.fit", [](ToleranceSet& t) -> double& { return t.cs.fit; }},
      {"cs.oracle", [](ToleranceSet& t) -> double& { return t.cs.oracle; }},
      {"cs.vanishing", [](ToleranceSet& t) -> double& { return t.cs.vanishing; }},
      {"cs.nonzero", [](ToleranceSet& t) -> double& { return t.cs.nonzero; }},
      {"lemmas.vanishing", [](ToleranceSet& t) -> double& { return t.lemmas.vanishing; }},
      {"lemmas.exact", [](ToleranceSet& t) -> double& { return t.lemmas.exact; }},
      {"lemmas.collapse", [](ToleranceSet& t) -> double& { return t.lemmas.collapse; }},
      {"lemmas.antisymmetry", [](ToleranceSet& t) -> double& { return t.lemmas.antisymmetry; }},
      {"lemmas.proportionality", [](ToleranceSet& t) -> double& { return t.lemmas.proportionality; }},
      {"diff.purity", [](ToleranceSet& t) -> double& { return t.diff.purity; }},
      {"diff.proportionality", [](ToleranceSet& t) -> double& { return t.diff.proportionality; }},
      {"diff.constant-spread", [](ToleranceSet& t) -> double& { return t.diff.constant_spread; }},
  };
  return table;
}

constexpr double kOracleRho = 0.7;

struct PointContext {
  SasakianPointData data;
  CurvatureData curvature;
  DeformedCurvature r_bar;
};

PointContext make_context(const Chart& chart, std::span<const double> p) {
  PointContext ctx{point_data(chart, p), riemann(chart, p), {RhoPolyTensor(chart.dim, {})}};
  ctx.r_bar = deformed_curvature(ctx.data, *ctx.curvature.riemann);
  return ctx;
}

CheckRecord error_record(const std::exception& e) {
  CheckRecord r;
  r.id = "error";
  r.statement = "point evaluation completed";
  r.residual = 1.0;
  r.tolerance = 0.0;
  r.pass = false;
  r.note = e.what();
  return r;
}

int effective_workers(const RunConfig& config) {
  return config.workers > 0 ? config.workers : worker_count();
}

// Evaluates fn(index, point) for every sample in parallel and concatenates in point order.
template <class Fn>
std::vector<CheckRecord> over_points(const ModelSpec& spec, const std::vector<Point>& points,
                                     int workers, Fn&& fn) {
  std::vector<std::vector<CheckRecord>> per(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        try {
          per[i] = fn(i, points[i]);
        } catch (const std::exception& e) {
          per[i] = {error_record(e)};
        }
        for (auto& r : per[i]) {
          r.model = model_name(spec.kind);
          r.k = spec.k;
          r.point_index = static_cast<int>(i);
          r.point = points[i];
        }
      },
      workers);
  std::vector<CheckRecord> out;
  for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(out));
  return out;
}

SuiteReport new_suite(const std::string& name, const ModelSpec& spec) {
  SuiteReport s;
  s.suite = name;
  s.model = model_name(spec.kind);
  s.k = spec.k;
  return s;
}

double first_nonzero(std::span<const double> grid) {
  for (double r : grid)
    if (r != 0.0) return r;
  return 1.0;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::vector<std::string> tolerance_names() {
  std::vector<std::string> out;
  for (const auto& [name, ref] : tolerance_table()) out.push_back(name);
  return out;
}

void apply_tolerance_override(ToleranceSet& set, const std::string& name, double value) {
  const auto& table = tolerance_table();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown tolerance name: " + name);
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError("tolerance " + name + " must be positive and finite");
  it->second(set) = value;
}

ToleranceSet resolve_tolerances(const RunConfig& config) {
  ToleranceSet set;
  for (const auto& [name, value] : config.tolerances) apply_tolerance_override(set, name, value);
  return set;
}

void validate(const RunConfig& config) {
  if (config.models.empty()) throw ConfigError("no model selected");
  for (const auto& m : config.models) {
    try {
      parse_model(m);
    } catch (const std::exception&) {
      throw ConfigError("unknown model: " + m);
    }
  }
  if (config.k < 1 || config.k > 3) throw ConfigError("k must be 1, 2 or 3");
  if (config.k >= 2 && !config.slow)
    throw ConfigError("k >= 2 runs permutation sums over (4k+1)! terms; pass --slow to allow it");
  if (config.sample_count < 1) throw ConfigError("sample count must be positive");
  if (config.workers < 0) throw ConfigError("worker count must be nonnegative");
  std::set<std::string> seen;
  for (const auto& s : config.suites) {
    if (!contains(kSuiteOrder, s)) throw ConfigError("unknown suite: " + s);
    if (!seen.insert(s).second) throw ConfigError("suite listed twice: " + s);
  }
  for (double r : config.rho_grid)
    if (!std::isfinite(r)) throw ConfigError("rho values must be finite");
  if (config.rho_grid.empty() && (seen.count("cs") || seen.count("diff")))
    throw ConfigError("the cs and diff suites need a nonempty rho grid");
  resolve_tolerances(config);
}

std::vector<CheckRecord> deformation_fd_checks(const Chart& chart, const SasakianPointData& data,
                                               const CurvatureData& curvature, double rho,
                                               const CurvatureTolerances& tol) {
  std::vector<CheckRecord> out;
  const Chart deformed = deformed_chart(chart, rho);
  const CurvatureData direct = riemann(deformed, data.point);
  const DenseTensor gamma_bar = deformed_christoffel(data, curvature.gamma, rho);
  auto gamma_rec = make_check("deformation.christoffel-fd",
                              "Gamma-bar = Gamma - rho^2 (phi_i^k eta_j + phi_j^k eta_i)",
                              (gamma_bar - direct.gamma).max_abs(),
                              std::max(gamma_bar.max_abs(), 1.0), tol.christoffel_fd);
  gamma_rec.rho = rho;
  out.push_back(std::move(gamma_rec));

  const DenseTensor exact = exact_deformed_curvature(data, *curvature.riemann).r_bar.evaluate(rho);
  auto curv_rec = make_check("deformation.curvature-fd",
                             "curvature of h_rho = R - rho^2 (bracket with -phi phi block) - rho^4 (...)",
                             (exact - *direct.riemann).max_abs(), exact.max_abs(), tol.curvature_fd);
  curv_rec.rho = rho;
  curv_rec.values["fd_error_estimate"] = direct.fd_error_estimate;
  out.push_back(std::move(curv_rec));

  const DenseTensor closed = deformed_curvature(data, *curvature.riemann).r_bar.evaluate(rho);
  auto closed_rec = make_check("deformation.curvature-fd.closed-form",
                               "R-bar = R - rho^2 (bracket) - rho^4 (eta_k eta_i delta_j^h - ...)",
                               (closed - *direct.riemann).max_abs(), closed.max_abs(),
                               tol.curvature_fd);
  closed_rec.rho = rho;
  closed_rec.informational = true;
  closed_rec.note = "the phi phi block of the closed form has the opposite sign to the curvature of h_rho";
  out.push_back(std::move(closed_rec));

  // The h_rho-dual of the unit Reeb field xi / sqrt(1 + rho^2) is sqrt(1 + rho^2) eta.
  const ContactDerivatives nab = contact_derivatives(chart, data.point, curvature);
  const DenseTensor shift = contract_product(gamma_bar - curvature.gamma, 2, data.eta, 0);
  const DenseTensor nabla_dual = std::sqrt(1.0 + rho * rho) * (nab.nabla_eta - shift);
  const DenseTensor sym = nabla_dual + permute_slots(nabla_dual, std::vector<int>{1, 0});
  auto killing = make_check("deformation.killing", "xi-bar is Killing for h_rho", sym.max_abs(),
                            nabla_dual.max_abs(), tol.killing);
  killing.rho = rho;
  out.push_back(std::move(killing));
  return out;
}

SuiteReport run_structure_suite(const ModelSpec& spec, const RunConfig& config,
                                const ToleranceSet& tol) {
  SuiteReport suite = new_suite("structure", spec);
  const Chart chart = make_chart(spec);
  suite.records = over_points(spec, sample_points(spec), effective_workers(config),
                              [&](std::size_t, const Point& p) {
                                return check_sasakian(chart, p, tol.structure);
                              });
  return suite;
}

SuiteReport run_curvature_suite(const ModelSpec& spec, const RunConfig& config,
                                const ToleranceSet& tol, std::span<const double> fd_rho) {
  SuiteReport suite = new_suite("curvature", spec);
  const Chart chart = make_chart(spec);
  const double c = space_form_constant(spec.kind);
  const auto& t = tol.curvature;
  suite.records = over_points(
      spec, sample_points(spec), effective_workers(config), [&](std::size_t, const Point& p) {
        const PointContext ctx = make_context(chart, p);
        const DenseTensor& r = *ctx.curvature.riemann;
        const double scale = r.max_abs();
        std::vector<CheckRecord> out;
        const DenseTensor oracle = space_form_curvature(ctx.data, c);
        auto sf = make_check("curvature.space-form", "R = space form curvature with c",
                             (r - oracle).max_abs(), scale, t.space_form);
        sf.values["c"] = c;
        out.push_back(std::move(sf));
        out.push_back(make_check("curvature.bianchi", "R_[kji]^h = 0",
                                 skew_symmetrize(r, {0, 1, 2}).max_abs(), scale, t.bianchi));
        const DenseTensor lowered = lower_curvature(r, ctx.data.g);
        out.push_back(make_check("curvature.pair-antisymmetry", "R_kjih = -R_kjhi",
                                 (lowered + permute_slots(lowered, std::vector<int>{0, 1, 3, 2})).max_abs(),
                                 lowered.max_abs(), t.antisymmetry));
        const DenseTensor rx = xi_curvature_contraction(r, ctx.data);
        const DenseTensor predicted = xi_contraction_prediction(ctx.data, 0.0);
        out.push_back(make_check("curvature.xi-contraction",
                                 "R_kji^h xi^i = -(eta_k delta_j^h - eta_j delta_k^h)",
                                 (rx - predicted).max_abs(), predicted.max_abs(), t.xi_contraction));
        const DenseTensor dg =
            chart.metric_partials ? chart.metric_partials(p)
                                  : fd_derivative(chart.metric, p, chart.domain).derivative;
        const DenseTensor nabla_g = covariant_derivative(ctx.data.g, dg, ctx.curvature.gamma);
        out.push_back(make_check("curvature.metric-compatibility", "nabla_k g_ij = 0",
                                 nabla_g.max_abs(), std::max(dg.max_abs(), 1.0),
                                 t.metric_compatibility));
        for (double rho : config.rho_grid) {
          const DeformedMetric h = deform_metric(ctx.data, rho);
          const DenseTensor id = contract_product(h.h, 1, h.h_inv, 0);
          auto inv = make_check("deformation.inverse", "h_ik h^kj = delta_i^j",
                                (id - DenseTensor::kronecker(spec.dim())).max_abs(), 1.0, t.inverse);
          inv.rho = rho;
          inv.values["alpha"] = h.alpha;
          out.push_back(std::move(inv));
          const DenseTensor rxb = xi_curvature_contraction(ctx.r_bar.r_bar.evaluate(rho), ctx.data);
          const DenseTensor pred = xi_contraction_prediction(ctx.data, rho);
          auto xc = make_check("deformation.xi-contraction",
                               "R-bar_kji^h xi^i = -(1+rho^2)^2 (eta_k delta_j^h - eta_j delta_k^h)",
                               (rxb - pred).max_abs(), pred.max_abs(), t.xi_contraction);
          xc.rho = rho;
          out.push_back(std::move(xc));
        }
        for (double rho : fd_rho) {
          auto fd = deformation_fd_checks(chart, ctx.data, ctx.curvature, rho, t);
          std::move(fd.begin(), fd.end(), std::back_inserter(out));
        }
        return out;
      });
  return suite;
}

SuiteReport run_cs_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol) {
  SuiteReport suite = new_suite("cs", spec);
  const Chart chart = make_chart(spec);
  const double c = space_form_constant(spec.kind);
  const auto points = sample_points(spec);
  const int workers = effective_workers(config);
  std::vector<std::optional<CSIntegrandResult>> results(points.size());
  std::vector<std::optional<PointContext>> contexts(points.size());
  suite.records = over_points(spec, points, workers, [&](std::size_t i, const Point& p) {
    PointContext ctx = make_context(chart, p);
    CSIntegrandResult res = pullback_cs_component(ctx.r_bar, ctx.data, spec.k);
    res.model = spec;
    res.point_index = static_cast<int>(i);
    std::vector<CheckRecord> out = space_form_factor_check(res, c, config.rho_grid, tol.cs);
    out.push_back(vandermonde_check(res, ctx.r_bar, ctx.data, tol.cs));
    const CSIntegrandResult exact = [&] {
      CSIntegrandResult e = pullback_cs_component(
          exact_deformed_curvature(ctx.data, *ctx.curvature.riemann), ctx.data, spec.k);
      e.model = spec;
      e.point_index = static_cast<int>(i);
      return e;
    }();
    out.push_back(exact_curvature_factor_check(exact, res, c, tol.cs));
    if (spec.k == 1)
      out.push_back(permutation_oracle_check(res, ctx.r_bar, ctx.data, kOracleRho, tol.cs, 1));
    results[i] = std::move(res);
    if (i == 0) contexts[i] = std::move(ctx);
    return out;
  });
  // At k >= 2 the permutation sum is expensive; run it once with every worker.
  if (spec.k >= 2 && results[0] && contexts[0]) {
    auto rec = permutation_oracle_check(*results[0], contexts[0]->r_bar, contexts[0]->data,
                                        kOracleRho, tol.cs, workers);
    rec.point_index = 0;
    suite.records.push_back(std::move(rec));
  }
  std::vector<CSIntegrandResult> done;
  for (auto& r : results)
    if (r) done.push_back(*r);
  auto leading = leading_coefficient_check(done, spec.k, tol.cs);
  std::move(leading.begin(), leading.end(), std::back_inserter(suite.records));
  for (const auto& r : done) {
    IntegrandSummary s;
    s.point_index = r.point_index;
    s.poly.assign(r.poly.coefficients().begin(), r.poly.coefficients().end());
    s.factored.assign(r.factored.coefficients().begin(), r.factored.coefficients().end());
    s.volume = r.volume_component;
    s.leading = r.leading();
    s.ratio = r.leading() / r.volume_component;
    suite.integrands.push_back(std::move(s));
  }
  return suite;
}

SuiteReport run_lemma_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol) {
  SuiteReport suite = new_suite("lemmas", spec);
  const Chart chart = make_chart(spec);
  const double c = space_form_constant(spec.kind);
  const double rho_s = first_nonzero(config.rho_grid);
  const auto& t = tol.lemmas;
  suite.records = over_points(
      spec, sample_points(spec), effective_workers(config), [&](std::size_t, const Point& p) {
        const PointContext ctx = make_context(chart, p);
        std::vector<CheckRecord> out;
        auto append = [&](std::vector<CheckRecord> v) {
          std::move(v.begin(), v.end(), std::back_inserter(out));
        };
        append(check_component_bianchi(ctx.r_bar, ctx.data, t));
        append(check_RE_R3_products(ctx.r_bar, ctx.data, t));
        append(check_R2_split_products(ctx.data, t));
        append(check_B_collapse(ctx.data, spec.k, t));
        if (spec.kind == ModelKind::sphere)
          append(check_sphere_R1_lemma(ctx.r_bar, ctx.data, spec.kind, t));
        else
          append(r1_product_controls(ctx.r_bar, ctx.data, t));
        append(check_space_form_S_lemma(ctx.data, c, rho_s, t));
        for (double rho : config.rho_grid) append(check_pair_antisymmetry(ctx.r_bar, ctx.data, rho, t));
        return out;
      });
  return suite;
}

SuiteReport run_diff_suite(const ModelSpec& spec, const RunConfig& config, const ToleranceSet& tol) {
  SuiteReport suite = new_suite("diff", spec);
  if (spec.kind != ModelKind::sphere) {
    suite.notes.push_back("skipped: the nu-free chain structure is stated for the round sphere only");
    return suite;
  }
  const Chart chart = make_chart(spec);
  const double rho_literal = first_nonzero(config.rho_grid);
  suite.records = over_points(
      spec, sample_points(spec), effective_workers(config), [&](std::size_t, const Point& p) {
        const PointContext ctx = make_context(chart, p);
        std::vector<CheckRecord> out = diff_integrand_check(ctx.r_bar, ctx.data, spec.k, spec.kind, tol.diff);
        auto append = [&](std::vector<CheckRecord> v) {
          std::move(v.begin(), v.end(), std::back_inserter(out));
        };
        append(check_CR_replacement(ctx.r_bar, ctx.data, spec.k, spec.kind, rho_literal, tol.lemmas));
        append(check_CR_products(ctx.data, spec.kind, tol.lemmas));
        append(check_CR_decomposition(ctx.r_bar, ctx.data, space_form_constant(spec.kind), tol.lemmas));
        return out;
      });
  suite.records.push_back(proportionality_constant_check(suite.records, tol.diff));
  return suite;
}

VerificationReport run(const RunConfig& config, const ProgressFn& progress) {
  validate(config);
  const ToleranceSet tol = resolve_tolerances(config);
  VerificationReport report;
  report.config = config;
  std::vector<double> fd_rho;
  for (double r : config.rho_grid)
    if (r != 0.0) fd_rho.push_back(r);
  for (const auto& name : kSuiteOrder) {
    if (!contains(config.suites, name)) continue;
    for (const auto& model : config.models) {
      ModelSpec spec{parse_model(model), config.k, config.sample_count, config.seed};
      if (progress) progress(name + " / " + model + " (k = " + std::to_string(config.k) + ")");
      const auto start = std::chrono::steady_clock::now();
      SuiteReport suite;
      if (name == "structure") suite = run_structure_suite(spec, config, tol);
      else if (name == "curvature") suite = run_curvature_suite(spec, config, tol, fd_rho);
      else if (name == "cs") suite = run_cs_suite(spec, config, tol);
      else if (name == "lemmas") suite = run_lemma_suite(spec, config, tol);
      else suite = run_diff_suite(spec, config, tol);
      if (config.timing)
        suite.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.suites.push_back(std::move(suite));
    }
  }
  return report;
}

}  // namespace sasaki
