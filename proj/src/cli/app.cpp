#include "uinf/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "io.hpp"
#include "uinf/gauge_fields.hpp"
#include "uinf/identities.hpp"
#include "uinf/monopole.hpp"
#include "uinf/reduction.hpp"
#include "uinf/sphere_algebra.hpp"

namespace uinf::cli {

namespace {

constexpr double kMasterTol = 1e-10;
constexpr double kCovariantTol = 1e-9;
constexpr double kVanishingTol = 1e-12;
constexpr double kIdentityTol = 1e-10;

struct RunConfig {
  std::uint64_t seed = 1;
  std::string out, csv;
  std::vector<int> dims{3, 4, 5, 6, 7, 8};
  std::optional<int> trials, lmax, D;
  std::optional<double> b, e, q, scale;
  std::vector<double> b_list{0.4, 0.2, 0.1, 0.05};
  std::string model = "ym";
  double alpha = 0.5;
  double C = 1.0;
  std::vector<double> alpha_list;
  double xi_min = 1e-3;
  double xi_max = 25.0;
  int n_points = 4000;
  double v = 1.0;
  double beta = 1.0;
  double evb = 0.1;
  std::vector<double> evb_list{0.1, 0.2, 0.3};
  SecondLineCoefficients coeffs;
  std::string f_path, g_path;
};

struct Output {
  Json report;
  std::optional<Csv> csv;
  bool csv_primary = false;
  bool passed = true;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

double closure_constant() {
  static const double c = su2_generators().closure_constant;
  return c;
}

Json meta(const RunConfig& cfg, const std::string& command, Json grid) {
  return {{"version", kVersion},
          {"command", command},
          {"seed", cfg.seed},
          {"grid", std::move(grid)},
          {"sign_s", calibrated_sign()},
          {"kappa", kDeltaYmRatio},
          {"eps_scalar_ratio", kEpsScalarRatio},
          {"eps_ym_ratio", kEpsYmRatio},
          {"closure_c", closure_constant()}};
}

Json sphere_grid_json(int l_max, int degree) {
  const auto g = SphereGrid::for_degree(degree);
  return {{"l_max", l_max}, {"n_theta", g.n_theta()}, {"n_phi", g.n_phi()}};
}

Json radial_grid_json(const RadialGrid& g) {
  return {{"n", g.size()}, {"xi_min", g.start()}, {"xi_max", g.cutoff()}, {"gamma", g.gamma}};
}

Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// ---------------------------------------------------------------- identities

Output cmd_identities(const RunConfig& cfg) {
  const int trials = cfg.trials.value_or(1000);
  require(trials > 0, "--trials must be positive");
  require(!cfg.dims.empty(), "--dims must not be empty");
  for (int n : cfg.dims) require(n >= 2 && n <= kMaxTensorDim, "--dims entries must lie in [2, 8]");

  std::vector<int> quartic;
  for (int n : cfg.dims) {
    if (n >= 4) quartic.push_back(n);
  }
  std::vector<IdentityReport> reports;
  reports.push_back(run_identity(Identity::DeltaScalarExpansion, cfg.dims, trials, cfg.seed));
  if (!quartic.empty()) reports.push_back(run_identity(Identity::DeltaYmProportional, quartic, trials, cfg.seed));
  reports.push_back(run_identity(Identity::EpsScalar3d, std::vector<int>{3}, trials, cfg.seed));
  reports.push_back(run_identity(Identity::EpsYm4d, std::vector<int>{4}, trials, cfg.seed));

  Output o;
  Json list = Json::array();
  for (const auto& r : reports) {
    list.push_back({{"identity", r.identity},
                    {"dims", r.dims},
                    {"trials", r.trials},
                    {"max_rel_err", r.max_rel_err},
                    {"constant", r.constant},
                    {"pinned_constant", r.pinned_constant},
                    {"spread", r.spread}});
    o.passed = o.passed && r.max_rel_err < kIdentityTol && r.spread < kIdentityTol;
  }
  o.report = {{"meta", meta(cfg, "identities", nullptr)}, {"identities", list}, {"passed", o.passed}};
  return o;
}

// ----------------------------------------------------------------- reduction

struct ReduceParams {
  int D, L;
  double b, e, q, scale;
  int trials;
};

ReduceParams reduce_params(const RunConfig& cfg, int default_D, int default_L, double default_scale) {
  ReduceParams p;
  p.D = cfg.D.value_or(default_D);
  p.L = cfg.lmax.value_or(default_L);
  p.b = cfg.b.value_or(1.0);
  p.trials = cfg.trials.value_or(1);
  p.scale = cfg.scale.value_or(default_scale);
  require(p.D >= 1 && p.D + 2 <= kMaxTensorDim, "--D must lie in [1, 6]");
  require(p.L >= 1, "--lmax must be positive");
  require(p.b > 0.0, "--b must be positive");
  require(p.trials > 0, "--trials must be positive");
  require(p.scale > 0.0, "--scale must be positive");
  require(!(cfg.q && cfg.e), "give either --q or --e, not both");
  if (cfg.q) {
    require(*cfg.q != 0.0, "--q must be nonzero");
    p.q = *cfg.q;
    p.e = p.q / (p.b * p.b);
  } else {
    p.e = cfg.e.value_or(2.0);
    require(p.e != 0.0, "--e must be nonzero");
    p.q = p.e * p.b * p.b;
  }
  return p;
}

Json report_json(const ReductionReport& r) {
  Json groups = Json::object(), mags = Json::object(), res = Json::object();
  for (int k = static_cast<int>(r.groups.size()) - 1; k >= 0; --k) {
    groups["k" + std::to_string(k)] = r.groups[k];
    mags["k" + std::to_string(k)] = r.magnitudes[k];
  }
  for (std::size_t i = 0; i < r.residuals.size(); ++i) res[r.residual_names[i]] = r.residuals[i];
  return {{"model", r.model},
          {"D", r.D},
          {"b", r.b},
          {"q", r.q},
          {"e", r.e},
          {"sign_s", r.sign},
          {"groups", groups},
          {"magnitudes", mags},
          {"total", r.total()},
          {"oracle", r.oracle},
          {"reduced_reference", r.reduced_reference},
          {"reduced_reference_over_4pi", r.normalized_reference()},
          {"residuals", res}};
}

bool residuals_pass(const ReductionReport& r) {
  for (std::size_t i = 0; i < r.residuals.size(); ++i) {
    const auto& name = r.residual_names[i];
    const double tol = name == "master" ? kMasterTol : name == "covariant" ? kCovariantTol : kVanishingTol;
    if (!(r.residuals[i] < tol)) return false;
  }
  return true;
}

Output cmd_reduce_lines(const RunConfig& cfg, bool scalar) {
  const auto p = reduce_params(cfg, 4, 3, 1.0);
  if (!scalar) require(p.D >= 2, "ym reduction needs --D >= 2");
  const Background bg{p.q};
  const auto metric = BlockMetric::lorentzian(p.D, p.b);
  Output o;
  Json trials = Json::array();
  Json worst = Json::object();
  double massless_max = 0.0;
  for (int t = 0; t < p.trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const auto gc = GaugeConfig::random(p.D, p.L, rng, 1.0, p.scale);
    const auto s = AdjointScalar::random(p.D, p.L, rng, p.scale);
    const auto r = scalar ? scalar_line_values(gc, s, bg, metric) : ym_line_values(gc, bg, metric);
    auto j = report_json(r);
    j["trial"] = t;
    if (scalar) {
      const double m = scalar_sector_without_derivatives(s, bg, metric);
      j["massless_value"] = m;
      massless_max = std::max(massless_max, std::abs(m));
      o.passed = o.passed && m == 0.0;
    }
    trials.push_back(j);
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
      const auto& name = r.residual_names[i];
      worst[name] = std::max(worst.value(name, 0.0), r.residuals[i]);
    }
    o.passed = o.passed && residuals_pass(r);
  }
  const std::string cmd = scalar ? "reduce scalar" : "reduce ym";
  o.report = {{"meta", meta(cfg, cmd, sphere_grid_json(p.L, 4 * p.L + 4))},
              {"quantized", bg.quantized()},
              {"max_residuals", worst}};
  if (scalar) o.report["massless_max"] = massless_max;
  o.report["trials"] = trials;
  o.report["passed"] = o.passed;
  return o;
}

Output cmd_reduce_two_dim(const RunConfig& cfg) {
  require(!cfg.D || *cfg.D == 2, "two-dim reduction requires --D 2");
  const auto p = reduce_params(cfg, 2, 2, 1.0);
  Output o;
  Json trials = Json::array();
  for (int t = 0; t < p.trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const auto gc = GaugeConfig::random(2, p.L, rng, 1.0, p.scale);
    const auto r = two_dim_exact_check(gc, Background{p.q}, p.b);
    Json at_b = Json::array();
    bool ok = r.rel_err < kCovariantTol && r.residual_1 < kVanishingTol && r.residual_0 < kVanishingTol;
    for (double b : cfg.b_list) {
      require(b > 0.0, "--b-list entries must be positive");
      const auto rb = two_dim_exact_check(gc, Background{p.e * b * b}, b);
      at_b.push_back({{"b", b}, {"rel_err", rb.rel_err}, {"residual_1", rb.residual_1}, {"residual_0", rb.residual_0}});
      ok = ok && rb.rel_err < kCovariantTol && rb.residual_1 < kVanishingTol && rb.residual_0 < kVanishingTol;
    }
    trials.push_back({{"trial", t},
                      {"b", r.b},
                      {"q", r.q},
                      {"eps_integral", r.eps_integral},
                      {"reference", r.reference},
                      {"constant", r.constant},
                      {"pinned_constant", r.pinned_constant},
                      {"rel_err", r.rel_err},
                      {"residual_1", r.residual_1},
                      {"residual_0", r.residual_0},
                      {"groups", report_json(r.groups)},
                      {"other_b", at_b}});
    o.passed = o.passed && ok;
  }
  o.report = {{"meta", meta(cfg, "reduce two-dim", sphere_grid_json(p.L, 4 * p.L + 4))},
              {"trials", trials},
              {"passed", o.passed}};
  return o;
}

Output cmd_reduce_scan(const RunConfig& cfg) {
  const auto p = reduce_params(cfg, 4, 3, 1.0);
  require(cfg.model == "scalar" || cfg.model == "ym", "--model must be scalar or ym");
  require(!cfg.b_list.empty(), "--b-list must not be empty");
  for (double b : cfg.b_list) require(b > 0.0, "--b-list entries must be positive");
  auto rng = trial_rng(cfg.seed, 0);
  const auto gc = GaugeConfig::random(p.D, p.L, rng, 1.0, p.scale);
  const auto s = AdjointScalar::random(p.D, p.L, rng, p.scale);
  const auto scan = b_scaling_scan(cfg.model, gc, s, p.e, p.D, cfg.b_list);
  Output o;
  o.csv_primary = true;
  Csv csv{{"b", "q", "covariant_group", "residual_group_1", "residual_group_0", "ratio", "fit_exponent"}, {}};
  Json rows = Json::array();
  for (const auto& r : scan.rows) {
    csv.rows.push_back({r.b, r.q, r.covariant, r.residual_1, r.residual_0, r.ratio, scan.fit_exponent});
    rows.push_back({{"b", r.b},
                    {"q", r.q},
                    {"covariant_group", r.covariant},
                    {"residual_group_1", r.residual_1},
                    {"residual_group_0", r.residual_0},
                    {"ratio", r.ratio}});
  }
  o.csv = csv;
  o.passed = scan.fit_exponent >= 1.95;
  o.report = {{"meta", meta(cfg, "reduce scan-b", sphere_grid_json(p.L, 4 * p.L + 4))},
              {"model", scan.model},
              {"e", scan.e},
              {"rows", rows},
              {"fit_exponent", scan.fit_exponent},
              {"passed", o.passed}};
  return o;
}

Output cmd_reduce_born_infeld(const RunConfig& cfg) {
  const auto p = reduce_params(cfg, 4, 2, 0.2);
  require(cfg.alpha > 0.0, "--alpha must be positive");
  require(cfg.C != 0.0, "--C must be nonzero");
  require(cfg.b_list.size() >= 2, "--b-list needs at least two entries");
  for (double b : cfg.b_list) require(b > 0.0, "--b-list entries must be positive");
  for (double a : cfg.alpha_list) require(a > 0.0, "--alpha-list entries must be positive");
  auto rng = trial_rng(cfg.seed, 0);
  const auto gc = GaugeConfig::random(p.D, p.L, rng, 1.0, p.scale);
  const auto r = born_infeld_reduction_check(gc, p.e, cfg.alpha, cfg.C, cfg.b_list, cfg.alpha_list);
  Output o;
  Csv csv{{"b", "q", "full", "reduced", "ratio", "drift"}, {}};
  Json rows = Json::array(), arows = Json::array();
  for (const auto& row : r.rows) {
    csv.rows.push_back({row.b, row.q, row.full, row.reduced, row.ratio, row.drift});
    rows.push_back({{"b", row.b},
                    {"q", row.q},
                    {"full", row.full},
                    {"reduced", row.reduced},
                    {"ratio", row.ratio},
                    {"drift", row.drift}});
  }
  bool shrinking = r.alpha_rows.size() >= 2;
  for (std::size_t i = 0; i < r.alpha_rows.size(); ++i) {
    const auto& a = r.alpha_rows[i];
    arows.push_back({{"alpha", a.alpha}, {"bracket_share", a.bracket_share}, {"maxwell_rel_err", a.maxwell_rel_err}});
    if (i > 0 && !(a.bracket_share < r.alpha_rows[i - 1].bracket_share)) shrinking = false;
  }
  o.csv = csv;
  o.passed = r.drift_decreasing && shrinking;
  o.report = {{"meta", meta(cfg, "reduce born-infeld", sphere_grid_json(p.L, 4 * p.L + 4))},
              {"e", r.e},
              {"alpha", r.alpha},
              {"C", r.C},
              {"rows", rows},
              {"drift_decreasing", r.drift_decreasing},
              {"alpha_experiment", {{"b", r.alpha_b}, {"rows", arows}, {"share_exponent", r.alpha_exponent},
                                    {"share_decreasing", shrinking}}},
              {"passed", o.passed}};
  return o;
}

// ------------------------------------------------------------------ monopole

RadialGrid monopole_grid(const RunConfig& cfg) {
  require(cfg.xi_min > 0.0, "--xi-min must be positive");
  require(cfg.xi_max > cfg.xi_min, "--xi-max must exceed --xi-min");
  require(cfg.n_points >= 8, "--n must be at least 8");
  return RadialGrid::graded(cfg.xi_min, cfg.xi_max, cfg.n_points);
}

EnergyParams energy_params(const RunConfig& cfg, std::ostream& err) {
  EnergyParams p{cfg.v, cfg.beta, cfg.e.value_or(1.0), cfg.b.value_or(1.0)};
  require(p.v > 0.0 && p.beta > 0.0 && p.e > 0.0 && p.b > 0.0, "--v, --beta, --e, --b must be positive");
  if (!p.e_quantized()) err << fmt::format("warning: e = {} is not of the form 2/n\n", p.e);
  return p;
}

Json coeffs_json(const SecondLineCoefficients& c) {
  return {{"c_hk", c.c_hk}, {"c_dh", c.c_dh}, {"c_h", c.c_h}, {"c_k", c.c_k}, {"c_xi", c.c_xi},
          {"xi_power", c.xi_power}};
}

Json energy_json(const EnergyBreakdown& e) {
  return {{"E0_integral", e.E0_integral},
          {"E0_truncated", e.E0_truncated},
          {"tail", e.tail},
          {"tail_applied", e.tail_applied},
          {"correction_integral", e.correction_integral},
          {"epsilon", e.epsilon},
          {"prefactor", e.prefactor},
          {"total", e.total},
          {"cutoff", e.cutoff}};
}

Csv profile_csv(const MonopoleProfile& p, const std::vector<double>& K1, const std::vector<double>& H1) {
  Csv csv{{"xi", "K", "H", "K1", "H1"}, {}};
  for (int i = 0; i < p.grid.size(); ++i) csv.rows.push_back({p.grid.xi[i], p.K[i], p.H[i], K1[i], H1[i]});
  return csv;
}

Output cmd_monopole_solve(const RunConfig& cfg, std::ostream& err) {
  const auto grid = monopole_grid(cfg);
  const auto params = energy_params(cfg, err);
  const auto p = bps_profiles(grid);
  const auto res = bogomolnyi_residuals(p);
  const auto e = energy(p, 0.0, params, cfg.coeffs);
  Output o;
  o.csv_primary = true;
  const std::vector<double> zero(grid.size(), 0.0);
  o.csv = profile_csv(p, zero, zero);
  o.passed = res.k < 1e-8 && res.h < 1e-8 && std::abs(e.E0_integral - 1.0) < 1e-4;
  o.report = {{"meta", meta(cfg, "monopole solve", radial_grid_json(grid))},
              {"bogomolnyi_residual_K", res.k},
              {"bogomolnyi_residual_H", res.h},
              {"energy", energy_json(e)},
              {"E0", e.prefactor * e.E0_integral},
              {"passed", o.passed}};
  err << fmt::format("first-line integral {:.4f} (cutoff {})\n", e.E0_integral, e.cutoff);
  return o;
}

Output cmd_monopole_energy(const RunConfig& cfg, std::ostream& err) {
  const auto grid = monopole_grid(cfg);
  const auto params = energy_params(cfg, err);
  require(cfg.evb >= 0.0, "--evb must be non-negative");
  const auto p = bps_profiles(grid);
  const auto e = energy(p, cfg.evb, params, cfg.coeffs);
  // Coarser grid with every other point for the convergence check.
  const auto coarse = RadialGrid::graded(cfg.xi_min, cfg.xi_max, (cfg.n_points + 1) / 2);
  const auto ec = energy(bps_profiles(coarse), cfg.evb, params, cfg.coeffs);
  const double delta = std::abs(e.E0_integral - ec.E0_integral);
  Output o;
  o.passed = delta < 1e-6;
  if (!o.passed) err << fmt::format("grid too coarse: first-line integral moved by {:.3e} between resolutions\n", delta);
  o.report = {{"meta", meta(cfg, "monopole energy", radial_grid_json(grid))},
              {"evb", cfg.evb},
              {"params", {{"v", params.v}, {"beta", params.beta}, {"e", params.e}, {"b", params.b},
                          {"e_quantized", params.e_quantized()}}},
              {"coefficients", coeffs_json(cfg.coeffs)},
              {"energy", energy_json(e)},
              {"convergence_delta", delta},
              {"passed", o.passed}};
  return o;
}

Output cmd_monopole_perturb(const RunConfig& cfg) {
  const auto grid = monopole_grid(cfg);
  require(cfg.evb >= 0.0, "--evb must be non-negative");
  const auto base = bps_profiles(grid);
  const auto pert = perturbation_solve(base, epsilon_from_evb(cfg.evb), cfg.coeffs);
  const std::vector<double> zero(grid.size(), 0.0);
  const auto homogeneous = linearized_solve(base, zero, zero);
  double hmax = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    hmax = std::max({hmax, std::abs(homogeneous.K1[i]), std::abs(homogeneous.H1[i])});
  }
  Output o;
  o.csv_primary = true;
  o.csv = profile_csv(base, pert.K1, pert.H1);
  const bool origin_ok = std::abs(pert.origin_exponent_K - 2.0) <= 0.1 && std::abs(pert.origin_exponent_H - 2.0) <= 0.1;
  const bool tail_ok = std::abs(pert.tail_slope_K + 1.0) <= 0.05;
  o.report = {{"meta", meta(cfg, "monopole perturb", radial_grid_json(grid))},
              {"epsilon", pert.epsilon},
              {"coefficients", coeffs_json(cfg.coeffs)},
              {"origin_exponent_K1", pert.origin_exponent_K},
              {"origin_exponent_H1", pert.origin_exponent_H},
              {"tail_slope_K1", pert.tail_slope_K},
              {"homogeneous_max", hmax},
              {"checks", {{"origin_exponents", origin_ok}, {"tail_slope", tail_ok}, {"unique", hmax == 0.0}}}};
  return o;
}

Output cmd_monopole_scan(const RunConfig& cfg) {
  const auto grid = monopole_grid(cfg);
  require(!cfg.evb_list.empty(), "--evb-list must not be empty");
  for (double x : cfg.evb_list) require(x >= 0.0, "--evb-list entries must be non-negative");
  const auto t = energy_correction(bps_profiles(grid), cfg.evb_list, cfg.coeffs);
  Output o;
  o.csv_primary = true;
  Csv csv{{"evb", "epsilon", "E0_integral", "correction_integral", "dE_over_E0", "cutoff"}, {}};
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    csv.rows.push_back({r.evb, r.epsilon, r.E0_integral, r.correction_integral, r.dE_over_E0, r.cutoff});
    rows.push_back({{"evb", r.evb}, {"epsilon", r.epsilon}, {"dE_over_E0", r.dE_over_E0}});
  }
  o.csv = csv;
  o.passed = t.r_squared > 0.9999;
  o.report = {{"meta", meta(cfg, "monopole scan-evb", radial_grid_json(grid))},
              {"coefficients", coeffs_json(cfg.coeffs)},
              {"rows", rows},
              {"slope", t.slope},
              {"r_squared", t.r_squared},
              {"passed", o.passed}};
  return o;
}

// ------------------------------------------------------------------- algebra

Output cmd_structure_constants(const RunConfig& cfg) {
  const int L = cfg.lmax.value_or(2);
  require(L >= 1, "--lmax must be positive");
  const auto sc = structure_constants(L);
  Output o;
  o.csv_primary = true;
  Csv csv{{"l1", "m1", "l2", "m2", "l3", "m3", "re", "im"}, {}};
  for (int l1 = 0; l1 <= L; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= L; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          for (int l3 = 0; l3 <= L; ++l3) {
            for (int m3 = -l3; m3 <= l3; ++m3) {
              const cplx v = sc(l1, m1, l2, m2, l3, m3);
              if (std::abs(v) < 1e-12) continue;
              csv.rows.push_back({double(l1), double(m1), double(l2), double(m2), double(l3), double(m3), v.real(),
                                  v.imag()});
            }
          }
        }
      }
    }
  }
  o.report = {{"meta", meta(cfg, "algebra structure-constants", sphere_grid_json(L, 4 * L))},
              {"entries", csv.rows.size()}};
  o.csv = std::move(csv);
  return o;
}

Output cmd_su2(const RunConfig& cfg) {
  const auto g = su2_generators();
  Output o;
  o.passed = g.closure_residual < 1e-10;
  Json gens = Json::array();
  for (const auto& t : g.T) gens.push_back(field_to_json(t));
  o.report = {{"meta", meta(cfg, "algebra su2", nullptr)},
              {"closure_constant", g.closure_constant},
              {"closure_residual", g.closure_residual},
              {"printed_basis", g.printed_basis},
              {"printed_basis_residual", g.printed_basis_residual},
              {"generators", gens},
              {"passed", o.passed}};
  return o;
}

Output cmd_bracket(const RunConfig& cfg) {
  require(!cfg.f_path.empty() && !cfg.g_path.empty(), "bracket needs --f and --g");
  auto load = [](const std::string& path) {
    Json j;
    try {
      j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
    return field_from_json(j.contains("field") ? j["field"] : j);
  };
  const auto f = load(cfg.f_path);
  const auto g = load(cfg.g_path);
  const auto br = bracket(f, g);
  Output o;
  o.report = {{"meta", meta(cfg, "algebra bracket", sphere_grid_json(br.l_max(), 2 * br.l_max()))}};
  const Json body = field_to_json(br);
  for (const auto& [k, v] : body.items()) o.report[k] = v;
  return o;
}

// ------------------------------------------------------------------ dispatch

void emit(const Output& o, const RunConfig& cfg, std::ostream& out) {
  const std::string json = dump_json(o.report);
  const std::string csv = o.csv ? o.csv->str() : std::string();
  if (o.csv_primary) {
    if (cfg.csv.empty()) {
      out << csv;
    } else {
      write_atomic(cfg.csv, csv);
    }
    if (!cfg.out.empty()) write_atomic(cfg.out, json);
  } else {
    if (cfg.out.empty()) {
      out << json;
    } else {
      write_atomic(cfg.out, json);
    }
    if (o.csv && !cfg.csv.empty()) write_atomic(cfg.csv, csv);
  }
}

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--out", cfg.out, "JSON report path");
  app.add_option("--csv", cfg.csv, "CSV table path");
  app.add_option("--dims", cfg.dims, "Tensor dimensions for identities")->delimiter(',');
  app.add_option("--trials", cfg.trials, "Random draws or configurations");
  app.add_option("--lmax,--l-max,--l_max", cfg.lmax, "Band limit");
  app.add_option("--D", cfg.D, "Spacetime dimension");
  app.add_option("--b", cfg.b, "Radius of the extra sphere");
  app.add_option("--e", cfg.e, "Coupling e = q/b^2");
  app.add_option("--q", cfg.q, "Flux parameter");
  app.add_option("--scale", cfg.scale, "Amplitude of random fields");
  app.add_option("--b-list,--b_list", cfg.b_list, "Radii to scan")->delimiter(',');
  app.add_option("--model", cfg.model, "scalar or ym");
  app.add_option("--alpha", cfg.alpha, "Born-Infeld coupling");
  app.add_option("--C", cfg.C, "Born-Infeld normalization");
  app.add_option("--alpha-list,--alpha_list", cfg.alpha_list, "Couplings for the alpha ordering experiment")
      ->delimiter(',');
  app.add_option("--xi-min,--xi_min", cfg.xi_min, "First radial node");
  app.add_option("--xi-max,--xi_max", cfg.xi_max, "Radial cutoff");
  app.add_option("--n,--n-points,--n_points", cfg.n_points, "Radial nodes");
  app.add_option("--v", cfg.v, "Higgs expectation value");
  app.add_option("--beta", cfg.beta, "Coupling beta");
  app.add_option("--evb", cfg.evb, "Product e v b");
  app.add_option("--evb-list,--evb_list", cfg.evb_list, "Values of e v b to scan")->delimiter(',');
  app.add_option("--c-hk,--c_hk", cfg.coeffs.c_hk, "Coefficient of H^2 K'^2");
  app.add_option("--c-dh,--c_dh", cfg.coeffs.c_dh, "Coefficient of (H' - H/xi)^2 (1-K)^2");
  app.add_option("--c-h,--c_h", cfg.coeffs.c_h, "Coefficient of H^2 (1-K)^2");
  app.add_option("--c-k,--c_k", cfg.coeffs.c_k, "Coefficient of K'^2 (1-K)^2");
  app.add_option("--c-xi,--c_xi", cfg.coeffs.c_xi, "Coefficient of xi^p (1-K)^4");
  app.add_option("--xi-power,--xi_power", cfg.coeffs.xi_power, "Power p of xi in the last term");
  app.add_option("--f", cfg.f_path, "First field JSON");
  app.add_option("--g", cfg.g_path, "Second field JSON");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical workbench for U(infinity) gauge theory from dimensional reduction", "uinf"};
  RunConfig cfg;
  add_options(app, cfg);
  app.set_config("--config", "", "key = value configuration file; flags win");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::function<Output()> action;
  auto verb = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Output()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->require_subcommand(1);
    return sub;
  };

  verb(&app, "identities", "Tensor identity suites", [&] { return cmd_identities(cfg); });
  auto* reduce = group("reduce", "Dimensional reduction checks");
  verb(reduce, "scalar", "Scalar-model line groups", [&] { return cmd_reduce_lines(cfg, true); });
  verb(reduce, "ym", "Quartic-model line groups", [&] { return cmd_reduce_lines(cfg, false); });
  verb(reduce, "two-dim", "Exact 2+2 dimensional case", [&] { return cmd_reduce_two_dim(cfg); });
  verb(reduce, "scan-b", "Scaling with the sphere radius", [&] { return cmd_reduce_scan(cfg); });
  verb(reduce, "born-infeld", "Determinant action limit", [&] { return cmd_reduce_born_infeld(cfg); });
  auto* mono = group("monopole", "BPS monopole");
  verb(mono, "solve", "Bogomol'nyi profiles", [&] { return cmd_monopole_solve(cfg, err); });
  verb(mono, "energy", "Energy breakdown", [&] { return cmd_monopole_energy(cfg, err); });
  verb(mono, "perturb", "First-order perturbation", [&] { return cmd_monopole_perturb(cfg); });
  verb(mono, "scan-evb", "Energy correction against evb", [&] { return cmd_monopole_scan(cfg); });
  auto* alg = group("algebra", "Bracket algebra on the sphere");
  verb(alg, "structure-constants", "Structure constant table", [&] { return cmd_structure_constants(cfg); });
  verb(alg, "su2", "l = 1 generators and closure", [&] { return cmd_su2(cfg); });
  verb(alg, "bracket", "Bracket of two field files", [&] { return cmd_bracket(cfg); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (!action) {
    err << "error: no command given\n";
    return kConfigError;
  }
  try {
    const auto o = action();
    emit(o, cfg, out);
    if (!o.passed) err << "check failed\n";
    return o.passed ? kOk : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace uinf::cli
