#include "endslab/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "endslab/errors.hpp"
#include "endslab/parallel.hpp"

namespace endslab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

nlohmann::ordered_json limsup_json(const LimsupValue& v) {
  nlohmann::ordered_json j;
  j["value"] = v.value;
  j["diverged"] = v.diverged;
  return j;
}

struct CheckList {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, const std::string& detail) {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["pass"] = pass;
    j["detail"] = detail;
    items.push_back(j);
    all_pass = all_pass && pass;
  }
};

bool within_fraction(double a, double b, double fraction) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) <= fraction * scale;
}

EndCountParams params_from_config(const RunConfig& cfg, bool ends_only) {
  EndCountParams p;
  p.r0_norm = cfg.r0_norm;
  p.r0_diag = cfg.r0_diag;
  p.tol_limit = cfg.tol.tol_limit;
  p.tol_lin = cfg.tol.tol_lin;
  p.rank_tol = cfg.tol.rank_tol;
  p.fit_tol = cfg.tol.fit_tol;
  p.nu = cfg.nu;
  p.alpha_q = cfg.alpha_q;
  p.growth_q = cfg.growth_q;
  p.chi_theta = cfg.chi_theta;
  p.tail_fraction = cfg.tail_fraction;
  p.jobs = cfg.jobs;
  const auto has = [&](const char* s) {
    return std::find(cfg.pipeline.begin(), cfg.pipeline.end(), s) != cfg.pipeline.end();
  };
  p.do_growth = !ends_only && has("growth");
  p.do_moser = !ends_only && has("moser");
  p.do_alpha = has("alpha");
  p.do_dimension = has("dimension");
  return p;
}

void emit_alpha_section(const RunConfig& cfg, const DiscreteManifold& man,
                        const AlphaReport& alpha, CheckList& checks,
                        nlohmann::ordered_json& results) {
  nlohmann::ordered_json ja;
  ja["tail_window"] = {alpha.tail_lo, alpha.tail_hi};
  ja["per_q"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < alpha.q.size(); ++i) {
    nlohmann::ordered_json jq;
    jq["q"] = alpha.q[i];
    jq["alpha_level"] = limsup_json(alpha.alpha_level[i]);
    nlohmann::ordered_json per_end = nlohmann::ordered_json::array();
    for (const auto& v : alpha.alpha_end[i]) per_end.push_back(limsup_json(v));
    jq["alpha_end"] = per_end;
    ja["per_q"].push_back(jq);
  }
  ja["alpha_ball"] = limsup_json(alpha.alpha_ball);
  ja["v_infinity"] = alpha.v_infinity;
  // best-constant probe of the scaled norm inequality on D(r_max/2)
  const double R_sob = man.snap_down(man.top_radius() / 2.0);
  const double mu_exponent = cfg.nu / (cfg.nu - 1.0);
  const double sob =
      sobolev_measure(man, R_sob, mu_exponent, default_trial_functions(man, R_sob, cfg.seed));
  ja["sobolev_lower_bound"] = sob;
  ja["sobolev_R"] = R_sob;
  results["alpha"] = ja;
  checks.add("holder_monotone", alpha.holder_monotone, "alpha(q) nondecreasing in q");
}

void run_model_pipeline(const RunConfig& cfg, CheckList& checks, nlohmann::ordered_json& results,
                        std::vector<std::pair<std::string, std::string>>& series) {
  const DiscreteManifold man = build_manifold(*cfg.model);
  const auto has = [&](const char* s) {
    return std::find(cfg.pipeline.begin(), cfg.pipeline.end(), s) != cfg.pipeline.end();
  };

  nlohmann::ordered_json build;
  build["vertices"] = man.size();
  build["ends"] = man.end_count();
  const int components = component_count_without_core(man);
  build["components_without_core"] = components;
  build["total_measure"] = man.total_measure();
  build["layers_per_end"] = man.layer_count();
  results["build"] = build;
  checks.add("end_components", components == man.end_count(),
             "removing the core yields " + std::to_string(components) + " components");

  const RhoReport rho = verify_rho_conditions(man);
  nlohmann::ordered_json jrho;
  jrho["m_measured"] = rho.m_measured;
  jrho["m_expected"] = rho.m_expected;
  jrho["grad_lo"] = rho.grad_lo;
  jrho["grad_hi"] = rho.grad_hi;
  jrho["violation"] = rho.violation;
  results["rho"] = jrho;
  checks.add("rho_conditions", !rho.violation,
             "m_measured=" + fmt(rho.m_measured) + " grad in [" + fmt(rho.grad_lo) + "," +
                 fmt(rho.grad_hi) + "]");

  const AreaVolumeReport avr = check_area_volume_growth(man, man.spec.m());
  nlohmann::ordered_json jlem;
  jlem["m"] = avr.m;
  jlem["c_bound"] = avr.c_bound;
  jlem["tightest_c"] = avr.tightest_c;
  jlem["tightest_doubling"] = avr.tightest_doubling;
  jlem["tightest_gamma"] = avr.tightest_gamma;
  results["area_volume_growth"] = jlem;
  checks.add("area_volume_growth", avr.pass(),
             "tightest c=" + fmt(avr.tightest_c) + " doubling=" + fmt(avr.tightest_doubling) +
                 " gamma=" + fmt(avr.tightest_gamma) + " vs bound " + fmt(avr.c_bound));

  auto [V, A] = volume_area_profiles(man);
  series.emplace_back("V.csv", V.to_csv());
  series.emplace_back("A.csv", A.to_csv());

  // growth and mean-value sections are built on the end functions
  const bool needs_ends = has("ends") || has("growth") || has("moser");
  if (!needs_ends) {
    if (has("alpha"))
      emit_alpha_section(
          cfg, man, compute_alpha_report(man, cfg.alpha_q, cfg.growth_q, cfg.tail_fraction),
          checks, results);
    if (has("dimension")) {
      const double mu_exponent = cfg.nu / (cfg.nu - 1.0);
      const auto dim = dimension_bound(man.spec.m(), 0.0, 1.0, mu_exponent);
      nlohmann::ordered_json jd;
      jd["gamma_bar"] = dim.gamma_bar;
      jd["dim_bound"] = dim.dim_bound;
      jd["d_used"] = 0.0;
      jd["A0_used"] = 1.0;
      results["dimension"] = jd;
      checks.add("k_le_dim_bound", man.end_count() <= dim.dim_bound,
                 "k=" + std::to_string(man.end_count()) + " <= dim bound " + fmt(dim.dim_bound));
    }
    return;
  }

  const EndCountParams params = params_from_config(cfg, /*ends_only=*/false);
  const EndCountReport rep = end_count_pipeline(man, params);

  nlohmann::ordered_json jends;
  jends["k"] = rep.k;
  jends["rank"] = rep.rank;
  jends["gram_matrix"] = gram_matrix(rep.end_functions, man, man.top_radius());
  jends["gram_eigenvalues"] = rep.gram_eigs;
  jends["all_converged"] = rep.all_converged;
  jends["per_end"] = nlohmann::ordered_json::array();
  for (const auto& fn : rep.end_functions) {
    nlohmann::ordered_json je;
    je["end"] = fn.end_index;
    je["convergence_gap"] = fn.convergence_gap;
    je["converged"] = fn.converged;
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const auto& [R, C] : fn.normalization_history) {
      nlohmann::ordered_json h;
      h["R"] = R;
      h["C_R"] = C;
      hist.push_back(h);
    }
    je["normalization_history"] = hist;
    // the supremum equals C_R at each rung; a ratio staying well above 1
    // signals a solution growing with the truncation radius (no boundedness
    // classification is attempted, this is descriptive only)
    const auto& nh = fn.normalization_history;
    const double sup_ratio =
        nh.size() >= 2 ? nh.back().second / nh[nh.size() - 2].second : 1.0;
    je["sup_trend_ratio"] = sup_ratio;
    je["sup_growing_with_radius"] = sup_ratio > 1.1;
    jends["per_end"].push_back(je);
  }
  nlohmann::ordered_json jsep = nlohmann::ordered_json::array();
  for (const auto& s : rep.separation.per_end) {
    nlohmann::ordered_json js;
    js["end"] = s.end_index;
    js["positive_off_end"] = s.positive_off_end;
    js["bounded_off_end"] = s.bounded_off_end;
    js["sup_exceeds_one"] = s.sup_exceeds_one;
    js["sup_on_own_end"] = s.sup_on_own_end;
    js["e_max_strictly_increasing"] = s.e_max_strictly_increasing;
    js["f_max_nonincreasing"] = s.f_max_nonincreasing;
    js["min_off_end"] = s.min_off_end;
    js["max_off_end"] = s.max_off_end;
    js["sup_value"] = s.sup_value;
    js["increase_margin"] = s.increase_margin;
    js["decrease_margin"] = s.decrease_margin;
    jsep.push_back(js);
  }
  jends["separation"] = jsep;
  results["ends"] = jends;

  checks.add("all_converged", rep.all_converged,
             rep.all_converged ? "every exhaustion ladder met tol_limit"
                               : "convergence gap above tol_limit; increase r_max");
  checks.add("gram_rank", rep.rank_matches,
             "rank " + std::to_string(rep.rank) + " of k=" + std::to_string(rep.k));
  checks.add("separation", rep.separation.pass, "per-end separation properties");

  for (const auto& fn : rep.end_functions) {
    series.emplace_back("endfn_e" + std::to_string(fn.end_index) + ".csv", fn.to_csv(man));
    ProfileSeries mx;
    mx.name = "max_u_e" + std::to_string(fn.end_index);
    for (int j = 0; j < man.layer_count(); ++j) {
      double v = 0.0;
      for (const int x : man.level_set_at(j)) v = std::max(v, fn.values[x]);
      mx.radii.push_back(man.layer_radii[j]);
      mx.values.push_back(v);
    }
    series.emplace_back(mx.name + ".csv", mx.to_csv());
  }

  if (params.do_growth) {
    nlohmann::ordered_json jg;
    jg["ran"] = rep.growth_ran;
    if (!rep.growth_ran) {
      jg["skip_reason"] = rep.growth_skip_reason;
    } else {
      jg["upsilon_measured"] = rep.upsilon_measured;
      jg["per_end"] = nlohmann::ordered_json::array();
      bool fits_pass = true, chi_mono = true, chi_ok = true, omega_ok = true;
      for (int i = 0; i < rep.k; ++i) {
        const GrowthReport& g = rep.growth[i];
        nlohmann::ordered_json je;
        je["end"] = i;
        je["fitted_exponent"] = g.fitted_exponent;
        je["fitted_intercept"] = g.fitted_intercept;
        if (g.bound_a) je["bound_a"] = *g.bound_a;
        if (g.bound_gamma) je["bound_gamma"] = *g.bound_gamma;
        je["epsilon"] = g.epsilon;
        je["pass"] = g.pass;
        je["chi_C0"] = rep.chi[i].C0;
        je["chi_Lambda0"] = rep.chi[i].Lambda0;
        je["omega_C_implied"] = rep.omega[i].max_residual;
        jg["per_end"].push_back(je);
        fits_pass = fits_pass && g.pass;
        chi_mono = chi_mono && rep.chi[i].chi_monotone;
        chi_ok = chi_ok && rep.chi[i].inequality_holds;
        omega_ok =
            omega_ok && !rep.omega[i].residual_diverging && !rep.omega[i].xi_structure_diverging;
        series.emplace_back("omega_e" + std::to_string(i) + ".csv", rep.omega[i].omega.to_csv());
        series.emplace_back("chi_e" + std::to_string(i) + ".csv", rep.chi[i].chi.to_csv());
      }
      checks.add("growth_bounds", fits_pass, "fitted exponents within their growth bounds");
      checks.add("chi_monotone", chi_mono, "chi series nondecreasing");
      checks.add("chi_inequality", chi_ok, "convolution bound admits a finite constant");
      checks.add("omega_bounded", omega_ok, "omega residual and xi structure nonexplosive");
    }
    results["growth"] = jg;
  }

  if (params.do_moser) {
    nlohmann::ordered_json jm;
    jm["ran"] = rep.moser_ran;
    if (!rep.moser_ran) {
      jm["skip_reason"] = rep.moser_skip_reason;
    } else {
      jm["per_end"] = nlohmann::ordered_json::array();
      bool stable = true, exponent_ok = true, harnack_ok = true;
      for (int i = 0; i < rep.k; ++i) {
        nlohmann::ordered_json je;
        je["end"] = i;
        je["R_lo"] = rep.moser_lo[i].R;
        je["R_hi"] = rep.moser_hi[i].R;
        je["A0_lo"] = rep.moser_lo[i].A0;
        je["A0_hi"] = rep.moser_hi[i].A0;
        je["theta_exponent"] = rep.moser_hi[i].theta_exponent;
        je["harnack_lo"] = rep.harnack_lo[i];
        je["harnack_hi"] = rep.harnack_hi[i];
        jm["per_end"].push_back(je);
        stable = stable && within_fraction(rep.moser_lo[i].A0, rep.moser_hi[i].A0, 0.2);
        exponent_ok = exponent_ok && rep.moser_hi[i].theta_exponent <= 2.0 * cfg.nu + 0.3;
        harnack_ok = harnack_ok && within_fraction(rep.harnack_lo[i], rep.harnack_hi[i], 0.10);
      }
      checks.add("mean_value_stable", stable, "A0 within 20% across the top two rungs");
      checks.add("theta_exponent", exponent_ok, "fitted theta exponent <= 2 nu + 0.3");
      checks.add("harnack_stable", harnack_ok,
                 "log-gradient bound within 10% across the top two rungs");
    }
    results["moser"] = jm;
  }

  if (params.do_alpha) emit_alpha_section(cfg, man, rep.alpha, checks, results);

  if (params.do_dimension) {
    nlohmann::ordered_json jd;
    jd["gamma_bar"] = rep.dimension.gamma_bar;
    jd["dim_bound"] = rep.dimension.dim_bound;
    jd["d_used"] = rep.d_used;
    jd["A0_used"] = rep.A0_used;
    results["dimension"] = jd;
    checks.add("rank_le_dim_bound", rep.rank_matches && rep.dim_bound_holds,
               "rank=" + std::to_string(rep.rank) + " k=" + std::to_string(rep.k) +
                   " <= dim bound " + fmt(rep.dimension.dim_bound));
  }
}

void run_soliton_pipeline(const RunConfig& cfg, CheckList& checks,
                          nlohmann::ordered_json& results) {
  const SolitonExample* ex = find_soliton(*cfg.soliton);
  if (!ex) fail(ErrorCode::ConfigError, "unknown soliton example '" + *cfg.soliton + "'");

  nlohmann::ordered_json js;
  js["name"] = ex->name;
  js["n"] = ex->n;

  const double residual = soliton_identity_residual(*ex);
  js["identity_residual"] = residual;
  checks.add("soliton_identity", residual <= 1e-12, "max | |grad f|^2 + S - f | = " + fmt(residual));

  const FBoundsReport fb = f_bounds_check(*ex);
  js["c1"] = fb.c1;
  js["c2"] = fb.c2;
  js["volume_c"] = fb.volume_c;
  checks.add("f_bounds_finite", std::isfinite(fb.c1) && std::isfinite(fb.c2),
             "c1=" + fmt(fb.c1) + " c2=" + fmt(fb.c2));
  checks.add("volume_growth", std::isfinite(fb.volume_c) && fb.volume_c > 0.0,
             "V(r) <= " + fmt(fb.volume_c) + " r^n on the check grid");

  const EntropyResult ent = entropy(*ex, cfg.tol.quad_tol);
  js["entropy"] = ent.mu;
  js["entropy_integral"] = ent.integral;
  js["entropy_tail_bound"] = ent.tail_bound;
  if (ex->name.rfind("gaussian", 0) == 0) {
    checks.add("gaussian_entropy_zero", std::abs(ent.mu) <= 1e-8, "mu = " + fmt(ent.mu));
  }

  const LimsupValue alpha = soliton_alpha(*ex, cfg.tail_fraction);
  js["alpha"] = limsup_json(alpha);
  results["soliton"] = js;
}

std::string render_md(const std::string& name, const CheckList& checks,
                      const nlohmann::ordered_json& results) {
  std::ostringstream md;
  md << "# endslab report: " << name << "\n\n";
  md << "## Checks\n\n| check | pass | detail |\n|---|---|---|\n";
  for (const auto& c : checks.items) {
    md << "| " << c["name"].get<std::string>() << " | "
       << (c["pass"].get<bool>() ? "pass" : "FAIL") << " | " << c["detail"].get<std::string>()
       << " |\n";
  }
  md << "\n## Results\n\n```json\n" << results.dump(2) << "\n```\n";
  return md.str();
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j, const std::string& name) {
  RunConfig cfg;
  cfg.name = name;
  try {
    if (j.contains("model")) {
      if (j.at("model").is_string()) {
        const std::string s = j.at("model").get<std::string>();
        if (find_soliton(s)) {
          cfg.soliton = s;
        } else {
          // inherit the preset's calibrated tolerances; explicit blocks below
          // still override field by field
          const RunConfig preset = preset_run_config(s);
          cfg.model = preset.model;
          cfg.tol = preset.tol;
        }
      } else {
        cfg.model = ModelSpec::from_json(j.at("model"));
      }
    }
    if (j.contains("soliton")) cfg.soliton = j.at("soliton").get<std::string>();
    if (j.contains("pipeline")) cfg.pipeline = j.at("pipeline").get<std::vector<std::string>>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.tol.tol_lin = t.value("tol_lin", cfg.tol.tol_lin);
      cfg.tol.tol_limit = t.value("tol_limit", cfg.tol.tol_limit);
      cfg.tol.rank_tol = t.value("rank_tol", cfg.tol.rank_tol);
      cfg.tol.fit_tol = t.value("fit_tol", cfg.tol.fit_tol);
      cfg.tol.quad_tol = t.value("quad_tol", cfg.tol.quad_tol);
    }
    cfg.nu = j.value("nu", cfg.nu);
    cfg.tail_fraction = j.value("tail_fraction", cfg.tail_fraction);
    if (j.contains("alpha_q")) cfg.alpha_q = j.at("alpha_q").get<std::vector<double>>();
    cfg.growth_q = j.value("growth_q", cfg.growth_q);
    cfg.chi_theta = j.value("chi_theta", cfg.chi_theta);
    cfg.r0_norm = j.value("r0_norm", cfg.r0_norm);
    cfg.r0_diag = j.value("r0_diag", cfg.r0_diag);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::ConfigError, std::string("run config: ") + ex.what());
  }
  if (!cfg.model && !cfg.soliton)
    fail(ErrorCode::ConfigError, "config needs a model spec, a preset name, or a soliton name");
  if (cfg.pipeline.empty()) {
    cfg.pipeline = cfg.model ? std::vector<std::string>{"ends", "growth", "moser", "alpha",
                                                        "dimension"}
                             : std::vector<std::string>{"soliton"};
    if (cfg.model && cfg.soliton) cfg.pipeline.push_back("soliton");
  }
  for (const auto& tolv : {cfg.tol.tol_lin, cfg.tol.tol_limit, cfg.tol.rank_tol, cfg.tol.fit_tol,
                           cfg.tol.quad_tol})
    if (!(tolv > 0.0)) fail(ErrorCode::ConfigError, "tolerances must be positive");
  return cfg;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  if (model) j["model"] = nlohmann::ordered_json(model->to_json());
  if (soliton) j["soliton"] = *soliton;
  j["pipeline"] = pipeline;
  nlohmann::ordered_json t;
  t["tol_lin"] = tol.tol_lin;
  t["tol_limit"] = tol.tol_limit;
  t["rank_tol"] = tol.rank_tol;
  t["fit_tol"] = tol.fit_tol;
  t["quad_tol"] = tol.quad_tol;
  j["tolerances"] = t;
  j["nu"] = nu;
  j["tail_fraction"] = tail_fraction;
  j["alpha_q"] = alpha_q;
  j["growth_q"] = growth_q;
  j["chi_theta"] = chi_theta;
  j["r0_norm"] = r0_norm;
  j["r0_diag"] = r0_diag;
  j["seed"] = seed;
  return j;
}

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult result;
  CheckList checks;
  nlohmann::ordered_json results;
  if (config.model) run_model_pipeline(config, checks, results, result.series);
  if (config.soliton) run_soliton_pipeline(config, checks, results);
  result.report["name"] = config.name;
  result.report["config"] = config.to_json();
  result.report["checks"] = checks.items;
  result.report["all_pass"] = checks.all_pass;
  result.report["results"] = results;
  result.report_md = render_md(config.name, checks, results);
  result.exit_code = checks.all_pass ? 0 : 2;
  return result;
}

void write_outputs(const PipelineResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "series", ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory " + out_dir);
  const auto write = [](const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + p.string());
    out << body;
  };
  write(fs::path(out_dir) / "report.json", result.report.dump(2) + "\n");
  write(fs::path(out_dir) / "report.md", result.report_md);
  for (const auto& [fname, body] : result.series)
    write(fs::path(out_dir) / "series" / fname, body);
  // the only output carrying wall-clock data, excluded from determinism
  nlohmann::ordered_json meta;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  meta["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
  meta["exit_code"] = result.exit_code;
  write(fs::path(out_dir) / "run_meta.json", meta.dump(2) + "\n");
}

namespace {

RunConfig make_model_preset(const std::string& name, ModelSpec spec, double tol_limit) {
  RunConfig cfg;
  cfg.name = name;
  cfg.model = std::move(spec);
  cfg.pipeline = {"ends", "growth", "moser", "alpha", "dimension"};
  cfg.tol.tol_limit = tol_limit;
  return cfg;
}

ModelSpec cone_spec(int k_ends, double r_max, SigmaLaw sigma) {
  ModelSpec spec;
  spec.n_dim = 3;
  spec.core_size = 1;
  spec.r_core = 1.0;
  spec.R0 = 2.0;
  spec.r_max = r_max;
  spec.h = 1.0;
  spec.sigma = sigma;
  for (int i = 0; i < k_ends; ++i) {
    EndSpec e;
    e.profile_coefficient = 1.0;
    e.profile_exponent = 2.0;
    e.cross_section_size = 1;
    spec.ends.push_back(e);
  }
  return spec;
}

struct PresetEntry {
  std::string name;
  std::string description;
};

const std::vector<PresetEntry>& preset_entries() {
  static const std::vector<PresetEntry> entries = {
      {"two_end_path", "two radial chains glued at a core, potential bump at the core"},
      {"cone_2end_bump", "two 3-d conical ends, potential bump at the core"},
      {"cone_2end_quadratic", "two 3-d conical ends, sigma = 2/rho^2"},
      {"three_end_mixed", "three conical ends of mixed area scales, one with a ring cross-section"},
      {"star_4end", "four 3-d conical ends, potential bump at the core"},
      {"tiny_2end", "deliberately short truncation; the exhaustion ladder cannot converge"},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& model_preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : preset_entries()) out.push_back(e.name);
    return out;
  }();
  return names;
}

RunConfig preset_run_config(const std::string& name) {
  const auto path_spec = [](double r_max) {
    ModelSpec spec;
    spec.n_dim = 2;
    spec.core_size = 1;
    spec.r_core = 1.0;
    spec.R0 = 1.5;
    spec.r_max = r_max;
    spec.h = 1.0;
    spec.sigma = SigmaLaw::bump(1.0, 1.0, 1.4);
    spec.ends.assign(2, EndSpec{1.0, 0.0, 1, std::nullopt});
    return spec;
  };
  if (name == "two_end_path") return make_model_preset(name, path_spec(16.0), 0.012);
  if (name == "cone_2end_bump")
    return make_model_preset(name, cone_spec(2, 64.0, SigmaLaw::bump(1.0, 1.0, 1.9)), 0.01);
  if (name == "cone_2end_quadratic")
    return make_model_preset(name, cone_spec(2, 64.0, SigmaLaw::quadratic_decay(2.0)), 0.01);
  if (name == "three_end_mixed") {
    // comparable volume growth on every end keeps the mean value constant
    // uniform; heterogeneity comes from the area scales and the ring end
    ModelSpec spec = cone_spec(2, 64.0, SigmaLaw::bump(1.0, 1.0, 1.9));
    spec.ends[1].profile_coefficient = 2.0;
    EndSpec ring;
    ring.profile_coefficient = 1.0;
    ring.profile_exponent = 2.0;
    ring.cross_section_size = 4;
    spec.ends.push_back(ring);
    return make_model_preset(name, std::move(spec), 0.01);
  }
  if (name == "star_4end")
    return make_model_preset(name, cone_spec(4, 64.0, SigmaLaw::bump(1.0, 1.0, 1.9)), 0.01);
  // same geometry and tolerance as two_end_path; the short truncation alone
  // keeps the exhaustion gap above tol_limit
  if (name == "tiny_2end") return make_model_preset(name, path_spec(8.0), 0.012);
  fail(ErrorCode::ConfigError, "unknown preset '" + name + "'");
}

RunConfig load_run_config(const std::string& path_or_name) {
  for (const auto& n : model_preset_names())
    if (n == path_or_name) return preset_run_config(path_or_name);
  if (find_soliton(path_or_name)) {
    RunConfig cfg;
    cfg.name = path_or_name;
    cfg.soliton = path_or_name;
    cfg.pipeline = {"soliton"};
    return cfg;
  }
  std::ifstream in(path_or_name, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config '" + path_or_name + "'");
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& ex) {
    // translate the byte offset into a line number for the diagnostic
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(ex.byte, body.size()); ++i)
      if (body[i] == '\n') ++line;
    fail(ErrorCode::ConfigError,
         "parse error in " + path_or_name + " at line " + std::to_string(line) + ": " + ex.what());
  }
  std::string name = std::filesystem::path(path_or_name).stem().string();
  return RunConfig::from_json(j, name);
}

std::string list_text() {
  std::ostringstream out;
  out << "Model presets:\n";
  for (const auto& e : preset_entries()) out << "  " << e.name << " - " << e.description << "\n";
  out << "Soliton examples:\n";
  for (const auto& ex : soliton_catalog())
    out << "  " << ex.name << " - " << ex.description << "\n";
  return out.str();
}

int run_command(const std::string& config_path_or_name, const CliOverrides& overrides) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path_or_name);
    if (overrides.out) cfg.output_dir = *overrides.out;
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.jobs) cfg.jobs = *overrides.jobs;
  } catch (const Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }
  try {
    const PipelineResult result = run_pipeline(cfg);
    write_outputs(result, cfg.output_dir);
    for (const auto& c : result.report["checks"]) {
      std::printf("[%s] %s: %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                  c["name"].get<std::string>().c_str(), c["detail"].get<std::string>().c_str());
    }
    if (result.exit_code != 0) std::printf("one or more checks failed\n");
    return result.exit_code;
  } catch (const Error& e) {
    std::fprintf(stderr, "run error: %s\n", e.what());
    return 2;
  }
}

}  // namespace endslab
