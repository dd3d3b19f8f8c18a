// Acceptance suite: runs every shipped verification criterion at its stated
// tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "endslab/errors.hpp"
#include "endslab/estimates.hpp"
#include "endslab/model.hpp"
#include "endslab/pipeline.hpp"
#include "endslab/schrodinger.hpp"
#include "endslab/solitons.hpp"

using namespace endslab;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d. %-28s (%.2fs) %s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
              detail.c_str());
  if (!ok) ++g_failures;
}

bool within_fraction(double a, double b, double fraction) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) <= fraction * scale;
}

DiscreteManifold preset_manifold(const std::string& name) {
  return build_manifold(*preset_run_config(name).model);
}

}  // namespace

int main() {
  criterion(1, "gaussian entropy", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ent = entropy(*find_soliton("gaussian3"), 1e-9);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "mu = " + std::to_string(ent.mu) + ", " + std::to_string(secs) + "s";
    return std::abs(ent.mu) <= 1e-8 && secs < 1.0;
  });

  criterion(2, "soliton identities", [](std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    for (const char* name : {"gaussian3", "gaussian4", "cylinder3", "cylinder4"}) {
      const auto* ex = find_soliton(name);
      if (!ex) return false;
      const double res = soliton_identity_residual(*ex);
      worst = std::max(worst, res);
      ok = ok && res <= 1e-12;
      const double shifted = soliton_identity_residual(with_f_shifted(*ex, 0.1));
      ok = ok && std::abs(shifted - 0.1) <= 1e-12;
    }
    detail = "max residual " + std::to_string(worst) + ", negative control 0.1 recovered";
    return ok;
  });

  criterion(3, "end separation / independence", [](std::string& detail) {
    bool ok = true;
    detail.clear();
    for (const char* name : {"cone_2end_bump", "three_end_mixed", "star_4end"}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto cfg = preset_run_config(name);
      const auto man = build_manifold(*cfg.model);
      const int k = man.end_count();
      std::vector<EndFunction> fns;
      for (int i = 0; i < k; ++i)
        fns.push_back(construct_end_function(man, i, man.spec.R0, cfg.tol.tol_limit));
      const int rank = gram_rank(fns, man, man.top_radius(), 1e-8);
      const auto sep = verify_separation(fns, man, 1e-6);
      bool model_ok = rank == k && sep.pass;
      for (const auto& s : sep.per_end) {
        model_ok = model_ok && s.positive_off_end && s.bounded_off_end && s.sup_exceeds_one &&
                   s.sup_on_own_end && s.e_max_strictly_increasing;
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      model_ok = model_ok && secs < 30.0;
      detail += std::string(name) + ": rank " + std::to_string(rank) + "/" + std::to_string(k) +
                " " + (model_ok ? "ok" : "BAD") + "; ";
      ok = ok && model_ok;
    }
    return ok;
  });

  criterion(4, "dirichlet oracle equivalence", [](std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& name : model_preset_names()) {
      const auto man = preset_manifold(name);
      // count free vertices of the largest solve
      const int boundary = static_cast<int>(man.level_set_at(man.layer_count() - 1).size());
      const int unknowns = man.size() - boundary;
      if (unknowns >= 500) continue;
      const double R = man.top_radius();
      const auto vi = dirichlet_solve(man, 0, R, 1e-10);

      const int jR = man.radius_index(R);
      std::vector<char> constrained(man.size(), 0);
      std::vector<double> bc(man.size(), 0.0);
      for (int x = 0; x < man.size(); ++x)
        if (man.layer_of[x] == jR) {
          constrained[x] = 1;
          bc[x] = man.end_of[x] == 0 ? 1.0 : 0.0;
        }
      const auto sys = DirichletSystem::build(man.graph, man.mu, man.sigma, constrained, bc);
      const auto vd = sys.solve_dense();
      double sup = 0.0, scale = 0.0;
      for (int x = 0; x < man.size(); ++x) {
        sup = std::max(sup, std::abs(vi[x] - vd[x]));
        scale = std::max(scale, std::abs(vd[x]));
      }
      worst = std::max(worst, sup / scale);
      ok = ok && sup / scale <= 1e-8;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst relative sup-norm gap %.2e", worst);
    detail = buf;
    return ok;
  });

  criterion(5, "maximum principle x 10000", [](std::string& detail) {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> wdist(0.1, 10.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = 5 + static_cast<int>(unif(rng) * 26.0);
      std::vector<std::tuple<int, int, double>> edges;
      for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i, wdist(rng));
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int e = 0; e < n / 3; ++e) {
        const int a = pick(rng), b = pick(rng);
        if (a != b) edges.emplace_back(a, b, wdist(rng));
      }
      const auto g = WeightedGraph::from_edges(n, edges);
      std::vector<double> mu(n), sigma(n);
      for (int i = 0; i < n; ++i) {
        mu[i] = wdist(rng);
        sigma[i] = unif(rng) < 0.5 ? 0.0 : unif(rng);
      }
      std::vector<char> constrained(n, 0);
      std::vector<double> bc(n, 0.0);
      constrained[0] = constrained[n - 1] = 1;
      bc[n - 1] = 1.0;
      const auto sys = DirichletSystem::build(g, mu, sigma, constrained, bc);
      const auto v = sys.solve_cg(1e-10);
      for (int i = 1; i + 1 < n; ++i) {
        if (!(v[i] > 0.0 && v[i] < 1.0)) {
          detail = "violation at trial " + std::to_string(trial);
          return false;
        }
      }
    }
    detail = "all interior values strictly inside (0,1)";
    return true;
  });

  criterion(6, "growth bound", [](std::string& detail) {
    const auto cfg = preset_run_config("cone_2end_quadratic");
    const auto man = build_manifold(*cfg.model);
    const double m = man.spec.m();            // 2
    const double up = measured_upsilon(man, 8.0);  // 2
    const double bound = growth_bound_exponent(m, up);
    bool ok = std::abs(bound - 10.0) <= 1e-12 && std::abs(exponent_a(m, up) - 1.0) <= 1e-12;
    double fitted_max = 0.0;
    for (int i = 0; i < man.end_count(); ++i) {
      const auto fn = construct_end_function(man, i, man.spec.R0, cfg.tol.tol_limit);
      const auto rep = growth_fit(man, fn.values, 0.3, m, 1.2, 1.5, 0.25, up);
      fitted_max = std::max(fitted_max, rep.fitted_exponent);
      ok = ok && rep.pass && rep.fitted_exponent <= bound;
    }
    // synthetic power inputs recover their exponent to 1e-6
    for (const double beta : {0.5, 1.0, 3.0}) {
      std::vector<double> u(man.size());
      for (int x = 0; x < man.size(); ++x) u[x] = std::pow(man.rho[x], beta);
      const auto rep = growth_fit(man, u, 0.3, m, 1.2, 1.5, 0.25);
      ok = ok && std::abs(rep.fitted_exponent - beta) <= 1e-6;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "fitted b <= %.3f vs bound 10 (margin %.3f)", fitted_max,
                  10.0 - fitted_max);
    detail = buf;
    return ok;
  });

  criterion(7, "alpha cancellation + Holder", [](std::string& detail) {
    auto man = preset_manifold("cone_2end_quadratic");
    bool ok = true;
    for (const double q : {1.0, 2.0, 3.0}) {
      const auto a = compute_alpha_level(man, q);
      ok = ok && !a.diverged && std::abs(a.value - 2.0) <= 1e-10;
    }
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      for (auto& s : man.sigma) s = unif(rng);
      double prev = -1.0;
      for (const double q : {1.0, 1.5, 2.0, 3.0}) {
        const auto a = compute_alpha_level(man, q);
        if (a.diverged) continue;
        ok = ok && a.value >= prev - 1e-9 * std::max(1.0, prev);
        prev = a.value;
      }
    }
    detail = ok ? "alpha = Upsilon to 1e-10; monotone in q on 20 random fields" : "";
    return ok;
  });

  criterion(8, "mean value property", [](std::string& detail) {
    bool ok = true;
    detail.clear();
    for (const char* name : {"cone_2end_bump", "cone_2end_quadratic"}) {
      const auto cfg = preset_run_config(name);
      const auto man = build_manifold(*cfg.model);
      for (int i = 0; i < man.end_count(); ++i) {
        const auto fn = construct_end_function(man, i, man.spec.R0, cfg.tol.tol_limit);
        const auto lo = moser_verify(man, fn.values, 16.0, 1.5);
        const auto hi = moser_verify(man, fn.values, 32.0, 1.5);
        ok = ok && within_fraction(lo.A0, hi.A0, 0.20);
        ok = ok && hi.theta_exponent <= 2.0 * 1.5 + 0.3;
        if (i == 0) {
          char buf[96];
          std::snprintf(buf, sizeof(buf), "%s: A0 %.3f/%.3f s=%.2f; ", name, lo.A0, hi.A0,
                        hi.theta_exponent);
          detail += buf;
        }
      }
    }
    return ok;
  });

  criterion(9, "area-volume growth suite", [](std::string& detail) {
    bool ok = true;
    for (const auto& name : model_preset_names()) {
      const auto man = preset_manifold(name);
      const auto rep = check_area_volume_growth(man, man.spec.m());
      ok = ok && rep.pass();
    }
    // two-grid first-order convergence of V to the cone closed form; A exact
    double errors[2], area_err = 0.0;
    int idx = 0;
    for (const double h : {0.5, 0.25}) {
      ModelSpec spec;
      spec.n_dim = 3;
      spec.core_size = 1;
      spec.r_core = 1.0;
      spec.R0 = 2.0;
      spec.r_max = 16.0;
      spec.h = h;
      spec.sigma = SigmaLaw::bump(1.0, 1.0, 1.5);
      spec.ends.assign(1, EndSpec{1.0, 2.0, 1, std::nullopt});
      const auto man = build_manifold(spec);
      const double v_disc = man.sublevel_measure(10.0);
      const double v_cont = (1000.0 - 1.0) / 3.0 + 1.0;
      errors[idx++] = std::abs(v_disc - v_cont);
      area_err = std::max(area_err, std::abs(man.level_area(man.radius_index(10.0)) - 100.0));
    }
    ok = ok && errors[1] <= 0.6 * errors[0] && area_err <= 1e-9;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "V error %.3f -> %.3f under h/2; A exact to %.1e", errors[0],
                  errors[1], area_err);
    detail = buf;
    return ok;
  });

  criterion(10, "chi inequality stability", [](std::string& detail) {
    auto spec = *preset_run_config("cone_2end_quadratic").model;
    double c0[2];
    bool ok = true;
    int idx = 0;
    for (const double r_max : {32.0, 64.0}) {
      spec.r_max = r_max;
      const auto man = build_manifold(spec);
      const auto fn = construct_end_function(man, 0, man.spec.R0, 0.10);
      const auto rep = chi_diagnostics(man, fn.values, 8.0, man.spec.m(), 1.2, 1.0, 1.5);
      ok = ok && rep.chi_monotone && rep.inequality_holds && std::isfinite(rep.C0);
      c0[idx++] = rep.C0;
    }
    ok = ok && within_fraction(c0[0], c0[1], 0.30);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "C0 = %.6g (r_max 32) vs %.6g (r_max 64)", c0[0], c0[1]);
    detail = buf;
    return ok;
  });

  criterion(11, "determinism", [](std::string& detail) {
    for (const char* name : {"two_end_path", "gaussian3"}) {
      auto cfg = load_run_config(name);
      cfg.seed = 20240817;
      const auto r1 = run_pipeline(cfg);
      const auto r2 = run_pipeline(cfg);
      if (r1.report.dump(2) != r2.report.dump(2) || r1.report_md != r2.report_md) {
        detail = std::string("report mismatch for ") + name;
        return false;
      }
      if (r1.series != r2.series) {
        detail = std::string("series mismatch for ") + name;
        return false;
      }
    }
    detail = "byte-identical reports and series across repeated runs";
    return true;
  });

  std::printf("%s: %d/11 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
