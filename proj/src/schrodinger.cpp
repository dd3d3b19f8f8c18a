#include "endslab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "endslab/errors.hpp"

namespace endslab {

namespace {
constexpr double kRadiusTol = 1e-9;

void require_multiple_ends(const DiscreteManifold& man) {
  if (man.end_count() < 2)
    fail(ErrorCode::SingleEnd, "this operation requires a model with at least 2 ends");
}

}  // namespace

std::string EndFunction::to_csv(const DiscreteManifold& man) const {
  std::string out = "vertex_id,rho,end_label,value\n";
  char buf[128];
  for (int x = 0; x < man.size(); ++x) {
    if (man.end_of[x] < 0) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,core,%.17g\n", x, man.rho[x], values[x]);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,e%d:l%d,%.17g\n", x, man.rho[x], man.end_of[x],
                    man.layer_of[x], values[x]);
    }
    out += buf;
  }
  return out;
}

std::vector<double> dirichlet_solve(const DiscreteManifold& man, int end_index, double R,
                                    double tol_lin, SolveStats* stats,
                                    const std::vector<double>* initial) {
  require_multiple_ends(man);
  if (end_index < 0 || end_index >= man.end_count())
    fail(ErrorCode::InvalidSpec, "end index out of range");
  const double Rs = man.snap_down(R);
  if (Rs <= man.spec.R0 + kRadiusTol)
    fail(ErrorCode::DomainTooSmall, "solve radius must exceed R0");
  const int jR = man.radius_index(Rs);

  const int n = man.size();
  std::vector<char> constrained(n, 0);
  std::vector<double> bc(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (man.rho[x] > Rs - kRadiusTol) {
      constrained[x] = 1;
      bc[x] = (man.layer_of[x] == jR && man.end_of[x] == end_index) ? 1.0 : 0.0;
    }
  }
  const auto system = DirichletSystem::build(man.graph, man.mu, man.sigma, constrained, bc);
  auto v = system.solve_cg(tol_lin, 0, initial, stats);

  // strict maximum principle on the interior
  for (const int x : system.interior) {
    if (!(v[x] > 0.0 && v[x] < 1.0))
      fail(ErrorCode::MaximumPrincipleViolation,
           "interior value " + std::to_string(v[x]) + " at rho = " + std::to_string(man.rho[x]) +
               " escapes (0,1); deep truncations push tail values below the solver "
               "resolution - tighten tol_lin or reduce r_max");
  }
  return v;
}

std::pair<std::vector<double>, double> normalize(std::vector<double> v,
                                                 const DiscreteManifold& man, double r0) {
  if (!(r0 > man.spec.r_core))
    fail(ErrorCode::DomainTooSmall, "normalization radius must contain the core");
  if (r0 < man.spec.R0 - kRadiusTol)
    fail(ErrorCode::DomainTooSmall, "normalization radius must be >= R0");
  double vmax = 0.0;
  for (int x = 0; x < man.size(); ++x)
    if (man.rho[x] < r0 - kRadiusTol) vmax = std::max(vmax, v[x]);
  if (!(vmax > 0.0)) fail(ErrorCode::NonPositiveInput, "no positive values on D(r0)");
  const double C_R = 1.0 / vmax;
  for (auto& val : v) val *= C_R;
  return {std::move(v), C_R};
}

EndFunction construct_end_function(const DiscreteManifold& man, int end_index, double r0,
                                   double tol_limit, double tol_lin) {
  require_multiple_ends(man);
  const double r_max = man.top_radius();
  std::vector<double> ladder;
  for (const double raw : {r_max / 4.0, r_max / 2.0, r_max}) {
    double r = man.snap_down(raw);
    if (r <= man.spec.R0 + kRadiusTol) r = man.snap_down(man.spec.R0 + man.h() + kRadiusTol);
    if (ladder.empty() || r > ladder.back() + kRadiusTol) ladder.push_back(r);
  }
  if (ladder.size() < 3)
    fail(ErrorCode::DomainTooSmall, "cannot place 3 exhaustion rungs above R0");

  EndFunction fn;
  fn.end_index = end_index;
  fn.r0 = r0;
  std::vector<double> prev;
  for (const double R : ladder) {
    auto v = dirichlet_solve(man, end_index, R, tol_lin);
    auto [u, C_R] = normalize(std::move(v), man, r0);
    fn.normalization_history.emplace_back(R, C_R);
    if (!prev.empty()) {
      double gap = 0.0;
      for (int x = 0; x < man.size(); ++x)
        if (man.rho[x] < r0 - kRadiusTol) gap = std::max(gap, std::abs(u[x] - prev[x]));
      fn.convergence_gap = gap;
    }
    prev = std::move(u);
  }
  fn.values = std::move(prev);
  fn.domain_radius = ladder.back();
  fn.converged = fn.convergence_gap <= tol_limit;
  return fn;
}

SeparationReport verify_separation(const std::vector<EndFunction>& fns,
                                   const DiscreteManifold& man, double tol_limit) {
  require_multiple_ends(man);
  SeparationReport rep;
  rep.pass = true;
  for (const auto& fn : fns) {
    EndSeparation s;
    s.end_index = fn.end_index;
    s.converged = fn.converged;
    const double R = fn.domain_radius;

    double min_off = std::numeric_limits<double>::infinity();
    double max_off = -std::numeric_limits<double>::infinity();
    double sup = -std::numeric_limits<double>::infinity();
    int sup_vertex = -1;
    for (int x = 0; x < man.size(); ++x) {
      if (man.rho[x] > R - kRadiusTol) continue;  // exhaustion data, not solution
      const double v = fn.values[x];
      if (v > sup) {
        sup = v;
        sup_vertex = x;
      }
      if (man.end_of[x] != fn.end_index) {
        min_off = std::min(min_off, v);
        max_off = std::max(max_off, v);
      }
    }
    s.min_off_end = min_off;
    s.max_off_end = max_off;
    s.sup_value = sup;
    s.positive_off_end = min_off > 0.0;
    s.bounded_off_end = max_off <= 1.0 + tol_limit;
    s.sup_exceeds_one = sup > 1.0;
    s.sup_on_own_end = sup_vertex >= 0 && man.end_of[sup_vertex] == fn.end_index;

    // r -> max_{dE(r)} u strictly increasing, r -> max_{dF(r)} u nonincreasing
    double prev_e = -std::numeric_limits<double>::infinity();
    double prev_f = std::numeric_limits<double>::infinity();
    s.e_max_strictly_increasing = true;
    s.f_max_nonincreasing = true;
    s.increase_margin = std::numeric_limits<double>::infinity();
    s.decrease_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < man.layer_count(); ++j) {
      if (man.layer_radii[j] > R - kRadiusTol) break;
      double e_max = -std::numeric_limits<double>::infinity();
      double f_max = -std::numeric_limits<double>::infinity();
      for (const int x : man.level_set_at(j)) {
        if (man.end_of[x] == fn.end_index)
          e_max = std::max(e_max, fn.values[x]);
        else
          f_max = std::max(f_max, fn.values[x]);
      }
      if (std::isfinite(e_max)) {
        if (std::isfinite(prev_e)) {
          s.increase_margin = std::min(s.increase_margin, e_max - prev_e);
          if (e_max <= prev_e) s.e_max_strictly_increasing = false;
        }
        prev_e = e_max;
      }
      if (std::isfinite(f_max)) {
        if (std::isfinite(prev_f)) {
          s.decrease_margin = std::min(s.decrease_margin, prev_f - f_max);
          if (f_max > prev_f + 1e-12) s.f_max_nonincreasing = false;
        }
        prev_f = f_max;
      }
    }
    rep.pass = rep.pass && s.pass();
    rep.per_end.push_back(s);
  }
  return rep;
}

std::vector<double> gram_matrix(const std::vector<EndFunction>& fns, const DiscreteManifold& man,
                                double domain_radius) {
  const int k = static_cast<int>(fns.size());
  std::vector<double> g(static_cast<std::size_t>(k) * k, 0.0);
  for (int x = 0; x < man.size(); ++x) {
    if (man.rho[x] >= domain_radius - kRadiusTol) continue;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        g[static_cast<std::size_t>(i) * k + j] += man.mu[x] * fns[i].values[x] * fns[j].values[x];
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      g[static_cast<std::size_t>(i) * k + j] = g[static_cast<std::size_t>(j) * k + i];
  return g;
}

int gram_rank(const std::vector<EndFunction>& fns, const DiscreteManifold& man,
              double domain_radius, double rank_tol) {
  const int k = static_cast<int>(fns.size());
  if (k == 0) return 0;
  const auto eig = symmetric_eigenvalues(gram_matrix(fns, man, domain_radius), k);
  const double top = eig.front();
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (const double e : eig)
    if (e > rank_tol * top) ++rank;
  return rank;
}

double harnack_check(const DiscreteManifold& man, const std::vector<double>& u, double r) {
  for (int x = 0; x < man.size(); ++x) {
    if (man.rho[x] < 2.0 * r - kRadiusTol && !(u[x] > 0.0))
      fail(ErrorCode::NonPositiveInput,
           "u must be positive on D(2r); offending vertex " + std::to_string(x));
  }
  double worst = 0.0;
  const auto& g = man.graph;
  for (int x = 0; x < man.size(); ++x) {
    if (man.rho[x] >= r - kRadiusTol) continue;
    for (int k = g.offset[x]; k < g.offset[x + 1]; ++k) {
      const int y = g.nbr[k];
      if (man.rho[y] >= r - kRadiusTol) continue;
      worst = std::max(worst, std::abs(std::log(u[x]) - std::log(u[y])) / man.h());
    }
  }
  return worst;
}

}  // namespace endslab
