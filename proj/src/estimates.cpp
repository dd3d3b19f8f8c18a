#include "endslab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "endslab/errors.hpp"
#include "endslab/parallel.hpp"
#include "endslab/quadrature.hpp"

namespace endslab {

namespace {
constexpr double kRadiusTol = 1e-9;

std::vector<int> tail_layer_indices(const DiscreteManifold& man, double tail_fraction,
                                    int minimum = 2) {
  const int layers = man.layer_count();
  int count = static_cast<int>(std::ceil(tail_fraction * layers));
  count = std::clamp(count, std::min(minimum, layers), layers);
  std::vector<int> idx;
  for (int j = layers - count; j < layers; ++j) idx.push_back(j);
  return idx;
}

}  // namespace

LimsupValue limsup_proxy(const std::vector<double>& tail_values) {
  LimsupValue out;
  if (tail_values.empty()) return out;
  out.value = *std::max_element(tail_values.begin(), tail_values.end());
  if (tail_values.size() >= 2) {
    bool growing = true;
    for (std::size_t i = 1; i < tail_values.size(); ++i) {
      if (!(tail_values[i] > 1.10 * tail_values[i - 1])) {
        growing = false;
        break;
      }
    }
    out.diverged = growing;
  }
  return out;
}

LimsupValue compute_alpha_level(const DiscreteManifold& man, double q, double tail_fraction) {
  if (!(q >= 1.0)) fail(ErrorCode::InvalidSpec, "alpha requires q >= 1");
  std::vector<double> vals;
  for (const int j : tail_layer_indices(man, tail_fraction)) {
    const auto& level = man.level_set_at(j);
    if (level.empty()) fail(ErrorCode::EmptyLayer, "no vertices at a sampled radius");
    const double R = man.layer_radii[j];
    double num = 0.0, den = 0.0;
    for (const int x : level) {
      num += man.mu[x] * std::pow(man.sigma[x], q);
      den += man.mu[x];
    }
    vals.push_back(std::pow(std::pow(R, 2.0 * q) * num / den, 1.0 / q));
  }
  return limsup_proxy(vals);
}

LimsupValue compute_alpha_end(const DiscreteManifold& man, int end_index, double q,
                              double tail_fraction) {
  if (!(q >= 1.0)) fail(ErrorCode::InvalidSpec, "alpha requires q >= 1");
  if (end_index < 0 || end_index >= man.end_count())
    fail(ErrorCode::InvalidSpec, "end index out of range");
  std::vector<double> vals;
  for (const int j : tail_layer_indices(man, tail_fraction)) {
    const auto& level = man.level_set_at(j);
    if (level.empty()) fail(ErrorCode::EmptyLayer, "no vertices at a sampled radius");
    const double R = man.layer_radii[j];
    // integrand restricted to the end, normalization by the full level area
    double num = 0.0, den = 0.0;
    for (const int x : level) {
      den += man.mu[x];
      if (man.end_of[x] == end_index) num += man.mu[x] * std::pow(man.sigma[x], q);
    }
    vals.push_back(std::pow(std::pow(R, 2.0 * q) * num / den, 1.0 / q));
  }
  return limsup_proxy(vals);
}

BallFunctionals compute_ball_functionals(const DiscreteManifold& man, int n_dim, double q,
                                         double tail_fraction) {
  BallFunctionals out;
  std::vector<double> alpha_vals;
  const double exponent = (n_dim - 1.0) / q;
  for (const int j : tail_layer_indices(man, tail_fraction)) {
    const double R = man.layer_radii[j];
    const double V = man.sublevel_measure(R);
    if (V <= 0.0) continue;
    double acc = 0.0;
    for (int x = 0; x < man.size(); ++x)
      if (man.rho[x] < R - kRadiusTol)
        acc += man.mu[x] * std::pow(std::pow(man.rho[x], q) * man.sigma[x], exponent);
    alpha_vals.push_back(acc / V);
    out.v_infinity = std::max(out.v_infinity, V / std::pow(R, n_dim));
  }
  out.alpha_ball = limsup_proxy(alpha_vals);
  return out;
}

BallFunctionals compute_ball_functionals(const std::function<double(double)>& area,
                                         const std::function<double(double)>& sigma_radial,
                                         double r_lo, double r_hi, int n_dim, double q,
                                         double tail_fraction, int rungs) {
  BallFunctionals out;
  const double exponent = (n_dim - 1.0) / q;
  const auto integrand = [&](double r) {
    return area(r) * std::pow(std::pow(r, q) * sigma_radial(r), exponent);
  };
  const double tail_lo = r_hi - tail_fraction * (r_hi - r_lo);
  std::vector<double> alpha_vals;
  const int panels = 2000;
  for (int i = 0; i < rungs; ++i) {
    const double R = tail_lo + (r_hi - tail_lo) * (i + 1.0) / rungs;
    const double V = composite_simpson(area, r_lo, R, panels);
    if (!(V > 0.0)) continue;
    alpha_vals.push_back(composite_simpson(integrand, r_lo, R, panels) / V);
    out.v_infinity = std::max(out.v_infinity, V / std::pow(R, n_dim));
  }
  out.alpha_ball = limsup_proxy(alpha_vals);
  return out;
}

double exponent_a(double m, double upsilon) {
  if (!(m > 0.0)) fail(ErrorCode::InvalidSpec, "exponent_a requires m > 0");
  if (upsilon < 0.0) fail(ErrorCode::InvalidSpec, "exponent_a requires Upsilon >= 0");
  const double s = 4.0 * m - 1.0;
  return 0.5 * (std::sqrt(s * s + 16.0 * upsilon) - s);
}

double growth_bound_exponent(double m, double upsilon) {
  return exponent_a(m, upsilon) + 4.0 * m + 1.0;
}

EpsilonInfo epsilon_of(double q, double nu) {
  if (!(q >= 1.0)) fail(ErrorCode::InvalidSpec, "epsilon_of requires q >= 1");
  if (!(nu > 1.0)) fail(ErrorCode::InvalidSpec, "epsilon_of requires nu > 1");
  EpsilonInfo info;
  info.epsilon = (2.0 * q + 1.0 - 2.0 * nu) / q;
  info.critical = std::abs(info.epsilon) < 1e-12;
  info.in_regime = info.epsilon >= -1e-12 && info.epsilon < 0.5 - 1e-12;
  return info;
}

namespace {

// layer radii in [r0, top], cumulative layer sums of weight(x) over the band
struct CumulativeSeries {
  std::vector<int> layer_index;
  ProfileSeries series;
};

CumulativeSeries cumulative_over_layers(const DiscreteManifold& man, double r0, bool strict_lo,
                                        const std::function<double(int)>& weight,
                                        const std::string& name) {
  CumulativeSeries out;
  out.series.name = name;
  const int j0 = man.radius_index(man.snap_down(r0));
  double acc = 0.0;
  for (int j = j0; j < man.layer_count(); ++j) {
    const double r = man.layer_radii[j];
    out.layer_index.push_back(j);
    out.series.radii.push_back(r);
    out.series.values.push_back(acc);  // sum over the half-open band up to r
    // then absorb the layer at r for the next sample
    bool counted = true;
    if (strict_lo && std::abs(r - r0) <= kRadiusTol) counted = false;
    if (r < r0 - kRadiusTol) counted = false;
    if (counted)
      for (const int x : man.level_set_at(j)) acc += weight(x);
  }
  return out;
}

bool tail_monotone_growth(const std::vector<double>& v, double factor = 1.10) {
  const std::size_t n = v.size();
  if (n < 4) return false;
  const std::size_t start = n - std::max<std::size_t>(3, n * 3 / 10);
  for (std::size_t i = start + 1; i < n; ++i) {
    if (!(v[i] > factor * std::max(v[i - 1], 0.0))) return false;
  }
  return true;
}

}  // namespace

DiagnosticsReport omega_diagnostics(const DiscreteManifold& man, const std::vector<double>& u,
                                    double r0, double m, double upsilon) {
  DiagnosticsReport rep;
  const double r0s = man.snap_down(r0);
  int count = 0;
  for (const double r : man.layer_radii)
    if (r >= r0s - kRadiusTol) ++count;
  if (count < 5) fail(ErrorCode::InsufficientLayers, "need at least 5 radii in [r0, r_max]");

  auto cum = cumulative_over_layers(
      man, r0s, /*strict_lo=*/false,
      [&](int x) { return man.mu[x] * u[x] / (man.rho[x] * man.rho[x]); }, "omega");
  rep.omega = cum.series;

  rep.a = exponent_a(m, upsilon);
  rep.xi.name = "xi";
  rep.xi.radii = rep.omega.radii;
  rep.xi.values.resize(rep.omega.size());
  for (std::size_t i = 0; i < rep.omega.size(); ++i)
    rep.xi.values[i] = std::pow(rep.omega.radii[i], rep.a) * rep.omega.values[i];

  // residual r^2 w'' - (4m-2) r w' - 4 Y w at interior radii
  std::vector<double> residuals;
  rep.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < rep.omega.size(); ++i) {
    const double r = rep.omega.radii[i];
    const double res = r * r * rep.omega.second_derivative(i) -
                       (4.0 * m - 2.0) * r * rep.omega.derivative(i) -
                       4.0 * upsilon * rep.omega.values[i];
    residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.residual_diverging = tail_monotone_growth(residuals);

  // structure of xi: r^{a+4m} * d/dr( xi' / r^{2a+4m-2} ) should stay bounded
  const double pw = 2.0 * rep.a + 4.0 * m - 2.0;
  std::vector<double> g(rep.xi.size(), 0.0);
  for (std::size_t i = 1; i + 1 < rep.xi.size(); ++i)
    g[i] = rep.xi.derivative(i) / std::pow(rep.xi.radii[i], pw);
  std::vector<double> structure;
  rep.xi_structure_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 2; i + 2 < rep.xi.size(); ++i) {
    const double dg =
        (g[i + 1] - g[i - 1]) / (rep.xi.radii[i + 1] - rep.xi.radii[i - 1]);
    const double val = dg * std::pow(rep.xi.radii[i], rep.a + 4.0 * m);
    structure.push_back(val);
    rep.xi_structure_max = std::max(rep.xi_structure_max, val);
  }
  rep.xi_structure_diverging = tail_monotone_growth(structure);
  return rep;
}

ChiReport chi_diagnostics(const DiscreteManifold& man, const std::vector<double>& u, double r0,
                          double m, double q, double theta, double nu, double tail_fraction) {
  if (!(theta > 0.0 && theta <= 1.0)) fail(ErrorCode::InvalidSpec, "theta must lie in (0,1]");
  if (!(q >= 1.0)) fail(ErrorCode::InvalidSpec, "q must be >= 1");
  ChiReport rep;
  rep.theta = theta;
  rep.q = q;
  rep.nu = nu;
  const double r0s = man.snap_down(r0);
  const double fourm = 4.0 * m;

  auto cum = cumulative_over_layers(
      man, r0s, /*strict_lo=*/true,
      [&](int x) { return man.mu[x] * u[x] / std::pow(man.rho[x], fourm); }, "chi");
  rep.chi = cum.series;
  // drop the outermost rung: its layer holds exhaustion data, not solution
  if (rep.chi.size() < 6) fail(ErrorCode::InsufficientLayers, "need at least 6 radii in [r0, r_max]");
  rep.chi.radii.pop_back();
  rep.chi.values.pop_back();
  cum.layer_index.pop_back();
  rep.chi_monotone = rep.chi.nondecreasing();

  rep.chi_prime.name = "chi_prime";
  for (std::size_t i = 0; i < rep.chi.size(); ++i) {
    const int j = cum.layer_index[i];
    const double r = man.layer_radii[j];
    double acc = 0.0;
    for (const int x : man.level_set_at(j)) acc += man.mu[x] / man.h() * u[x];
    rep.chi_prime.radii.push_back(r);
    rep.chi_prime.values.push_back(acc / std::pow(r, fourm));
  }

  // boundary integral of u + |grad u| over Sigma(r0)
  {
    const int j0 = man.radius_index(r0s);
    double acc = 0.0;
    for (const int x : man.level_set_at(j0))
      acc += man.mu[x] / man.h() * (u[x] + man.gradient_at(x, u));
    rep.Lambda0 = acc;
  }

  const LimsupValue alpha = compute_alpha_level(man, q, tail_fraction);
  rep.alpha_bar = alpha.diverged ? 1.0 : std::min(alpha.value, 1.0);

  const double theta_factor = std::pow(theta, 2.0 * nu / q);
  rep.C0_raw = -std::numeric_limits<double>::infinity();
  rep.inequality_holds = true;
  // convolution bound at radius r: r^{4m} chi'' <= (C0 a_bar / theta^{2nu/q}) I(r) + Lambda0
  for (std::size_t i = 1; i + 1 < rep.chi.size(); ++i) {
    const double r = rep.chi.radii[i];
    if ((1.0 + theta) * r > rep.chi.radii.back() + kRadiusTol) break;
    const double chi2 =
        (rep.chi_prime.values[i + 1] - rep.chi_prime.values[i - 1]) /
        (rep.chi_prime.radii[i + 1] - rep.chi_prime.radii[i - 1]);
    const double lhs = std::pow(r, fourm) * chi2;
    // trapezoid of chi((1+theta)t)^{1/q} chi'(t)^{1-1/q} t^{4m-2-1/q} over [r0, r]
    double integral = 0.0;
    for (std::size_t t = 0; t + 1 <= i; ++t) {
      auto f = [&](std::size_t idx) {
        const double tt = rep.chi.radii[idx];
        const double cv = std::max(rep.chi.interpolate((1.0 + theta) * tt), 0.0);
        const double cp = std::max(rep.chi_prime.values[idx], 0.0);
        return std::pow(cv, 1.0 / q) * std::pow(cp, 1.0 - 1.0 / q) *
               std::pow(tt, fourm - 2.0 - 1.0 / q);
      };
      integral += 0.5 * (f(t) + f(t + 1)) * (rep.chi.radii[t + 1] - rep.chi.radii[t]);
    }
    const double excess = lhs - rep.Lambda0;
    if (rep.alpha_bar > 0.0 && integral > 0.0) {
      rep.C0_raw = std::max(rep.C0_raw, excess * theta_factor / (rep.alpha_bar * integral));
    } else if (excess > 0.0) {
      rep.inequality_holds = false;  // no sigma mass to absorb the excess
    }
  }
  if (!std::isfinite(rep.C0_raw)) rep.C0_raw = 0.0;
  rep.C0 = std::max(rep.C0_raw, 0.0);
  return rep;
}

namespace {

LineFit fit_layer_max_loglog(const DiscreteManifold& man, const std::vector<double>& u,
                             double tail_fraction) {
  const int layers = man.layer_count();
  // interior radii only: the outermost layer carries exhaustion data
  std::vector<int> usable;
  for (int j = 0; j < layers - 1; ++j) usable.push_back(j);
  int count = static_cast<int>(std::ceil(tail_fraction * usable.size()));
  count = std::clamp(count, std::min<int>(5, static_cast<int>(usable.size())),
                     static_cast<int>(usable.size()));
  if (count < 5) fail(ErrorCode::InsufficientLayers, "growth fit needs at least 5 tail layers");
  std::vector<double> xs, ys;
  for (int idx = static_cast<int>(usable.size()) - count; idx < static_cast<int>(usable.size());
       ++idx) {
    const int j = usable[idx];
    double mx = -std::numeric_limits<double>::infinity();
    for (const int x : man.level_set_at(j)) mx = std::max(mx, u[x]);
    if (!(mx > 0.0)) fail(ErrorCode::NonPositiveInput, "layer maximum is not positive");
    xs.push_back(std::log(man.layer_radii[j]));
    ys.push_back(std::log(mx));
  }
  return fit_line(xs, ys);
}

}  // namespace

double measured_upsilon(const DiscreteManifold& man, double r_lo) {
  double up = 0.0;
  for (int x = 0; x < man.size(); ++x)
    if (man.rho[x] >= r_lo - kRadiusTol)
      up = std::max(up, man.sigma[x] * man.rho[x] * man.rho[x]);
  return up;
}

GrowthReport growth_fit(const DiscreteManifold& man, const std::vector<double>& u,
                        double tail_fraction, double m, double q, double nu, double fit_tol,
                        std::optional<double> upsilon, std::optional<double> chi_C0) {
  GrowthReport rep;
  rep.m = m;
  rep.q = q;
  rep.nu = nu;
  rep.fit_tol = fit_tol;
  const LineFit fit = fit_layer_max_loglog(man, u, tail_fraction);
  rep.fitted_exponent = fit.slope;
  rep.fitted_intercept = fit.intercept;

  const EpsilonInfo eps = epsilon_of(q, nu);
  rep.epsilon = eps.epsilon;
  if (upsilon) {
    rep.upsilon = *upsilon;
    rep.bound_a = growth_bound_exponent(m, *upsilon);
  }
  if (chi_C0 && eps.in_regime && !eps.critical) {
    rep.bound_gamma = std::pow(100.0 * std::max(*chi_C0, 0.0), 2.0 / eps.epsilon) + 4.0 * m + 1.0;
  }
  double bound = std::numeric_limits<double>::infinity();
  if (rep.bound_a) bound = std::min(bound, *rep.bound_a);
  if (rep.bound_gamma) bound = std::min(bound, *rep.bound_gamma);
  rep.pass = !std::isfinite(bound) || rep.fitted_exponent <= bound + fit_tol;
  return rep;
}

namespace {

void check_subsolution(const DiscreteManifold& man, const std::vector<double>& u, double r_lo,
                       double r_hi, double tol, int end_index = -1) {
  for (int x = 0; x < man.size(); ++x) {
    const double r = man.rho[x];
    if (r < r_lo - kRadiusTol || r > r_hi - kRadiusTol) continue;
    if (r > man.top_radius() - kRadiusTol) continue;  // pinned exhaustion data
    if (end_index >= 0 && man.end_of[x] != end_index) continue;
    if (!(u[x] > 0.0)) fail(ErrorCode::NonPositiveInput, "subsolution must be positive");
    double lhs = 0.0, scale = man.mu[x] * man.sigma[x] * std::abs(u[x]);
    for (int k = man.graph.offset[x]; k < man.graph.offset[x + 1]; ++k) {
      lhs += man.graph.w[k] * (u[man.graph.nbr[k]] - u[x]);
      scale += man.graph.w[k] * (std::abs(u[man.graph.nbr[k]]) + std::abs(u[x]));
    }
    const double rhs = man.mu[x] * man.sigma[x] * u[x];
    if (lhs - rhs < -tol * std::max(scale, 1e-300))
      fail(ErrorCode::NotSubsolution,
           "vertexwise subsolution check failed at vertex " + std::to_string(x));
  }
}

MeanValueReport moser_impl(const DiscreteManifold& man, const std::vector<double>& u, double R,
                           double nu, const std::vector<double>& thetas, double subsol_tol,
                           int end_index) {
  if (thetas.empty()) fail(ErrorCode::InvalidSpec, "need at least one theta");
  const double R0 = man.spec.R0;
  if (R < 4.0 * R0 - kRadiusTol) fail(ErrorCode::DomainTooSmall, "mean value check needs R >= 4 R0");
  if (2.0 * R > man.top_radius() + kRadiusTol)
    fail(ErrorCode::DomainTooSmall, "mean value check needs 2R <= r_max");
  const bool localized = end_index >= 0;
  check_subsolution(man, u, localized ? R / 4.0 : R0, 2.0 * R, subsol_tol, end_index);

  MeanValueReport rep;
  rep.R = R;
  rep.nu = nu;
  rep.localized = localized;
  rep.end_index = end_index;

  const int jR = man.radius_index(man.snap_down(R));
  double lhs = -std::numeric_limits<double>::infinity();
  for (const int x : man.level_set_at(jR)) {
    if (localized && man.end_of[x] != end_index) continue;
    lhs = std::max(lhs, u[x]);
  }
  if (!(lhs > 0.0)) fail(ErrorCode::NonPositiveInput, "level-set supremum is not positive");

  for (const double theta : thetas) {
    if (!(theta > 0.0 && theta <= 1.0)) fail(ErrorCode::InvalidSpec, "theta must lie in (0,1]");
    const double outer = (1.0 + theta) * R;
    double integral = 0.0;
    for (int x = 0; x < man.size(); ++x) {
      const double r = man.rho[x];
      if (r >= outer - kRadiusTol) continue;
      if (localized) {
        if (man.end_of[x] != end_index || r < R / 4.0 - kRadiusTol) continue;
      } else {
        if (r < R0 - kRadiusTol) continue;
      }
      integral += man.mu[x] * u[x];
    }
    if (!(integral > 0.0)) fail(ErrorCode::NonPositiveInput, "annulus integral is not positive");
    const double volume = man.sublevel_measure(localized ? 2.0 * R : outer);
    const double Q = lhs * volume / integral;
    rep.thetas.push_back(theta);
    rep.Q.push_back(Q);
    rep.A0_per_theta.push_back(Q * std::pow(theta, 2.0 * nu));
  }
  rep.A0 = *std::max_element(rep.A0_per_theta.begin(), rep.A0_per_theta.end());
  if (rep.thetas.size() >= 2) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rep.thetas.size(); ++i) {
      xs.push_back(std::log(1.0 / rep.thetas[i]));
      ys.push_back(std::log(rep.Q[i]));
    }
    rep.theta_exponent = fit_line(xs, ys).slope;
  }
  return rep;
}

}  // namespace

MeanValueReport moser_verify(const DiscreteManifold& man, const std::vector<double>& u, double R,
                             double nu, const std::vector<double>& thetas, double subsol_tol) {
  return moser_impl(man, u, R, nu, thetas, subsol_tol, -1);
}

MeanValueReport moser_verify_end(const DiscreteManifold& man, const std::vector<double>& u,
                                 int end_index, double R, double nu,
                                 const std::vector<double>& thetas, double subsol_tol) {
  if (end_index < 0 || end_index >= man.end_count())
    fail(ErrorCode::InvalidSpec, "end index out of range");
  return moser_impl(man, u, R, nu, thetas, subsol_tol, end_index);
}

void jacobi_smooth(const DiscreteManifold& man, std::vector<double>& phi, int iterations,
                   double R) {
  auto project = [&] {
    for (int x = 0; x < man.size(); ++x)
      if (man.rho[x] >= R - kRadiusTol) phi[x] = 0.0;
  };
  project();
  std::vector<double> next(phi.size());
  for (int it = 0; it < iterations; ++it) {
    for (int x = 0; x < man.size(); ++x) {
      double wsum = 0.0, acc = 0.0;
      for (int k = man.graph.offset[x]; k < man.graph.offset[x + 1]; ++k) {
        wsum += man.graph.w[k];
        acc += man.graph.w[k] * phi[man.graph.nbr[k]];
      }
      next[x] = 0.5 * phi[x] + 0.5 * (wsum > 0.0 ? acc / wsum : phi[x]);
    }
    phi.swap(next);
    project();
  }
}

double sobolev_measure(const DiscreteManifold& man, double R, double mu_exponent,
                       const std::vector<std::vector<double>>& trials) {
  if (!(mu_exponent > 1.0)) fail(ErrorCode::InvalidSpec, "Sobolev exponent mu must exceed 1");
  const double V = man.sublevel_measure(R);
  if (!(V > 0.0)) fail(ErrorCode::DomainTooSmall, "empty sublevel set");
  double best = -std::numeric_limits<double>::infinity();
  int usable = 0;
  for (const auto& trial : trials) {
    std::vector<double> phi = trial;
    for (int x = 0; x < man.size(); ++x)
      if (man.rho[x] >= R - kRadiusTol) phi[x] = 0.0;
    double lhs_acc = 0.0, energy = 0.0, mass = 0.0;
    for (int x = 0; x < man.size(); ++x) {
      lhs_acc += man.mu[x] * std::pow(std::abs(phi[x]), 2.0 * mu_exponent);
      mass += man.mu[x] * man.sigma[x] * phi[x] * phi[x];
    }
    const auto& g = man.graph;
    for (int x = 0; x < man.size(); ++x)
      for (int k = g.offset[x]; k < g.offset[x + 1]; ++k) {
        const int y = g.nbr[k];
        if (y < x) continue;
        const double d = phi[x] - phi[y];
        energy += g.w[k] * d * d;
      }
    const double rhs = R * R * (energy + mass) / V;
    if (!(rhs > 0.0)) continue;
    ++usable;
    const double lhs = std::pow(lhs_acc / V, 1.0 / mu_exponent);
    best = std::max(best, lhs / rhs);
  }
  if (usable == 0) fail(ErrorCode::EmptyTrialSet, "no usable trial functions");
  return best;
}

std::vector<std::vector<double>> default_trial_functions(const DiscreteManifold& man, double R,
                                                         std::uint64_t seed, int n_random) {
  std::vector<std::vector<double>> trials;
  for (const double s : {0.25, 0.5, 1.0}) {
    std::vector<double> phi(man.size(), 0.0);
    for (int x = 0; x < man.size(); ++x)
      phi[x] = std::max(0.0, 1.0 - man.rho[x] / (s * R));
    trials.push_back(std::move(phi));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < n_random; ++t) {
    std::vector<double> phi(man.size());
    for (auto& v : phi) v = unif(rng);
    jacobi_smooth(man, phi, 5, R);
    trials.push_back(std::move(phi));
  }
  return trials;
}

DimensionBound dimension_bound(double m, double d, double A0, double mu_exponent,
                               std::optional<double> measured_mean_value) {
  if (!(m > 0.0) || d < 0.0 || !(A0 > 0.0) || !(mu_exponent > 1.0))
    fail(ErrorCode::InvalidSpec, "dimension_bound requires m>0, d>=0, A0>0, mu>1");
  DimensionBound out;
  const double gamma = 4.0 * m + 1.0;
  out.gamma_bar = std::pow(2.0, gamma + 2.0 * d + 1.0);
  out.dim_bound = measured_mean_value.value_or(A0) * out.gamma_bar;
  return out;
}

AlphaReport compute_alpha_report(const DiscreteManifold& man, const std::vector<double>& alpha_q,
                                 double ball_q, double tail_fraction) {
  AlphaReport rep;
  rep.q = alpha_q;
  const auto tails = tail_layer_indices(man, tail_fraction);
  rep.tail_lo = man.layer_radii[tails.front()];
  rep.tail_hi = man.layer_radii[tails.back()];
  for (const double q : alpha_q) {
    rep.alpha_level.push_back(compute_alpha_level(man, q, tail_fraction));
    std::vector<LimsupValue> per_end;
    for (int i = 0; i < man.end_count(); ++i)
      per_end.push_back(compute_alpha_end(man, i, q, tail_fraction));
    rep.alpha_end.push_back(std::move(per_end));
  }
  rep.holder_monotone = true;
  for (std::size_t i = 1; i < rep.alpha_level.size(); ++i) {
    const auto& lo = rep.alpha_level[i - 1];
    const auto& hi = rep.alpha_level[i];
    if (lo.diverged && !hi.diverged) rep.holder_monotone = false;
    if (!lo.diverged && !hi.diverged && hi.value < lo.value - 1e-9 * std::max(1.0, lo.value))
      rep.holder_monotone = false;
  }
  const auto ball = compute_ball_functionals(man, man.spec.n_dim, ball_q, tail_fraction);
  rep.alpha_ball = ball.alpha_ball;
  rep.v_infinity = ball.v_infinity;
  return rep;
}

EndCountReport end_count_pipeline(const DiscreteManifold& man, const EndCountParams& params) {
  EndCountReport rep;
  rep.k = man.end_count();
  if (rep.k < 2) fail(ErrorCode::SingleEnd, "end count pipeline requires >= 2 ends");
  const double r0_norm = params.r0_norm > 0.0 ? params.r0_norm : man.spec.R0;
  const double r0_diag = params.r0_diag > 0.0 ? params.r0_diag : 4.0 * man.spec.R0;

  rep.end_functions.assign(rep.k, {});
  parallel_for_index(rep.k, params.jobs, [&](int i) {
    rep.end_functions[i] =
        construct_end_function(man, i, r0_norm, params.tol_limit, params.tol_lin);
  });
  rep.all_converged = std::all_of(rep.end_functions.begin(), rep.end_functions.end(),
                                  [](const EndFunction& f) { return f.converged; });

  rep.separation = verify_separation(rep.end_functions, man, params.tol_limit);
  rep.gram_eigs =
      symmetric_eigenvalues(gram_matrix(rep.end_functions, man, man.top_radius()), rep.k);
  rep.rank = gram_rank(rep.end_functions, man, man.top_radius(), params.rank_tol);
  rep.rank_matches = rep.rank == rep.k;

  rep.upsilon_measured = measured_upsilon(man, r0_diag);

  const double m = man.spec.m();
  const double r_max = man.top_radius();
  if (params.do_growth) {
    int tail_count = 0;
    for (const double r : man.layer_radii)
      if (r >= man.snap_down(r0_diag) - 1e-9) ++tail_count;
    if (tail_count < 6) {
      rep.growth_skip_reason = "fewer than 6 layers above r0_diag";
    } else {
      rep.growth_ran = true;
      double d_used = 0.0;
      for (const auto& fn : rep.end_functions) {
        const ChiReport chi = chi_diagnostics(man, fn.values, r0_diag, m, params.growth_q,
                                              params.chi_theta, params.nu, params.tail_fraction);
        rep.chi.push_back(chi);
        rep.omega.push_back(omega_diagnostics(man, fn.values, r0_diag, m, rep.upsilon_measured));
        rep.growth.push_back(growth_fit(man, fn.values, params.tail_fraction, m, params.growth_q,
                                        params.nu, params.fit_tol, rep.upsilon_measured, chi.C0));
        d_used = std::max(d_used, rep.growth.back().fitted_exponent);
      }
      rep.d_used = std::max(d_used, 0.0);
    }
  }

  if (params.do_moser) {
    // mean value constants at the exhaustion rungs satisfying R >= 4 R0, 2R <= r_max
    const double R_hi = man.snap_down(r_max / 2.0);
    const double R_lo = man.snap_down(r_max / 4.0);
    if (R_lo < 4.0 * man.spec.R0 - 1e-9) {
      rep.moser_skip_reason = "exhaustion rungs below 4 R0";
    } else {
      rep.moser_ran = true;
      double A0 = 0.0;
      const double r_harnack = man.snap_down(R_hi / 4.0);
      for (const auto& fn : rep.end_functions) {
        rep.moser_lo.push_back(moser_verify(man, fn.values, R_lo, params.nu, params.moser_thetas));
        rep.moser_hi.push_back(moser_verify(man, fn.values, R_hi, params.nu, params.moser_thetas));
        A0 = std::max({A0, rep.moser_lo.back().A0, rep.moser_hi.back().A0});
        // log-gradient bound of the exhaustion family at a fixed inner radius
        auto [u_mid, c_mid] =
            normalize(dirichlet_solve(man, fn.end_index, R_hi, params.tol_lin), man, r0_norm);
        (void)c_mid;
        rep.harnack_lo.push_back(harnack_check(man, u_mid, r_harnack));
        rep.harnack_hi.push_back(harnack_check(man, fn.values, r_harnack));
      }
      rep.A0_used = A0;
    }
  }
  if (rep.A0_used <= 0.0) rep.A0_used = 1.0;

  if (params.do_alpha)
    rep.alpha = compute_alpha_report(man, params.alpha_q, params.growth_q, params.tail_fraction);

  if (params.do_dimension) {
    const double mu_exponent = params.nu / (params.nu - 1.0);
    rep.dimension = dimension_bound(m, rep.d_used, rep.A0_used, mu_exponent,
                                    rep.moser_ran ? std::optional<double>(rep.A0_used)
                                                  : std::nullopt);
    rep.dim_bound_holds = static_cast<double>(rep.k) <= rep.dimension.dim_bound;
  }
  return rep;
}

}  // namespace endslab
