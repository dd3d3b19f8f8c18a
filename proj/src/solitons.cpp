#include "endslab/solitons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "endslab/errors.hpp"
#include "endslab/quadrature.hpp"

namespace endslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// area of the unit sphere S^{n-1} in R^n
double unit_sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

SolitonExample make_gaussian(int n) {
  SolitonExample ex;
  ex.name = "gaussian" + std::to_string(n);
  ex.description = "flat R^" + std::to_string(n) + ", f = r^2/4, S = 0";
  ex.n = n;
  ex.f = [](double r) { return 0.25 * r * r; };
  ex.S = [](double) { return 0.0; };
  ex.grad_f_sq = [](double r) { return 0.25 * r * r; };
  const double an = unit_sphere_area(n);
  ex.area = [an, n](double r) { return an * std::pow(r, n - 1); };
  ex.r_lo = 0.0;
  ex.r_quad_max = 60.0;
  ex.check_lo = 0.0;
  return ex;
}

// round cylinder S^{n-1}(sqrt(2(n-2))) x R with the axis coordinate as radius
SolitonExample make_cylinder(int n) {
  SolitonExample ex;
  ex.name = "cylinder" + std::to_string(n);
  ex.description = "round cylinder S^" + std::to_string(n - 1) + " x R, f = t^2/4 + (n-1)/2";
  ex.n = n;
  const double s = 0.5 * (n - 1.0);
  ex.f = [s](double t) { return 0.25 * t * t + s; };
  ex.S = [s](double) { return s; };
  ex.grad_f_sq = [](double t) { return 0.25 * t * t; };
  // cross-section: the (n-1)-sphere of radius sqrt(2(n-2))
  const double cross = unit_sphere_area(n) * std::pow(2.0 * (n - 2.0), 0.5 * (n - 1.0));
  ex.area = [cross](double) { return 2.0 * cross; };  // two rays of the axis
  ex.r_lo = 0.0;
  ex.r_quad_max = 60.0;
  ex.check_lo = 0.0;
  return ex;
}

// conical toy profile: f = r^2/4 + c/r^2 and S defined by the identity,
// S = 3c/r^2 - 4c^2/r^6, so that S r^2 -> 3c at infinity
SolitonExample make_conical_toy(int n, double c) {
  SolitonExample ex;
  ex.name = "conical_toy" + std::to_string(n);
  ex.description = "asymptotically conical toy, f = r^2/4 + c/r^2, S r^2 -> 3c";
  ex.n = n;
  ex.f = [c](double r) { return 0.25 * r * r + c / (r * r); };
  ex.grad_f_sq = [c](double r) {
    const double fp = 0.5 * r - 2.0 * c / (r * r * r);
    return fp * fp;
  };
  ex.S = [c](double r) {
    return 3.0 * c / (r * r) - 4.0 * c * c / std::pow(r, 6);
  };
  const double an = unit_sphere_area(n);
  ex.area = [an, n](double r) { return an * std::pow(r, n - 1); };
  ex.r_lo = 1.0;  // S >= 0 needs r^4 >= 4c/3
  ex.r_quad_max = 60.0;
  ex.check_lo = 1.0;
  return ex;
}

}  // namespace

const std::vector<SolitonExample>& soliton_catalog() {
  static const std::vector<SolitonExample> catalog = {
      make_gaussian(2),    make_gaussian(3), make_gaussian(4),
      make_cylinder(3),    make_cylinder(4), make_conical_toy(4, 0.5),
  };
  return catalog;
}

const SolitonExample* find_soliton(std::string_view name) {
  for (const auto& ex : soliton_catalog())
    if (ex.name == name) return &ex;
  return nullptr;
}

double soliton_identity_residual(const SolitonExample& ex, int grid_points) {
  double worst = 0.0;
  const double lo = std::max(ex.r_lo, 1e-6);
  for (int i = 0; i <= grid_points; ++i) {
    const double r = lo + (ex.r_quad_max - lo) * i / grid_points;
    worst = std::max(worst, std::abs(ex.grad_f_sq(r) + ex.S(r) - ex.f(r)));
  }
  return worst;
}

SolitonExample with_f_shifted(const SolitonExample& ex, double delta) {
  SolitonExample out = ex;
  auto f = ex.f;
  out.f = [f, delta](double r) { return f(r) + delta; };
  out.name = ex.name + "_shifted";
  return out;
}

FBoundsReport f_bounds_check(const SolitonExample& ex) {
  FBoundsReport rep;
  const int grid = 2000;
  const double lo = ex.check_lo;
  const double hi = ex.r_quad_max;
  // smallest c2 on a c1 grid; lexicographic (c2, c1)
  double best_c1 = 0.0, best_c2 = std::numeric_limits<double>::infinity();
  for (int ic = 0; ic <= 40; ++ic) {
    const double c1 = 0.05 * ic;
    double c2 = 0.0;
    for (int i = 0; i <= grid; ++i) {
      const double r = lo + (hi - lo) * i / grid;
      const double fv = ex.f(r);
      const double quarter = 0.25 * r * r;
      c2 = std::max(c2, quarter - c1 * r - fv);  // lower bound violation
      c2 = std::max(c2, fv - quarter - c1 * r);  // upper bound violation
    }
    if (c2 < best_c2 - 1e-12) {
      best_c2 = c2;
      best_c1 = c1;
    }
  }
  rep.c1 = best_c1;
  rep.c2 = best_c2;

  const double v_lo = std::max(lo, 1.0);  // profile proxies are not Euclidean near 0
  double vc = 0.0;
  double V = composite_simpson(ex.area, ex.r_lo, v_lo, 512);
  const int steps = 256;
  for (int i = 1; i <= steps; ++i) {
    const double r_prev = v_lo + (hi - v_lo) * (i - 1.0) / steps;
    const double r = v_lo + (hi - v_lo) * i / steps;
    V += composite_simpson(ex.area, r_prev, r, 16);
    vc = std::max(vc, V / std::pow(r, ex.n));
  }
  rep.volume_c = vc;
  return rep;
}

EntropyResult entropy(const SolitonExample& ex, double quad_tol) {
  EntropyResult out;
  const auto integrand = [&](double r) { return std::exp(-ex.f(r)) * ex.area(r); };
  const double hi = ex.r_quad_max;
  // beyond the cutoff: A(r) <= A(hi)(r/hi)^n and f(r) >= f(hi) + g (r - hi)
  const double g = std::sqrt(std::max(ex.grad_f_sq(hi), 0.0));
  if (!(g > 0.0)) fail(ErrorCode::TailTooFat, "potential has no growth at the cutoff");
  double tail = 0.0;
  double binom = 1.0, factorial = 1.0;
  for (int j = 0; j <= ex.n; ++j) {
    if (j > 0) {
      binom *= static_cast<double>(ex.n - j + 1) / j;
      factorial *= j;
    }
    tail += binom * factorial / (std::pow(g, j + 1) * std::pow(hi, j));
  }
  tail *= ex.area(hi) * std::exp(-ex.f(hi));
  out.tail_bound = tail;
  if (tail > quad_tol) fail(ErrorCode::TailTooFat, "tail bound exceeds quad_tol");
  out.integral = adaptive_simpson(integrand, ex.r_lo, hi, quad_tol);
  out.mu = std::log(out.integral * std::pow(4.0 * kPi, -0.5 * ex.n));
  return out;
}

LimsupValue soliton_alpha(const SolitonExample& ex, double tail_fraction, int rungs) {
  const double exponent = 0.5 * (ex.n - 1.0);
  const auto integrand = [&](double r) {
    return ex.area(r) * std::pow(std::max(ex.S(r), 0.0) * r * r, exponent);
  };
  const double hi = ex.r_quad_max;
  const double tail_lo = hi - tail_fraction * (hi - ex.r_lo);
  std::vector<double> vals;
  for (int i = 0; i < rungs; ++i) {
    const double R = tail_lo + (hi - tail_lo) * (i + 1.0) / rungs;
    const double V = composite_simpson(ex.area, ex.r_lo, R, 4000);
    if (!(V > 0.0)) continue;
    vals.push_back(composite_simpson(integrand, ex.r_lo, R, 4000) / V);
  }
  return limsup_proxy(vals);
}

}  // namespace endslab
