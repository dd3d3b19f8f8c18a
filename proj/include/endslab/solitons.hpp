#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "endslab/estimates.hpp"

namespace endslab {

/// Closed-form gradient shrinking soliton data on a radial profile:
/// potential f, scalar curvature S, |grad f|^2 and the area profile A(r),
/// all as functions of the radius coordinate on [r_lo, r_quad_max].
struct SolitonExample {
  std::string name;
  std::string description;
  int n = 0;  // dimension
  std::function<double(double)> f;
  std::function<double(double)> S;
  std::function<double(double)> grad_f_sq;
  std::function<double(double)> area;
  double r_lo = 0.0;
  double r_quad_max = 40.0;
  double check_lo = 0.0;  // grid start for the bounds checks (>= r_lo)
};

const std::vector<SolitonExample>& soliton_catalog();
const SolitonExample* find_soliton(std::string_view name);

/// max over a radius grid of | |grad f|^2 + S - f |
double soliton_identity_residual(const SolitonExample& ex, int grid_points = 2000);

/// Copy with f replaced by f + delta (negative control for the identity).
SolitonExample with_f_shifted(const SolitonExample& ex, double delta);

struct FBoundsReport {
  double c1 = 0.0, c2 = 0.0;  // smallest grid constants with
                              // r^2/4 - c1 r - c2 <= f <= r^2/4 + c1 r + c2
  double volume_c = 0.0;      // smallest c with V(r) <= c r^n on the check grid
};

FBoundsReport f_bounds_check(const SolitonExample& ex);

struct EntropyResult {
  double mu = 0.0;        // ln( (4 pi)^{-n/2} * integral of e^{-f} )
  double integral = 0.0;  // int_{r_lo}^{r_quad_max} e^{-f} A(r) dr
  double tail_bound = 0.0;
};

/// Adaptive radial quadrature of e^{-f} A(r); throws TailTooFat when the
/// analytic tail bound beyond r_quad_max exceeds quad_tol.
EntropyResult entropy(const SolitonExample& ex, double quad_tol = 1e-9);

/// Tail proxy of (1/V(R)) int_{B(R)} (S r^2)^{(n-1)/2}, by radial quadrature.
LimsupValue soliton_alpha(const SolitonExample& ex, double tail_fraction = 0.3, int rungs = 8);

}  // namespace endslab
