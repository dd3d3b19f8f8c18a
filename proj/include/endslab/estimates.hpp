#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "endslab/model.hpp"
#include "endslab/schrodinger.hpp"
#include "endslab/series.hpp"

namespace endslab {

/// Tail-max proxy for a limsup at infinity. `diverged` is set when the tail
/// values grow monotonically by more than 10% per rung.
struct LimsupValue {
  double value = 0.0;
  bool diverged = false;
};

LimsupValue limsup_proxy(const std::vector<double>& tail_values);

/// alpha(q) = max over tail radii R of (R^{2q} * mean_{Sigma(R)} sigma^q)^{1/q}
LimsupValue compute_alpha_level(const DiscreteManifold& man, double q, double tail_fraction = 0.3);

/// Same, with the integrand restricted to Sigma(R) ∩ E_i but normalized by
/// the full level-set area A(R).
LimsupValue compute_alpha_end(const DiscreteManifold& man, int end_index, double q,
                              double tail_fraction = 0.3);

struct BallFunctionals {
  LimsupValue alpha_ball;  // tail proxy of (1/V(R)) * sum_{D(R)} (rho^q sigma)^{(n-1)/q} mu
  double v_infinity = 0.0;  // tail max of V(R)/R^n
};

BallFunctionals compute_ball_functionals(const DiscreteManifold& man, int n_dim, double q,
                                         double tail_fraction = 0.3);

/// Radial-profile variant used for closed-form examples: area(r), sigma(r) on
/// [r_lo, r_hi], integrals by composite quadrature with `rungs` tail samples.
BallFunctionals compute_ball_functionals(const std::function<double(double)>& area,
                                         const std::function<double(double)>& sigma_radial,
                                         double r_lo, double r_hi, int n_dim, double q,
                                         double tail_fraction = 0.3, int rungs = 8);

/// a = (sqrt((4m-1)^2 + 16 Upsilon) - (4m-1)) / 2; root of a^2 + (4m-1)a = 4 Upsilon.
double exponent_a(double m, double upsilon);

/// Growth bound exponent for the quadratic-decay route: a + 4m + 1.
double growth_bound_exponent(double m, double upsilon);

struct EpsilonInfo {
  double epsilon = 0.0;  // (2q + 1 - 2 nu) / q
  bool critical = false;   // epsilon == 0, i.e. q == nu - 1/2
  bool in_regime = false;  // 0 <= epsilon < 1/2
};

EpsilonInfo epsilon_of(double q, double nu);

struct DiagnosticsReport {
  ProfileSeries omega;  // cumulative sum of mu u / rho^2 over [r0, r)
  ProfileSeries xi;     // r^a * omega
  double a = 0.0;
  double max_residual = 0.0;  // implied C(r0): max of r^2 w'' - (4m-2) r w' - 4 Y w
  bool residual_diverging = false;
  double xi_structure_max = 0.0;  // max of r^{a+4m} * d/dr( xi' / r^{2a+4m-2} )
  bool xi_structure_diverging = false;
};

DiagnosticsReport omega_diagnostics(const DiscreteManifold& man, const std::vector<double>& u,
                                    double r0, double m, double upsilon);

struct ChiReport {
  ProfileSeries chi;        // cumulative sum of mu u / rho^{4m} over (r0, r)
  ProfileSeries chi_prime;  // co-area form: (1/r^{4m}) sum_{Sigma(r)} (mu/h) u
  double C0 = 0.0;          // smallest constant making the convolution bound hold
  double C0_raw = 0.0;      // unclamped max of the per-radius quotients
  double Lambda0 = 0.0;     // boundary integral of u + |grad u| on Sigma(r0)
  double alpha_bar = 0.0;   // min(alpha(q), 1)
  bool inequality_holds = true;  // relevant when alpha_bar == 0
  bool chi_monotone = false;
  double theta = 0.0, q = 0.0, nu = 0.0;
};

ChiReport chi_diagnostics(const DiscreteManifold& man, const std::vector<double>& u, double r0,
                          double m, double q, double theta, double nu = 1.5,
                          double tail_fraction = 0.3);

struct GrowthReport {
  double fitted_exponent = 0.0;  // log-log slope of max_{Sigma(r)} u over the tail
  double fitted_intercept = 0.0;
  std::optional<double> bound_a;      // a + 4m + 1 (quadratic-decay route)
  std::optional<double> bound_gamma;  // (100 C0)^{2/eps} + 4m + 1 (convolution route)
  double epsilon = 0.0, nu = 0.0, q = 0.0;
  double m = 0.0, upsilon = 0.0;
  double fit_tol = 0.25;
  bool pass = false;  // fitted <= min(applicable bounds) + fit_tol
};

/// Least-squares growth fit plus the applicable growth bounds. `upsilon` is
/// the measured quadratic-decay constant; `chi_C0` the measured convolution
/// constant (per-route bounds are reported only when their inputs are given).
GrowthReport growth_fit(const DiscreteManifold& man, const std::vector<double>& u,
                        double tail_fraction, double m, double q, double nu,
                        double fit_tol = 0.25, std::optional<double> upsilon = std::nullopt,
                        std::optional<double> chi_C0 = std::nullopt);

/// Measured quadratic-decay constant: max over rho >= r_lo of sigma rho^2.
double measured_upsilon(const DiscreteManifold& man, double r_lo);

struct MeanValueReport {
  double R = 0.0, nu = 0.0;
  double A0 = 0.0;  // smallest constant making the mean value bound hold over all thetas
  double theta_exponent = 0.0;  // fitted slope of ln Q vs ln(1/theta)
  std::vector<double> thetas;
  std::vector<double> Q;             // sup_{Sigma(R)} u * V((1+t)R) / integral
  std::vector<double> A0_per_theta;  // Q * theta^{2 nu}
  bool localized = false;
  int end_index = -1;
};

/// Verify the annulus mean value bound
///   sup_{Sigma(R)} u <= (A0 / theta^{2 nu}) (1/V((1+theta)R)) int_{D((1+theta)R)\D(R0)} u
/// for a positive subsolution u on D(2R)\D(R0). Throws NotSubsolution when the
/// vertexwise check L u >= sigma u fails beyond tolerance.
MeanValueReport moser_verify(const DiscreteManifold& man, const std::vector<double>& u, double R,
                             double nu, const std::vector<double>& thetas = {1.0, 0.5, 0.25, 0.125},
                             double subsol_tol = 1e-6);

/// End-localized variant: numerator over E((1+theta)R)\E(R/4), normalization
/// by the full V(2R).
MeanValueReport moser_verify_end(const DiscreteManifold& man, const std::vector<double>& u,
                                 int end_index, double R, double nu,
                                 const std::vector<double>& thetas = {1.0, 0.5, 0.25, 0.125},
                                 double subsol_tol = 1e-6);

/// Lower bound for the best constant A in
///   (mean_{D(R)} phi^{2 mu})^{1/mu} <= A R^2 mean_{D(R)} (|grad phi|^2 + sigma phi^2)
/// over the given trial functions (projected to vanish on and beyond Sigma(R)).
double sobolev_measure(const DiscreteManifold& man, double R, double mu_exponent,
                       const std::vector<std::vector<double>>& trials);

/// Radial bumps at three scales plus random nonnegative functions smoothed by
/// five Jacobi iterations.
std::vector<std::vector<double>> default_trial_functions(const DiscreteManifold& man, double R,
                                                         std::uint64_t seed, int n_random = 5);

/// phi <- (phi + weighted neighbor average)/2, re-projected to vanish for rho >= R.
void jacobi_smooth(const DiscreteManifold& man, std::vector<double>& phi, int iterations,
                   double R);

struct DimensionBound {
  double gamma_bar = 0.0;  // 2^{gamma(m) + 2d + 1}, gamma(m) = 4m + 1
  double dim_bound = 0.0;  // C * gamma_bar with C = measured mean value constant, else A0
};

DimensionBound dimension_bound(double m, double d, double A0, double mu_exponent,
                               std::optional<double> measured_mean_value = std::nullopt);

struct AlphaReport {
  std::vector<double> q;
  std::vector<LimsupValue> alpha_level;               // per q
  std::vector<std::vector<LimsupValue>> alpha_end;    // [q][end]
  LimsupValue alpha_ball;
  double v_infinity = 0.0;
  double tail_lo = 0.0, tail_hi = 0.0;
  bool holder_monotone = false;  // alpha_level nondecreasing in q
};

/// Level/end/ball alpha functionals with the Holder monotonicity flag;
/// usable with or without constructed end functions.
AlphaReport compute_alpha_report(const DiscreteManifold& man, const std::vector<double>& alpha_q,
                                 double ball_q, double tail_fraction);

struct EndCountParams {
  double r0_norm = 0.0;  // <= 0: default R0
  double r0_diag = 0.0;  // <= 0: default 4 R0
  double tol_limit = 1e-6;
  double tol_lin = 1e-10;
  double rank_tol = 1e-8;
  double fit_tol = 0.25;
  double nu = 1.5;
  std::vector<double> alpha_q = {1.0, 2.0, 3.0};
  double growth_q = 1.2;
  double chi_theta = 1.0;
  std::vector<double> moser_thetas = {1.0, 0.5, 0.25, 0.125};
  double tail_fraction = 0.3;
  int jobs = 1;
  bool do_growth = true;
  bool do_moser = true;
  bool do_alpha = true;
  bool do_dimension = true;
};

struct EndCountReport {
  int k = 0;
  int rank = 0;
  std::vector<EndFunction> end_functions;
  SeparationReport separation;
  std::vector<GrowthReport> growth;
  std::vector<DiagnosticsReport> omega;
  std::vector<ChiReport> chi;
  std::vector<MeanValueReport> moser_lo, moser_hi;  // per end, two R rungs
  std::vector<double> harnack_lo, harnack_hi;       // per end, two exhaustion rungs
  AlphaReport alpha;
  DimensionBound dimension;
  double d_used = 0.0;
  double A0_used = 0.0;
  double upsilon_measured = 0.0;
  std::vector<double> gram_eigs;
  bool rank_matches = false;
  bool dim_bound_holds = false;
  bool all_converged = false;
  bool growth_ran = false;
  bool moser_ran = false;
  std::string growth_skip_reason;
  std::string moser_skip_reason;
};

/// Full orchestration: end functions for every end, separation, Gram rank,
/// growth fits, mean value constants, alpha functionals, dimension bound.
EndCountReport end_count_pipeline(const DiscreteManifold& man, const EndCountParams& params);

}  // namespace endslab
