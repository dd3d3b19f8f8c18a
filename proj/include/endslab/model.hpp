#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endslab/linalg.hpp"
#include "endslab/series.hpp"

namespace endslab {

enum class SigmaKind { Zero, QuadraticDecay, Bump };

/// Potential law evaluated on the radius coordinate.
struct SigmaLaw {
  SigmaKind kind = SigmaKind::Zero;
  double upsilon = 0.0;                             // QuadraticDecay: sigma = upsilon / rho^2
  double bump_c = 0.0, bump_lo = 0.0, bump_hi = 0.0;  // Bump: sigma = c on [lo, hi]

  double eval(double rho) const;
  static SigmaLaw zero() { return {}; }
  static SigmaLaw quadratic_decay(double upsilon);
  static SigmaLaw bump(double c, double r_lo, double r_hi);
};

struct EndSpec {
  double profile_coefficient = 1.0;  // area scale omega_i > 0
  double profile_exponent = 0.0;     // p_i >= 0, A_i(r) = omega_i r^{p_i}
  int cross_section_size = 1;        // N_i vertices per layer; 1 = radial chain
  std::optional<SigmaLaw> sigma_override;

  double area(double r) const;
};

/// Declarative description of core + ends used to build a DiscreteManifold.
struct ModelSpec {
  int n_dim = 2;  // dimension proxy; m = n_dim - 1
  std::vector<EndSpec> ends;
  int core_size = 1;
  double r_core = 1.0;
  double R0 = 2.0;      // inner cutoff radius
  double r_max = 16.0;  // truncation radius, > 4 R0
  double h = 1.0;       // layer spacing
  SigmaLaw sigma;

  double m() const { return static_cast<double>(n_dim) - 1.0; }
  double max_profile_exponent() const;
  int layers_per_end() const;  // count of radii r_core + j h <= r_max

  void validate() const;  // throws Error(InvalidSpec) on violation

  static ModelSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Weighted graph with vertex measures, exhaustion function rho, potential
/// sigma, and end labels. Immutable after build; all readers are thread-safe.
struct DiscreteManifold {
  ModelSpec spec;
  WeightedGraph graph;
  std::vector<double> mu;     // vertex measure > 0
  std::vector<double> rho;    // exhaustion function
  std::vector<double> sigma;  // potential >= 0
  std::vector<int> end_of;    // -1 core, else end index
  std::vector<int> layer_of;  // -1 core, else layer index j

  std::vector<double> layer_radii;                    // r_j = r_core + j h
  std::vector<std::vector<std::vector<int>>> layers;  // [end][layer] -> vertex ids
  std::vector<std::vector<int>> at_radius;            // [layer] -> all vertices with rho == r_j

  int size() const { return static_cast<int>(mu.size()); }
  int end_count() const { return static_cast<int>(layers.size()); }
  double h() const { return spec.h; }
  int layer_count() const { return static_cast<int>(layer_radii.size()); }
  double top_radius() const { return layer_radii.back(); }

  // index of the exact grid radius r, or -1
  int radius_index(double r) const;
  // largest grid radius <= r; throws DomainTooSmall below the first layer
  double snap_down(double r) const;

  const std::vector<int>& level_set_at(int layer_index) const { return at_radius[layer_index]; }

  double total_measure() const;
  // V(r) = sum of mu over rho < r
  double sublevel_measure(double r) const;
  // A(r) = (sum of mu over Sigma(r)) / h
  double level_area(int layer_index) const;

  // (Lu)(x) = (1/mu_x) sum_y w_xy (u_y - u_x)
  double laplacian_at(int x, const std::vector<double>& u) const;

  // discrete |grad u|(x) = max over edges at x of |u_x - u_y| / h
  double gradient_at(int x, const std::vector<double>& u) const;
};

DiscreteManifold build_manifold(const ModelSpec& spec);

/// V(r_j) and A(r_j) sampled on the layer grid. The V series carries one
/// extra final sample at r_max + h where the open sublevel set has absorbed
/// the outermost layer, so its last value equals the total measure.
std::pair<ProfileSeries, ProfileSeries> volume_area_profiles(const DiscreteManifold& man);

struct RhoReport {
  double m_measured = 0.0;  // max over rho >= R0 of rho * (L rho)
  double grad_lo = 0.0;     // min over radius-changing edges of |drho|/h
  double grad_hi = 0.0;     // max over all edges of |drho|/h
  double m_expected = 0.0;  // max_i p_i
  bool violation = false;
};

RhoReport verify_rho_conditions(const DiscreteManifold& man);

struct AreaVolumeReport {
  double m = 0.0;
  double c_bound = 0.0;      // 4m + 1
  double gamma_bound = 0.0;  // 4m + 1
  // tightest constants observed on the sampled radii
  double tightest_c = 0.0;         // max A(r) r / V(r)
  double tightest_doubling = 0.0;  // max log(V((1+t)r)/V(r)) / log(1+t)
  double tightest_gamma = 0.0;     // max log(V(r)/V(R0)) / log r
  bool area_pass = false;
  bool doubling_pass = false;
  bool growth_pass = false;
  bool pass() const { return area_pass && doubling_pass && growth_pass; }
};

AreaVolumeReport check_area_volume_growth(const DiscreteManifold& man, double m);

/// Components of the graph after deleting the core vertices (= end count).
int component_count_without_core(const DiscreteManifold& man);

}  // namespace endslab
