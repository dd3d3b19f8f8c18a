#include "endslab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "endslab/errors.hpp"

namespace endslab {

namespace {
constexpr double kRadiusTol = 1e-9;
}

double SigmaLaw::eval(double r) const {
  switch (kind) {
    case SigmaKind::Zero:
      return 0.0;
    case SigmaKind::QuadraticDecay:
      return upsilon / (r * r);
    case SigmaKind::Bump:
      return (r >= bump_lo - kRadiusTol && r <= bump_hi + kRadiusTol) ? bump_c : 0.0;
  }
  return 0.0;
}

SigmaLaw SigmaLaw::quadratic_decay(double upsilon) {
  SigmaLaw s;
  s.kind = SigmaKind::QuadraticDecay;
  s.upsilon = upsilon;
  return s;
}

SigmaLaw SigmaLaw::bump(double c, double r_lo, double r_hi) {
  SigmaLaw s;
  s.kind = SigmaKind::Bump;
  s.bump_c = c;
  s.bump_lo = r_lo;
  s.bump_hi = r_hi;
  return s;
}

double EndSpec::area(double r) const {
  return profile_coefficient * std::pow(r, profile_exponent);
}

double ModelSpec::max_profile_exponent() const {
  double p = 0.0;
  for (const auto& e : ends) p = std::max(p, e.profile_exponent);
  return p;
}

int ModelSpec::layers_per_end() const {
  return static_cast<int>(std::floor((r_max - r_core) / h + kRadiusTol)) + 1;
}

void ModelSpec::validate() const {
  if (n_dim < 2) fail(ErrorCode::InvalidSpec, "n_dim must be >= 2");
  if (ends.empty()) fail(ErrorCode::InvalidSpec, "at least one end is required");
  if (core_size < 1) fail(ErrorCode::InvalidSpec, "core_size must be >= 1");
  if (!(h > 0.0)) fail(ErrorCode::InvalidSpec, "layer spacing h must be positive");
  if (!(R0 > 0.0)) fail(ErrorCode::InvalidSpec, "R0 must be positive");
  if (!(r_core > 0.0)) fail(ErrorCode::InvalidSpec, "r_core must be positive");
  if (!(R0 > r_core)) fail(ErrorCode::InvalidSpec, "R0 must exceed r_core");
  if (!(r_max > 4.0 * R0)) fail(ErrorCode::InvalidSpec, "r_max must exceed 4*R0");
  const double ratio = r_max / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-6)
    fail(ErrorCode::InvalidSpec, "r_max / h must be an integer");
  if (ratio < 8.0 - 1e-9) fail(ErrorCode::InvalidSpec, "r_max / h must be >= 8");
  for (const auto& e : ends) {
    if (!(e.profile_coefficient > 0.0))
      fail(ErrorCode::InvalidSpec, "profile_coefficient must be positive");
    if (e.profile_exponent < 0.0) fail(ErrorCode::InvalidSpec, "profile_exponent must be >= 0");
    if (e.cross_section_size < 1) fail(ErrorCode::InvalidSpec, "cross_section_size must be >= 1");
  }
}

namespace {

SigmaLaw sigma_law_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") return SigmaLaw::zero();
  if (type == "quadratic_decay") return SigmaLaw::quadratic_decay(j.at("Upsilon").get<double>());
  if (type == "bump")
    return SigmaLaw::bump(j.at("c").get<double>(), j.at("r_lo").get<double>(),
                          j.at("r_hi").get<double>());
  fail(ErrorCode::ConfigError, "unknown sigma law '" + type + "'");
}

nlohmann::json sigma_law_to_json(const SigmaLaw& s) {
  nlohmann::json j;
  switch (s.kind) {
    case SigmaKind::Zero:
      j["type"] = "zero";
      break;
    case SigmaKind::QuadraticDecay:
      j["type"] = "quadratic_decay";
      j["Upsilon"] = s.upsilon;
      break;
    case SigmaKind::Bump:
      j["type"] = "bump";
      j["c"] = s.bump_c;
      j["r_lo"] = s.bump_lo;
      j["r_hi"] = s.bump_hi;
      break;
  }
  return j;
}

}  // namespace

ModelSpec ModelSpec::from_json(const nlohmann::json& j) {
  ModelSpec spec;
  try {
    spec.n_dim = j.at("n_dim").get<int>();
    spec.core_size = j.value("core_size", 1);
    spec.r_core = j.value("r_core", 1.0);
    spec.R0 = j.at("R0").get<double>();
    spec.r_max = j.at("r_max").get<double>();
    spec.h = j.at("h").get<double>();
    if (j.contains("sigma_law")) spec.sigma = sigma_law_from_json(j.at("sigma_law"));
    for (const auto& je : j.at("ends")) {
      EndSpec e;
      e.profile_coefficient = je.value("profile_coefficient", 1.0);
      e.profile_exponent = je.value("profile_exponent", double(spec.n_dim) - 1.0);
      e.cross_section_size = je.value("cross_section_size", 1);
      if (je.contains("sigma_law")) e.sigma_override = sigma_law_from_json(je.at("sigma_law"));
      spec.ends.push_back(e);
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::ConfigError, std::string("model spec: ") + ex.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json ModelSpec::to_json() const {
  nlohmann::json j;
  j["n_dim"] = n_dim;
  j["core_size"] = core_size;
  j["r_core"] = r_core;
  j["R0"] = R0;
  j["r_max"] = r_max;
  j["h"] = h;
  j["sigma_law"] = sigma_law_to_json(sigma);
  j["ends"] = nlohmann::json::array();
  for (const auto& e : ends) {
    nlohmann::json je;
    je["profile_coefficient"] = e.profile_coefficient;
    je["profile_exponent"] = e.profile_exponent;
    je["cross_section_size"] = e.cross_section_size;
    if (e.sigma_override) je["sigma_law"] = sigma_law_to_json(*e.sigma_override);
    j["ends"].push_back(je);
  }
  return j;
}

int DiscreteManifold::radius_index(double r) const {
  const double j = (r - spec.r_core) / spec.h;
  const int ji = static_cast<int>(std::lround(j));
  if (ji < 0 || ji >= layer_count()) return -1;
  if (std::abs(layer_radii[ji] - r) > kRadiusTol * std::max(1.0, spec.h)) return -1;
  return ji;
}

double DiscreteManifold::snap_down(double r) const {
  if (r < layer_radii.front() - kRadiusTol)
    fail(ErrorCode::DomainTooSmall, "radius below the first layer");
  const double j = std::floor((r - spec.r_core) / spec.h + kRadiusTol);
  const int ji = std::min(static_cast<int>(j), layer_count() - 1);
  return layer_radii[ji];
}

double DiscreteManifold::total_measure() const {
  double acc = 0.0;
  for (const double v : mu) acc += v;
  return acc;
}

double DiscreteManifold::sublevel_measure(double r) const {
  double acc = 0.0;
  for (int x = 0; x < size(); ++x)
    if (rho[x] < r - kRadiusTol) acc += mu[x];
  return acc;
}

double DiscreteManifold::level_area(int layer_index) const {
  double acc = 0.0;
  for (const int x : at_radius[layer_index]) acc += mu[x];
  return acc / spec.h;
}

double DiscreteManifold::laplacian_at(int x, const std::vector<double>& u) const {
  double acc = 0.0;
  for (int k = graph.offset[x]; k < graph.offset[x + 1]; ++k)
    acc += graph.w[k] * (u[graph.nbr[k]] - u[x]);
  return acc / mu[x];
}

double DiscreteManifold::gradient_at(int x, const std::vector<double>& u) const {
  double g = 0.0;
  for (int k = graph.offset[x]; k < graph.offset[x + 1]; ++k)
    g = std::max(g, std::abs(u[x] - u[graph.nbr[k]]));
  return g / spec.h;
}

DiscreteManifold build_manifold(const ModelSpec& spec) {
  spec.validate();
  DiscreteManifold man;
  man.spec = spec;

  const int k = static_cast<int>(spec.ends.size());
  const int layers = spec.layers_per_end();
  man.layer_radii.resize(layers);
  for (int j = 0; j < layers; ++j) man.layer_radii[j] = spec.r_core + j * spec.h;

  // core first, then each end layer by layer
  for (int c = 0; c < spec.core_size; ++c) {
    man.mu.push_back(1.0);
    man.rho.push_back(spec.r_core);
    man.end_of.push_back(-1);
    man.layer_of.push_back(-1);
  }
  man.layers.assign(k, {});
  for (int i = 0; i < k; ++i) {
    const EndSpec& e = spec.ends[i];
    man.layers[i].resize(layers);
    for (int j = 0; j < layers; ++j) {
      const double r = man.layer_radii[j];
      for (int c = 0; c < e.cross_section_size; ++c) {
        man.layers[i][j].push_back(static_cast<int>(man.mu.size()));
        man.mu.push_back(e.area(r) * spec.h / e.cross_section_size);
        man.rho.push_back(r);
        man.end_of.push_back(i);
        man.layer_of.push_back(j);
      }
    }
  }

  // potential: global law with optional per-end overrides
  man.sigma.resize(man.mu.size());
  double sigma_total = 0.0;
  for (int x = 0; x < man.size(); ++x) {
    const SigmaLaw& law = (man.end_of[x] >= 0 && spec.ends[man.end_of[x]].sigma_override)
                              ? *spec.ends[man.end_of[x]].sigma_override
                              : spec.sigma;
    man.sigma[x] = law.eval(man.rho[x]);
    if (man.sigma[x] < 0.0) fail(ErrorCode::InvalidSpec, "sigma must be nonnegative");
    sigma_total += man.sigma[x];
  }
  if (sigma_total == 0.0)
    fail(ErrorCode::SigmaIdenticallyZero, "the potential vanishes identically on this model");

  std::vector<std::tuple<int, int, double>> edges;
  // complete graph on the core, unit weights
  for (int a = 0; a < spec.core_size; ++a)
    for (int b = a + 1; b < spec.core_size; ++b) edges.emplace_back(a, b, 1.0);
  for (int i = 0; i < k; ++i) {
    const EndSpec& e = spec.ends[i];
    const int n_i = e.cross_section_size;
    // core attachment: total flux A_i(r_core)/h split over all pairs
    const double w_attach = e.area(spec.r_core) / (spec.h * spec.core_size * n_i);
    for (int a = 0; a < spec.core_size; ++a)
      for (const int v : man.layers[i][0]) edges.emplace_back(a, v, w_attach);
    for (int j = 0; j < layers; ++j) {
      // radial bonds to the next layer, weight A_i(midpoint)/(h N_i) each
      if (j + 1 < layers) {
        const double w_radial = e.area(man.layer_radii[j] + 0.5 * spec.h) / (spec.h * n_i);
        for (int c = 0; c < n_i; ++c)
          edges.emplace_back(man.layers[i][j][c], man.layers[i][j + 1][c], w_radial);
      }
      // ring bonds within the cross-section
      if (n_i >= 2) {
        const double w_ring = e.area(man.layer_radii[j]) / (spec.h * n_i);
        const int ring_edges = (n_i == 2) ? 1 : n_i;
        for (int c = 0; c < ring_edges; ++c)
          edges.emplace_back(man.layers[i][j][c], man.layers[i][j][(c + 1) % n_i], w_ring);
      }
    }
  }
  man.graph = WeightedGraph::from_edges(man.size(), edges);
  if (!man.graph.connected()) fail(ErrorCode::InvalidSpec, "built graph is not connected");

  man.at_radius.assign(layers, {});
  for (int x = 0; x < man.size(); ++x) {
    const int j = man.radius_index(man.rho[x]);
    if (j >= 0) man.at_radius[j].push_back(x);
  }
  return man;
}

std::pair<ProfileSeries, ProfileSeries> volume_area_profiles(const DiscreteManifold& man) {
  ProfileSeries V, A;
  V.name = "V";
  A.name = "A";
  const int layers = man.layer_count();
  for (int j = 0; j < layers; ++j) {
    const double r = man.layer_radii[j];
    A.radii.push_back(r);
    A.values.push_back(man.level_area(j));
    V.radii.push_back(r);
    V.values.push_back(man.sublevel_measure(r));
  }
  // one step past the last layer the open sublevel set holds everything
  V.radii.push_back(man.top_radius() + man.h());
  V.values.push_back(man.total_measure());
  return {std::move(V), std::move(A)};
}

RhoReport verify_rho_conditions(const DiscreteManifold& man) {
  RhoReport rep;
  rep.m_expected = man.spec.max_profile_exponent();
  double grad_lo = std::numeric_limits<double>::infinity();
  double grad_hi = 0.0;
  const auto& g = man.graph;
  for (int x = 0; x < man.size(); ++x) {
    for (int k = g.offset[x]; k < g.offset[x + 1]; ++k) {
      const int y = g.nbr[k];
      if (y < x) continue;
      const double d = std::abs(man.rho[x] - man.rho[y]) / man.h();
      grad_hi = std::max(grad_hi, d);
      if (d > kRadiusTol) grad_lo = std::min(grad_lo, d);
    }
  }
  rep.grad_lo = std::isfinite(grad_lo) ? grad_lo : 0.0;
  rep.grad_hi = grad_hi;

  double m_measured = -std::numeric_limits<double>::infinity();
  for (int x = 0; x < man.size(); ++x) {
    if (man.rho[x] < man.spec.R0) continue;
    m_measured = std::max(m_measured, man.rho[x] * man.laplacian_at(x, man.rho));
  }
  rep.m_measured = std::isfinite(m_measured) ? m_measured : 0.0;
  const double tol = 0.05 + man.h();
  rep.violation = rep.m_measured > rep.m_expected + tol || rep.grad_hi > 1.0 + kRadiusTol;
  return rep;
}

AreaVolumeReport check_area_volume_growth(const DiscreteManifold& man, double m) {
  if (!(m > 0.0)) fail(ErrorCode::InvalidSpec, "growth check requires m > 0");
  AreaVolumeReport rep;
  rep.m = m;
  rep.c_bound = 4.0 * m + 1.0;
  rep.gamma_bound = 4.0 * m + 1.0;
  const auto [V, A] = volume_area_profiles(man);
  const double R0 = man.spec.R0;
  const double V_R0 = man.sublevel_measure(R0);
  const double thetas[] = {0.25, 0.5, 1.0};
  rep.area_pass = rep.doubling_pass = rep.growth_pass = true;
  for (std::size_t j = 0; j < A.size(); ++j) {
    const double r = A.radii[j];
    if (r < R0 - kRadiusTol) continue;
    const double v = V.values[j];
    const double a = A.values[j];
    if (v <= 0.0) continue;
    rep.tightest_c = std::max(rep.tightest_c, a * r / v);
    if (a * r > rep.c_bound * v * (1.0 + 1e-9)) rep.area_pass = false;
    for (const double t : thetas) {
      const double target = (1.0 + t) * r;
      if (target > V.radii.back() + kRadiusTol) continue;
      const double v2 = V.step_at(target);
      if (v2 <= 0.0) continue;
      rep.tightest_doubling =
          std::max(rep.tightest_doubling, std::log(v2 / v) / std::log(1.0 + t));
      if (v2 > std::pow(1.0 + t, rep.c_bound) * v * (1.0 + 1e-9)) rep.doubling_pass = false;
    }
    if (r > 1.0 + 1e-6 && V_R0 > 0.0) {
      rep.tightest_gamma = std::max(rep.tightest_gamma, std::log(v / V_R0) / std::log(r));
      if (v > std::pow(r, rep.gamma_bound) * V_R0 * (1.0 + 1e-9)) rep.growth_pass = false;
    }
  }
  return rep;
}

int component_count_without_core(const DiscreteManifold& man) {
  std::vector<char> removed(man.size(), 0);
  for (int x = 0; x < man.size(); ++x)
    if (man.end_of[x] < 0) removed[x] = 1;
  return man.graph.component_count(removed);
}

}  // namespace endslab
