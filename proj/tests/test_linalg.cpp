#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "endslab/errors.hpp"
#include "endslab/linalg.hpp"

using namespace endslab;

namespace {

// random connected graph: a path backbone plus extra chords
WeightedGraph random_graph(std::mt19937_64& rng, int n, std::vector<double>& mu,
                           std::vector<double>& sigma) {
  std::uniform_real_distribution<double> wdist(0.1, 10.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i, wdist(rng));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int e = 0; e < n / 2; ++e) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b), wdist(rng));
  }
  mu.resize(n);
  sigma.resize(n);
  for (int i = 0; i < n; ++i) {
    mu[i] = wdist(rng);
    sigma[i] = unif(rng) < 0.5 ? 0.0 : unif(rng);
  }
  return WeightedGraph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("graph construction and connectivity") {
  auto g = WeightedGraph::from_edges(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}});
  CHECK(g.size() == 4);
  CHECK(g.connected());
  std::vector<char> removed(4, 0);
  removed[1] = 1;
  CHECK(g.component_count(removed) == 2);

  auto g2 = WeightedGraph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_FALSE(g2.connected());
  CHECK_THROWS_AS(WeightedGraph::from_edges(2, {{0, 1, -1.0}}), Error);
}

TEST_CASE("dirichlet solve on a path: harmonic interpolation") {
  // boundary 0 and 1 around three free vertices, sigma = 0: linear profile
  const int n = 5;
  auto g = WeightedGraph::from_edges(
      n, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  std::vector<double> mu(n, 1.0), sigma(n, 0.0);
  std::vector<char> constrained(n, 0);
  std::vector<double> bc(n, 0.0);
  constrained[0] = constrained[4] = 1;
  bc[4] = 1.0;
  auto sys = DirichletSystem::build(g, mu, sigma, constrained, bc);
  auto v = sys.solve_cg(1e-12);
  CHECK(v[1] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(v[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(v[3] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(sys.max_relative_residual(v) < 1e-10);
}

TEST_CASE("dirichlet solve with a potential at the center: dense 3x3 oracle") {
  // path 0-1-2-3-4, sigma = 1 at vertex 2, unit weights and measures.
  // Free unknowns (v1,v2,v3) solve the tridiagonal system
  //   2 v1 - v2           = 0
  //  -v1 + 3 v2 - v3      = 0
  //       -v2 + 2 v3      = 1
  // Cramer: det = 8; v1 = 1/8, v2 = 2/8, v3 = 5/8.
  const int n = 5;
  auto g = WeightedGraph::from_edges(
      n, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  std::vector<double> mu(n, 1.0), sigma(n, 0.0);
  sigma[2] = 1.0;
  std::vector<char> constrained(n, 0);
  std::vector<double> bc(n, 0.0);
  constrained[0] = constrained[4] = 1;
  bc[4] = 1.0;
  auto sys = DirichletSystem::build(g, mu, sigma, constrained, bc);
  auto v = sys.solve_cg(1e-12);
  CHECK(v[1] == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
  CHECK(v[2] == doctest::Approx(2.0 / 8.0).epsilon(1e-10));
  CHECK(v[3] == doctest::Approx(5.0 / 8.0).epsilon(1e-10));
  auto vd = sys.solve_dense();
  for (int i = 0; i < n; ++i) CHECK(v[i] == doctest::Approx(vd[i]).epsilon(1e-10));
}

TEST_CASE("iterative and dense solves agree on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> mu, sigma;
    auto g = random_graph(rng, 30, mu, sigma);
    std::vector<char> constrained(30, 0);
    std::vector<double> bc(30, 0.0);
    constrained[0] = constrained[29] = 1;
    bc[29] = 1.0;
    auto sys = DirichletSystem::build(g, mu, sigma, constrained, bc);
    auto vi = sys.solve_cg(1e-12);
    auto vd = sys.solve_dense();
    double sup = 0.0, scale = 0.0;
    for (int i = 0; i < 30; ++i) {
      sup = std::max(sup, std::abs(vi[i] - vd[i]));
      scale = std::max(scale, std::abs(vd[i]));
    }
    CHECK(sup / scale < 1e-8);
  }
}

TEST_CASE("solve is idempotent when warm-started from the solution") {
  const int n = 20;
  std::mt19937_64 rng(11);
  std::vector<double> mu, sigma;
  auto g = random_graph(rng, n, mu, sigma);
  std::vector<char> constrained(n, 0);
  std::vector<double> bc(n, 0.0);
  constrained[0] = constrained[n - 1] = 1;
  bc[n - 1] = 1.0;
  auto sys = DirichletSystem::build(g, mu, sigma, constrained, bc);
  auto v = sys.solve_cg(1e-11);
  SolveStats stats;
  auto v2 = sys.solve_cg(1e-11, 0, &v, &stats);
  CHECK(stats.iterations <= 1);
  for (int i = 0; i < n; ++i) CHECK(std::abs(v[i] - v2[i]) < 1e-10);
}

TEST_CASE("symmetric eigenvalues: known spectra") {
  // diag(3, 1) rotated by 45 degrees: [[2,1],[1,2]]
  auto eig = symmetric_eigenvalues({2.0, 1.0, 1.0, 2.0}, 2);
  CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-12));

  // rank-1 Gram matrix
  auto eig2 = symmetric_eigenvalues({1.0, 2.0, 2.0, 4.0}, 2);
  CHECK(eig2[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(eig2[1]) < 1e-12);

  // 3x3 with trace/eigenvalue checks against the characteristic roots
  std::vector<double> a = {4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0};
  auto eig3 = symmetric_eigenvalues(a, 3);
  CHECK(eig3[0] + eig3[1] + eig3[2] == doctest::Approx(9.0).epsilon(1e-12));
  // det(A) = 4*(6-1) - 1*(2-0) = 18
  CHECK(eig3[0] * eig3[1] * eig3[2] == doctest::Approx(18.0).epsilon(1e-10));
}

TEST_CASE("least squares line fit recovers exact lines") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(0.5 * i);
    y.push_back(3.25 * (0.5 * i) - 1.75);
  }
  auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(-1.75).epsilon(1e-12));
}
