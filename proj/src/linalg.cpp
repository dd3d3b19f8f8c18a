#include "endslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "endslab/errors.hpp"

namespace endslab {

WeightedGraph WeightedGraph::from_edges(int n,
                                        const std::vector<std::tuple<int, int, double>>& edges) {
  WeightedGraph g;
  g.offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b, wt] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      fail(ErrorCode::InvalidSpec, "bad edge endpoints");
    if (!(wt > 0.0)) fail(ErrorCode::InvalidSpec, "edge weight must be positive");
    ++g.offset[static_cast<std::size_t>(a) + 1];
    ++g.offset[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t i = 1; i < g.offset.size(); ++i) g.offset[i] += g.offset[i - 1];
  g.nbr.resize(g.offset.back());
  g.w.resize(g.offset.back());
  std::vector<int> cursor(g.offset.begin(), g.offset.end() - 1);
  for (const auto& [a, b, wt] : edges) {
    g.nbr[cursor[a]] = b;
    g.w[cursor[a]++] = wt;
    g.nbr[cursor[b]] = a;
    g.w[cursor[b]++] = wt;
  }
  return g;
}

bool WeightedGraph::connected() const {
  const int n = size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int k = offset[x]; k < offset[x + 1]; ++k) {
      const int y = nbr[k];
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

int WeightedGraph::component_count(const std::vector<char>& removed) const {
  const int n = size();
  std::vector<char> seen(n, 0);
  int components = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || removed[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int k = offset[x]; k < offset[x + 1]; ++k) {
        const int y = nbr[k];
        if (!seen[y] && !removed[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return components;
}

DirichletSystem DirichletSystem::build(const WeightedGraph& g, const std::vector<double>& mu,
                                       const std::vector<double>& sigma,
                                       const std::vector<char>& constrained,
                                       const std::vector<double>& bc) {
  DirichletSystem s;
  s.graph = &g;
  s.mu = &mu;
  s.sigma = &sigma;
  s.constrained = constrained;
  s.bc = bc;
  const int n = g.size();
  s.interior_index.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!constrained[x]) {
      s.interior_index[x] = static_cast<int>(s.interior.size());
      s.interior.push_back(x);
    }
  }
  if (s.interior.empty()) fail(ErrorCode::DomainTooSmall, "no free vertices");
  return s;
}

namespace {

// y = M x on the reduced system: M[a][a] = sum_y w + mu sigma, M[a][b] = -w
void apply_reduced(const DirichletSystem& s, const std::vector<double>& x,
                   std::vector<double>& y) {
  const auto& g = *s.graph;
  const int m = static_cast<int>(s.interior.size());
  for (int i = 0; i < m; ++i) {
    const int vx = s.interior[i];
    double acc = (*s.mu)[vx] * (*s.sigma)[vx] * x[i];
    for (int k = g.offset[vx]; k < g.offset[vx + 1]; ++k) {
      const int vy = g.nbr[k];
      const double wt = g.w[k];
      acc += wt * x[i];
      const int j = s.interior_index[vy];
      if (j >= 0) acc -= wt * x[j];
    }
    y[i] = acc;
  }
}

std::vector<double> reduced_rhs(const DirichletSystem& s) {
  const auto& g = *s.graph;
  const int m = static_cast<int>(s.interior.size());
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int vx = s.interior[i];
    for (int k = g.offset[vx]; k < g.offset[vx + 1]; ++k) {
      const int vy = g.nbr[k];
      if (s.constrained[vy]) b[i] += g.w[k] * s.bc[vy];
    }
  }
  return b;
}

std::vector<double> reduced_diagonal(const DirichletSystem& s) {
  const auto& g = *s.graph;
  const int m = static_cast<int>(s.interior.size());
  std::vector<double> d(m);
  for (int i = 0; i < m; ++i) {
    const int vx = s.interior[i];
    double acc = (*s.mu)[vx] * (*s.sigma)[vx];
    for (int k = g.offset[vx]; k < g.offset[vx + 1]; ++k) acc += g.w[k];
    d[i] = acc;
  }
  return d;
}

std::vector<double> expand_full(const DirichletSystem& s, const std::vector<double>& xr) {
  std::vector<double> full(s.bc);
  for (std::size_t i = 0; i < s.interior.size(); ++i) full[s.interior[i]] = xr[i];
  for (int x = 0; x < s.graph->size(); ++x)
    if (!s.constrained[x] && s.interior_index[x] < 0) full[x] = 0.0;
  return full;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

std::vector<double> DirichletSystem::solve_cg(double rel_tol, int max_iter,
                                              const std::vector<double>* initial,
                                              SolveStats* stats) const {
  const int m = static_cast<int>(interior.size());
  if (max_iter <= 0) max_iter = 20 * m + 1000;
  std::vector<double> x(m, 0.0);
  if (initial) {
    for (int i = 0; i < m; ++i) x[i] = (*initial)[interior[i]];
  }
  std::vector<double> r = reduced_rhs(*this);
  const double norm_b = std::sqrt(dot(r, r));
  std::vector<double> tmp(m);
  apply_reduced(*this, x, tmp);
  for (int i = 0; i < m; ++i) r[i] -= tmp[i];

  const std::vector<double> diag = reduced_diagonal(*this);
  std::vector<double> z(m), p(m);
  for (int i = 0; i < m; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rho = dot(r, z);
  const double target = rel_tol * (norm_b > 0.0 ? norm_b : 1.0);
  double res = std::sqrt(dot(r, r));
  int it = 0;
  while (res > target && it < max_iter) {
    apply_reduced(*this, p, tmp);
    const double pAp = dot(p, tmp);
    if (!(pAp > 0.0)) fail(ErrorCode::SingularSystem, "conjugate gradient broke down");
    const double alpha = rho / pAp;
    for (int i = 0; i < m; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * tmp[i];
    }
    for (int i = 0; i < m; ++i) z[i] = r[i] / diag[i];
    const double rho_next = dot(r, z);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (int i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
    res = std::sqrt(dot(r, r));
    ++it;
  }
  if (res > target)
    fail(ErrorCode::SingularSystem, "conjugate gradient stagnated at residual " +
                                        std::to_string(res / (norm_b > 0 ? norm_b : 1.0)));
  if (stats) {
    stats->iterations = it;
    stats->relative_residual = norm_b > 0.0 ? res / norm_b : res;
  }
  return expand_full(*this, x);
}

std::vector<double> DirichletSystem::solve_dense() const {
  const auto& g = *graph;
  const int m = static_cast<int>(interior.size());
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int vx = interior[i];
    double d = (*mu)[vx] * (*sigma)[vx];
    for (int k = g.offset[vx]; k < g.offset[vx + 1]; ++k) {
      const int j = interior_index[g.nbr[k]];
      d += g.w[k];
      if (j >= 0) a[static_cast<std::size_t>(i) * m + j] -= g.w[k];
    }
    a[static_cast<std::size_t>(i) * m + i] += d;
  }
  std::vector<double> b = reduced_rhs(*this);

  // Cholesky: a = L L^T, stored in the lower triangle
  for (int j = 0; j < m; ++j) {
    double d = a[static_cast<std::size_t>(j) * m + j];
    for (int k = 0; k < j; ++k) {
      const double ljk = a[static_cast<std::size_t>(j) * m + k];
      d -= ljk * ljk;
    }
    if (!(d > 0.0)) fail(ErrorCode::SingularSystem, "dense factorization not positive definite");
    const double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * m + j] = ljj;
    for (int i = j + 1; i < m; ++i) {
      double acc = a[static_cast<std::size_t>(i) * m + j];
      for (int k = 0; k < j; ++k)
        acc -= a[static_cast<std::size_t>(i) * m + k] * a[static_cast<std::size_t>(j) * m + k];
      a[static_cast<std::size_t>(i) * m + j] = acc / ljj;
    }
  }
  // forward then backward substitution
  for (int i = 0; i < m; ++i) {
    double acc = b[i];
    for (int k = 0; k < i; ++k) acc -= a[static_cast<std::size_t>(i) * m + k] * b[k];
    b[i] = acc / a[static_cast<std::size_t>(i) * m + i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double acc = b[i];
    for (int k = i + 1; k < m; ++k) acc -= a[static_cast<std::size_t>(k) * m + i] * b[k];
    b[i] = acc / a[static_cast<std::size_t>(i) * m + i];
  }
  return expand_full(*this, b);
}

double DirichletSystem::max_relative_residual(const std::vector<double>& full) const {
  const auto& g = *graph;
  double worst = 0.0;
  for (const int vx : interior) {
    double res = (*mu)[vx] * (*sigma)[vx] * full[vx];
    double scale = std::abs(res);
    for (int k = g.offset[vx]; k < g.offset[vx + 1]; ++k) {
      const double term = g.w[k] * (full[vx] - full[g.nbr[k]]);
      res += term;
      scale += std::abs(g.w[k]) * (std::abs(full[vx]) + std::abs(full[g.nbr[k]]));
    }
    if (scale == 0.0) scale = 1.0;
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) off += at(i, j) * at(i, j);
  double norm = off;
  for (int i = 0; i < n; ++i) norm += at(i, i) * at(i, i);
  const double tol = 1e-30 * (norm > 0 ? norm : 1.0);
  for (int sweep = 0; sweep < 100 && off > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
    off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) off += at(i, j) * at(i, j);
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::InvalidSpec, "fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) fail(ErrorCode::InvalidSpec, "degenerate abscissae in fit");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace endslab
