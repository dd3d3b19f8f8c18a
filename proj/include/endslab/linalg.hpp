#pragma once

#include <tuple>
#include <vector>

namespace endslab {

/// Undirected weighted graph in CSR form (each edge stored in both rows).
struct WeightedGraph {
  std::vector<int> offset;  // size n+1
  std::vector<int> nbr;
  std::vector<double> w;

  int size() const { return offset.empty() ? 0 : static_cast<int>(offset.size()) - 1; }

  static WeightedGraph from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges);

  bool connected() const;
  // number of connected components among vertices not flagged in `removed`
  int component_count(const std::vector<char>& removed) const;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Dirichlet problem for the weighted Schrodinger stencil
///   sum_y w_xy (v(x) - v(y)) + mu(x) sigma(x) v(x) = 0   at free vertices,
///   v(x) = bc(x)                                         at constrained vertices.
/// With sigma >= 0 the reduced system is symmetric positive definite.
struct DirichletSystem {
  const WeightedGraph* graph = nullptr;
  const std::vector<double>* mu = nullptr;
  const std::vector<double>* sigma = nullptr;
  std::vector<char> constrained;
  std::vector<double> bc;
  std::vector<int> interior;        // free vertex ids
  std::vector<int> interior_index;  // vertex -> slot in `interior`, or -1

  static DirichletSystem build(const WeightedGraph& g, const std::vector<double>& mu,
                               const std::vector<double>& sigma,
                               const std::vector<char>& constrained,
                               const std::vector<double>& bc);

  // diagonally preconditioned conjugate gradients; returns the full-length
  // vector (boundary values included). Throws SingularSystem on stagnation.
  std::vector<double> solve_cg(double rel_tol, int max_iter = 0,
                               const std::vector<double>* initial = nullptr,
                               SolveStats* stats = nullptr) const;

  // dense Cholesky solve, cross-check oracle for small systems
  std::vector<double> solve_dense() const;

  // max over free vertices of |stencil residual| / local scale
  double max_relative_residual(const std::vector<double>& full) const;
};

/// Eigenvalues of a symmetric n x n matrix (row-major), sorted descending.
/// Cyclic Jacobi; intended for small matrices (Gram matrices of end functions).
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace endslab
