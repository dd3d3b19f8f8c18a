#pragma once

#include <string>
#include <utility>
#include <vector>

#include "endslab/linalg.hpp"
#include "endslab/model.hpp"

namespace endslab {

/// One constructed positive solution attached to an end, with its
/// normalization history and convergence metadata. Values on the outermost
/// layer are Dirichlet data of the last exhaustion rung; interior checks
/// quantify over rho < domain_radius.
struct EndFunction {
  int end_index = -1;
  std::vector<double> values;
  double domain_radius = 0.0;
  std::vector<std::pair<double, double>> normalization_history;  // (R, C_R)
  double convergence_gap = 0.0;  // sup-norm change on D(r0) between last two rungs
  double r0 = 0.0;
  bool converged = false;

  std::string to_csv(const DiscreteManifold& man) const;  // vertex_id,rho,end_label,value
};

/// Solve (L - sigma) v = 0 on the interior of D(R) with v = 1 on the radius-R
/// layer of end `end_index` and v = 0 on the radius-R layers of all other
/// ends. Asserts the strict maximum principle 0 < v < 1 on the interior.
std::vector<double> dirichlet_solve(const DiscreteManifold& man, int end_index, double R,
                                    double tol_lin = 1e-10, SolveStats* stats = nullptr,
                                    const std::vector<double>* initial = nullptr);

/// Rescale so that max over D(r0) equals 1 exactly; returns (u, C_R).
std::pair<std::vector<double>, double> normalize(std::vector<double> v,
                                                 const DiscreteManifold& man, double r0);

/// Run dirichlet_solve + normalize over the radius ladder
/// {r_max/4, r_max/2, r_max} (snapped to the layer grid) and keep the last
/// rung. converged = (gap <= tol_limit); not converging is advisory.
EndFunction construct_end_function(const DiscreteManifold& man, int end_index, double r0,
                                   double tol_limit = 1e-6, double tol_lin = 1e-10);

struct EndSeparation {
  int end_index = -1;
  bool converged = false;
  bool positive_off_end = false;   // u > 0 on interior of M \ E_i
  bool bounded_off_end = false;    // u <= 1 + tol on M \ E_i
  bool sup_exceeds_one = false;    // sup u > 1
  bool sup_on_own_end = false;
  bool e_max_strictly_increasing = false;  // r -> max_{dE_i(r)} u
  bool f_max_nonincreasing = false;        // r -> max_{dF_i(r)} u
  double min_off_end = 0.0;
  double max_off_end = 0.0;
  double sup_value = 0.0;
  double increase_margin = 0.0;  // min consecutive increase on the E side
  double decrease_margin = 0.0;  // min consecutive decrease on the F side
  bool pass() const {
    return positive_off_end && bounded_off_end && sup_exceeds_one && sup_on_own_end &&
           e_max_strictly_increasing && f_max_nonincreasing;
  }
};

struct SeparationReport {
  std::vector<EndSeparation> per_end;
  bool pass = false;
};

SeparationReport verify_separation(const std::vector<EndFunction>& fns,
                                   const DiscreteManifold& man, double tol_limit = 1e-6);

/// Gram matrix G_ij = sum_{rho < domain_radius} mu u_i u_j, row-major.
std::vector<double> gram_matrix(const std::vector<EndFunction>& fns,
                                const DiscreteManifold& man, double domain_radius);

/// Numerical rank of the Gram matrix: eigenvalues > rank_tol * largest.
int gram_rank(const std::vector<EndFunction>& fns, const DiscreteManifold& man,
              double domain_radius, double rank_tol = 1e-8);

/// max over edges inside D(r) of |ln u(x) - ln u(y)| / h. Requires u > 0 on
/// D(2r); throws NonPositiveInput otherwise.
double harnack_check(const DiscreteManifold& man, const std::vector<double>& u, double r);

}  // namespace endslab
