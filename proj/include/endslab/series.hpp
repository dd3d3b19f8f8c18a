#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace endslab {

/// Sampled radial series. Radii must be strictly increasing; derivative
/// queries are valid only at interior indices.
struct ProfileSeries {
  std::string name;
  std::vector<double> radii;
  std::vector<double> values;

  std::size_t size() const { return radii.size(); }

  void validate() const;

  // centered 3-point stencils, valid for 1 <= i <= size-2
  double derivative(std::size_t i) const;
  double second_derivative(std::size_t i) const;

  // piecewise-linear value; clamps to the end values outside the range
  double interpolate(double r) const;

  // step-function value: value at the largest sampled radius <= r
  double step_at(double r) const;

  bool nondecreasing(double tol = 0.0) const;

  // two-column CSV with a one-line header
  std::string to_csv() const;
};

}  // namespace endslab
