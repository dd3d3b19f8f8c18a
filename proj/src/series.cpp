#include "endslab/series.hpp"

#include <algorithm>
#include <cstdio>

#include "endslab/errors.hpp"

namespace endslab {

void ProfileSeries::validate() const {
  if (radii.size() != values.size())
    fail(ErrorCode::InvalidSpec, "series '" + name + "': radii/values size mismatch");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      fail(ErrorCode::InvalidSpec, "series '" + name + "': radii not strictly increasing");
}

double ProfileSeries::derivative(std::size_t i) const {
  const double h1 = radii[i] - radii[i - 1];
  const double h2 = radii[i + 1] - radii[i];
  return (values[i + 1] * h1 * h1 - values[i - 1] * h2 * h2 + values[i] * (h2 * h2 - h1 * h1)) /
         (h1 * h2 * (h1 + h2));
}

double ProfileSeries::second_derivative(std::size_t i) const {
  const double h1 = radii[i] - radii[i - 1];
  const double h2 = radii[i + 1] - radii[i];
  return 2.0 * (values[i - 1] * h2 + values[i + 1] * h1 - values[i] * (h1 + h2)) /
         (h1 * h2 * (h1 + h2));
}

double ProfileSeries::interpolate(double r) const {
  if (radii.empty()) fail(ErrorCode::InvalidSpec, "series '" + name + "' is empty");
  if (r <= radii.front()) return values.front();
  if (r >= radii.back()) return values.back();
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - radii.begin());
  const double t = (r - radii[i - 1]) / (radii[i] - radii[i - 1]);
  return values[i - 1] + t * (values[i] - values[i - 1]);
}

double ProfileSeries::step_at(double r) const {
  if (radii.empty() || r < radii.front())
    fail(ErrorCode::InvalidSpec, "series '" + name + "': radius below first sample");
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  return values[static_cast<std::size_t>(it - radii.begin()) - 1];
}

bool ProfileSeries::nondecreasing(double tol) const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1] - tol) return false;
  return true;
}

std::string ProfileSeries::to_csv() const {
  std::string out = "radius,value\n";
  char buf[80];
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", radii[i], values[i]);
    out += buf;
  }
  return out;
}

}  // namespace endslab
