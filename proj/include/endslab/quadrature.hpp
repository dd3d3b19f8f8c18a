#pragma once

#include <cmath>
#include <functional>

namespace endslab {

namespace detail {

inline double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance. The interval is cut
/// into initial segments first so that narrowly concentrated integrands are
/// sampled before the refinement criterion is trusted.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 40, int initial_segments = 64) {
  if (a == b) return 0.0;
  double total = 0.0;
  const double seg_tol = tol / initial_segments;
  for (int s = 0; s < initial_segments; ++s) {
    const double sa = a + (b - a) * s / initial_segments;
    const double sb = a + (b - a) * (s + 1) / initial_segments;
    const double m = 0.5 * (sa + sb);
    const double fa = f(sa), fb = f(sb), fm = f(m);
    const double whole = detail::simpson(sa, fa, fm, sb, fb);
    total += detail::adaptive_step(f, sa, fa, sb, fb, m, fm, whole, seg_tol, max_depth);
  }
  return total;
}

/// Composite Simpson with n panels (n rounded up to even).
inline double composite_simpson(const std::function<double(double)>& f, double a, double b,
                                int n) {
  if (n % 2) ++n;
  if (n < 2) n = 2;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace endslab
