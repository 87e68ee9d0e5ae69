#pragma once

#include <cmath>
#include <utility>

namespace collide::quadrature {

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] with Richardson correction.
/// The absolute tolerance is rel_tol times a coarse estimate of |integral|.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 int max_depth = 48)
{
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double scale = std::fabs(whole) > 0.0 ? std::fabs(whole) : 1.0;
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale,
                                  max_depth);
}

/// Integral of a radial function g(|x|) over R^d, computed in one dimension as
/// area(S^{d-1}) * int_0^inf g(s) s^{d-1} ds under s = tan(theta).
template <class G>
double integrate_radial(G&& g, int d, double sphere_area, double rel_tol = 1e-10)
{
  auto integrand = [&](double theta) {
    if (theta >= 0.5 * M_PI)
      return 0.0;
    const double s = std::tan(theta);
    const double jac = 1.0 / (std::cos(theta) * std::cos(theta));
    return g(s) * std::pow(s, d - 1) * jac;
  };
  return sphere_area * integrate(integrand, 0.0, 0.5 * M_PI, rel_tol);
}

}  // namespace collide::quadrature
