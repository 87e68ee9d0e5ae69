#pragma once

// Special functions backing every CDF in the library. Pure and thread-safe;
// every function throws DomainError on NaN or out-of-domain input.

namespace collide::specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms).
double log_gamma(double x);

/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1], a, b > 0.
///
/// Evaluated by the continued fraction with modified Lentz iteration. When
/// x > (a + 1) / (a + b + 2) the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) is
/// applied so the fraction always converges quickly.
double reg_inc_beta(double x, double a, double b);

/// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, int d1, int d2);

/// Kolmogorov survival function Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
/// Terms below 1e-16 are dropped, so far-tail values come back as exactly 0.
double kolmogorov_sf(double t);

}  // namespace collide::specfun
