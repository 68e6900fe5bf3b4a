#pragma once

namespace qcover {

/// Complete elliptic integral of the second kind in the parameter
/// convention: E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt, for m <= 1
/// (negative m allowed). Relative error below 1e-10.
double elliptic_E(double m);

/// Carlson symmetric integrals, used to evaluate E(m).
/// [Carlson, Numer. Math. 33 (1979)]
double carlson_RF(double x, double y, double z);
double carlson_RD(double x, double y, double z);

/// Gamma function via the Lanczos approximation (g = 7, n = 9), accurate to
/// about 1e-13 relative over the positive half-integers used here.
double gamma_fn(double x);

/// Surface area of the unit sphere S^(D-1) in R^D: 2 pi^{D/2} / Gamma(D/2).
double sphere_surface_area(int ambient_dim);

}  // namespace qcover
