#include "qcover/special_functions.hpp"

#include <cmath>

#include "qcover/errors.hpp"

namespace qcover {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

double carlson_RF(double x, double y, double z) {
  detail::require(x >= 0.0 && y >= 0.0 && z >= 0.0, "carlson_RF: arguments must be >= 0");
  const double errtol = 1e-4;
  double xn = x, yn = y, zn = z;
  for (int iter = 0; iter < 200; ++iter) {
    const double mu = (xn + yn + zn) / 3.0;
    const double xd = 2.0 - (mu + xn) / mu;
    const double yd = 2.0 - (mu + yn) / mu;
    const double zd = 2.0 - (mu + zn) / mu;
    const double eps = std::max({std::fabs(xd), std::fabs(yd), std::fabs(zd)});
    if (eps < errtol) {
      const double e2 = xd * yd - zd * zd;
      const double e3 = xd * yd * zd;
      const double s = 1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0;
      return s / std::sqrt(mu);
    }
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * (sy + sz) + sy * sz;
    xn = 0.25 * (xn + lam);
    yn = 0.25 * (yn + lam);
    zn = 0.25 * (zn + lam);
  }
  throw NumericError("carlson_RF: no convergence");
}

double carlson_RD(double x, double y, double z) {
  detail::require(x >= 0.0 && y >= 0.0 && z > 0.0, "carlson_RD: needs x,y >= 0 and z > 0");
  const double errtol = 1e-4;
  double xn = x, yn = y, zn = z;
  double sigma = 0.0;
  double power4 = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mu = 0.2 * (xn + yn + 3.0 * zn);
    const double xd = (mu - xn) / mu;
    const double yd = (mu - yn) / mu;
    const double zd = (mu - zn) / mu;
    const double eps = std::max({std::fabs(xd), std::fabs(yd), std::fabs(zd)});
    if (eps < errtol) {
      const double ea = xd * yd;
      const double eb = zd * zd;
      const double ec = ea - eb;
      const double ed = ea - 6.0 * eb;
      const double ef = ed + ec + ec;
      const double s1 = ed * (-3.0 / 14.0 + 0.25 * (9.0 / 22.0) * ed -
                              1.5 * (3.0 / 26.0) * zd * ef);
      const double s2 = zd * ((1.0 / 6.0) * ef + zd * (-(9.0 / 22.0) * ec +
                                                       zd * (3.0 / 26.0) * ea));
      return 3.0 * sigma + power4 * (1.0 + s1 + s2) / (mu * std::sqrt(mu));
    }
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * (sy + sz) + sy * sz;
    sigma += power4 / (sz * (zn + lam));
    power4 *= 0.25;
    xn = 0.25 * (xn + lam);
    yn = 0.25 * (yn + lam);
    zn = 0.25 * (zn + lam);
  }
  throw NumericError("carlson_RD: no convergence");
}

double elliptic_E(double m) {
  detail::require(m <= 1.0, "elliptic_E: parameter must satisfy m <= 1");
  if (m == 0.0) return kPi / 2.0;
  if (m == 1.0) return 1.0;
  const double y = 1.0 - m;
  if (y < 1e-8) {
    // E(m) near m = 1: 1 + y/2 (log(4/sqrt(y)) - 1/2) + O(y^2 log y).
    return 1.0 + 0.5 * y * (std::log(4.0 / std::sqrt(y)) - 0.5);
  }
  return carlson_RF(0.0, y, 1.0) - (m / 3.0) * carlson_RD(0.0, y, 1.0);
}

double gamma_fn(double x) {
  // Lanczos, g = 7, 9 coefficients.
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

  if (x < 0.5) {
    // Reflection formula.
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = coef[0];
  const double t = x + g + 0.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double sphere_surface_area(int ambient_dim) {
  detail::require(ambient_dim >= 1, "sphere_surface_area: dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * ambient_dim) / gamma_fn(0.5 * ambient_dim);
}

}  // namespace qcover
