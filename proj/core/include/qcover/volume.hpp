#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcover/circuit.hpp"
#include "qcover/dea.hpp"

namespace qcover {

/// Which geometry the pullback metric lives in. Hilbert measures tangent
/// vectors in the full Hilbert sphere, (1/4) Re<gamma_j, gamma_k>. Bloch
/// (single qubit only) is the pullback through the phase-invariant Bloch
/// projection, the geometry of the sphere pictures.
enum class MetricGauge : std::uint8_t { Hilbert, Bloch };

/// Pullback metric g_jk(theta) = Re<d_j C, d_k C> in the chosen gauge.
/// Supports slots driving several gates and non-unit multipliers via exact
/// tangent accumulation. A circuit with redundant parameters yields a
/// singular metric (det g = 0).
GramMatrix metric(const ParametricCircuit& circuit, std::span<const double> theta,
                  MetricGauge gauge = MetricGauge::Hilbert);

/// One metric evaluation bundled with its volume density.
struct MetricSample {
  std::vector<double> theta;
  GramMatrix g;
  double sqrt_det_g = 0.0;
};

MetricSample metric_sample(const ParametricCircuit& circuit, std::span<const double> theta,
                           MetricGauge gauge = MetricGauge::Hilbert);

struct QuadratureSpec {
  enum class Kind : std::uint8_t { TensorTrapezoid, Qmc };
  Kind kind = Kind::TensorTrapezoid;
  int points_per_dim = 4096;  // tensor rule
  long long n = 0;            // QMC points
  std::uint64_t seed = 0;

  static QuadratureSpec Trapezoid(int points_per_dim) {
    return {Kind::TensorTrapezoid, points_per_dim, 0, 0};
  }
  static QuadratureSpec Qmc(long long n, std::uint64_t seed) {
    return {Kind::Qmc, 0, n, seed};
  }
};

struct VolumeReport {
  double volume = 0.0;
  QuadratureSpec quadrature;
  MetricGauge gauge = MetricGauge::Hilbert;
  int dim_image = 0;               // = number of parameters
  double alpha_lower_bound = 0.0;  // from the volume relation, clamped to pi
};

/// Riemannian volume of the circuit image: integral of sqrt(det g) over the
/// periodic parameter box. The tensor trapezoid rule on the torus is
/// spectrally accurate for smooth integrands; QMC is the fallback for many
/// parameters.
VolumeReport volume(const ParametricCircuit& circuit, const QuadratureSpec& quad,
                    MetricGauge gauge = MetricGauge::Hilbert);

/// Best-case covering radius of N quasi-equidistant points on S^(D-1):
/// (2 pi^{D/2} / (Gamma(D/2) N))^{1/(D-1)} * sqrt(D)/2.
double alpha_opt(double n_points, int ambient_dim);

struct GreedyPathBounds {
  double v1 = 0.0;  // latitude-stepping path volume
  double v2 = 0.0;  // spiral path volume
  int bands = 1;    // n with 2*alpha snapped to pi/n for v1
};

/// Greedy lower-bound volumes for an image that stays alpha-close to every
/// state. 2*alpha is snapped to the nearest integer fraction of pi for the
/// stepping path; the spiral volume uses alpha as given. V1/V2 tends to
/// 2/pi as alpha goes to 0.
GreedyPathBounds greedy_path_bounds(double alpha, int dim_image);

/// Heuristic covering-radius floor from the image volume:
/// 4 pi^{dim/2 + 1} / (Gamma(dim/2) vol), clamped to pi.
double alpha_lower_bound_from_volume(double vol_image, int dim_image);

/// Single-parameter Bloch spiral R_Z(n theta) R_Y(theta) |0>; its Bloch
/// image winds n times around the sphere and has a closed-form metric and
/// volume in the Bloch gauge.
ParametricCircuit spiral_circuit(int turns);

}  // namespace qcover
