#include "qcover/volume.hpp"

#include <cmath>

#include "qcover/errors.hpp"
#include "qcover/geometry.hpp"
#include "qcover/linalg.hpp"
#include "qcover/sobol.hpp"
#include "qcover/special_functions.hpp"

namespace qcover {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Differential of the Bloch projection at `state` applied to `tangent`.
std::array<double, 3> bloch_tangent(const StateVector& state, std::span<const Complex> tangent) {
  const Complex a = state.amplitudes[0];
  const Complex b = state.amplitudes[1];
  const Complex va = tangent[0];
  const Complex vb = tangent[1];
  const Complex dab = std::conj(va) * b + std::conj(a) * vb;
  return {2.0 * dab.real(), 2.0 * dab.imag(),
          2.0 * (std::conj(a) * va).real() - 2.0 * (std::conj(b) * vb).real()};
}

}  // namespace

GramMatrix metric(const ParametricCircuit& circuit, std::span<const double> theta,
                  MetricGauge gauge) {
  const int n = circuit.num_params;
  detail::require(n >= 1, "metric: circuit has no parameters");

  GramMatrix g{linalg::Matrix(n, n), GramKind::Metric};
  if (gauge == MetricGauge::Hilbert) {
    std::vector<std::vector<Complex>> tangents;
    tangents.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) tangents.push_back(parameter_tangent(circuit, theta, s));
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double re = 0.0;
        for (std::size_t i = 0; i < tangents[static_cast<std::size_t>(j)].size(); ++i)
          re += (std::conj(tangents[static_cast<std::size_t>(j)][i]) *
                 tangents[static_cast<std::size_t>(k)][i])
                    .real();
        g.entries(j, k) = re;
        g.entries(k, j) = re;
      }
    return g;
  }

  detail::require(circuit.num_qubits == 1, "metric: Bloch gauge needs a single-qubit circuit");
  const StateVector state = evaluate(circuit, theta);
  std::vector<std::array<double, 3>> jac;
  jac.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    jac.push_back(bloch_tangent(state, parameter_tangent(circuit, theta, s)));
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      const double v = jac[static_cast<std::size_t>(j)][0] * jac[static_cast<std::size_t>(k)][0] +
                       jac[static_cast<std::size_t>(j)][1] * jac[static_cast<std::size_t>(k)][1] +
                       jac[static_cast<std::size_t>(j)][2] * jac[static_cast<std::size_t>(k)][2];
      g.entries(j, k) = v;
      g.entries(k, j) = v;
    }
  return g;
}

MetricSample metric_sample(const ParametricCircuit& circuit, std::span<const double> theta,
                           MetricGauge gauge) {
  MetricSample m;
  m.theta.assign(theta.begin(), theta.end());
  m.g = metric(circuit, theta, gauge);
  m.sqrt_det_g = std::sqrt(std::max(0.0, linalg::determinant(m.g.entries)));
  return m;
}

VolumeReport volume(const ParametricCircuit& circuit, const QuadratureSpec& quad,
                    MetricGauge gauge) {
  validate(circuit);
  const int dims = circuit.num_params;
  detail::require(dims >= 1, "volume: circuit has no parameters");

  double box = 1.0;
  for (int s = 0; s < dims; ++s) box *= circuit.period(s);

  std::vector<double> densities;
  if (quad.kind == QuadratureSpec::Kind::TensorTrapezoid) {
    detail::require(quad.points_per_dim >= 2, "volume: need at least 2 points per dimension");
    detail::require(dims <= 3, "volume: tensor rule supports at most 3 parameters; use QMC");
    const int k = quad.points_per_dim;
    long long total = 1;
    for (int s = 0; s < dims; ++s) total *= k;
    densities.reserve(static_cast<std::size_t>(total));
    std::vector<double> theta(static_cast<std::size_t>(dims), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    for (long long node = 0; node < total; ++node) {
      long long rem = node;
      for (int s = 0; s < dims; ++s) {
        idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % k);
        rem /= k;
        theta[static_cast<std::size_t>(s)] =
            circuit.period(s) * idx[static_cast<std::size_t>(s)] / k;
      }
      densities.push_back(metric_sample(circuit, theta, gauge).sqrt_det_g);
    }
    const double weight = box / static_cast<double>(total);
    VolumeReport report;
    report.volume = weight * linalg::pairwise_sum(densities);
    report.quadrature = quad;
    report.gauge = gauge;
    report.dim_image = dims;
    report.alpha_lower_bound =
        report.volume > 0.0 ? alpha_lower_bound_from_volume(report.volume, dims) : kPi;
    return report;
  }

  detail::require(quad.n >= 1, "volume: QMC needs at least one point");
  SobolSequence seq(dims, quad.seed, true);
  densities.reserve(static_cast<std::size_t>(quad.n));
  std::vector<double> theta(static_cast<std::size_t>(dims), 0.0);
  for (long long i = 0; i < quad.n; ++i) {
    const std::vector<double> u = seq.next();
    for (int s = 0; s < dims; ++s)
      theta[static_cast<std::size_t>(s)] = circuit.period(s) * u[static_cast<std::size_t>(s)];
    densities.push_back(metric_sample(circuit, theta, gauge).sqrt_det_g);
  }
  VolumeReport report;
  report.volume = box * linalg::pairwise_sum(densities) / static_cast<double>(quad.n);
  report.quadrature = quad;
  report.gauge = gauge;
  report.dim_image = dims;
  report.alpha_lower_bound =
      report.volume > 0.0 ? alpha_lower_bound_from_volume(report.volume, dims) : kPi;
  return report;
}

double alpha_opt(double n_points, int ambient_dim) {
  detail::require(n_points >= 1.0, "alpha_opt: N must be >= 1");
  detail::require(ambient_dim >= 2, "alpha_opt: dimension must be >= 2");
  const double cell = std::pow(sphere_surface_area(ambient_dim) / n_points,
                               1.0 / (ambient_dim - 1));
  return cell * 0.5 * std::sqrt(static_cast<double>(ambient_dim));
}

GreedyPathBounds greedy_path_bounds(double alpha, int dim_image) {
  detail::require(alpha > 0.0, "greedy_path_bounds: alpha must be positive");
  detail::require(dim_image >= 1, "greedy_path_bounds: dimension must be >= 1");

  GreedyPathBounds out;
  out.bands = std::max(1, static_cast<int>(std::llround(kPi / (2.0 * alpha))));
  const double alpha_snapped = kPi / (2.0 * out.bands);
  // Path length 2*alpha + sum_j 2*pi*sin(pi j / n) = pi/n + 2*pi*cot(pi/2n).
  const double cot = (out.bands == 1) ? 0.0 : 1.0 / std::tan(alpha_snapped);
  const double len1 = 2.0 * alpha_snapped + 2.0 * kPi * cot;
  const double shell = sphere_surface_area(dim_image);  // vol S^{dim-1}
  out.v1 = len1 * shell;

  const double len2 = kPi * std::sqrt(1.0 + (kPi / alpha) * (kPi / alpha));
  out.v2 = len2 * shell;
  return out;
}

double alpha_lower_bound_from_volume(double vol_image, int dim_image) {
  detail::require(vol_image > 0.0, "alpha_lower_bound_from_volume: volume must be positive");
  detail::require(dim_image >= 1, "alpha_lower_bound_from_volume: dimension must be >= 1");
  const double bound = 4.0 * std::pow(kPi, 0.5 * dim_image + 1.0) /
                       (gamma_fn(0.5 * dim_image) * vol_image);
  return std::min(bound, kPi);
}

ParametricCircuit spiral_circuit(int turns) {
  detail::require(turns >= 0, "spiral_circuit: winding number must be >= 0");
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 1;
  c.param_periods = {kTwoPi};
  // Bloch image (sin th cos 2nth, sin th sin 2nth, cos th): the phase gate
  // needs twice the winding number since exp(-i phi/2 Z) advances the Bloch
  // azimuth by phi. Over theta in [0, pi] this winds n times pole to pole;
  // the second half period retraces the antipodal copy of that curve.
  c.gates.push_back(axis_rotation_gate(Axis::Y, 0, 0, 1.0));
  c.gates.push_back(axis_rotation_gate(Axis::Z, 0, 0, 2.0 * turns));
  validate(c);
  return c;
}

}  // namespace qcover
