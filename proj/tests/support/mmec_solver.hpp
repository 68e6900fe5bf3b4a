// Analytic target-state solver for the inductive circuit construction.
// Verification-side machinery: given a target state it reconstructs
// parameters for build(Q, WithGlobalPhase) exactly, by splitting amplitudes
// across the top qubit and recursing, with a closed-form single-qubit base
// case.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover::testing {

/// Angles (t1, t2, t3) with R_Y(t3) R_Z(t2) R_X(t1)|0> equal to (a, b)
/// exactly, including the global phase.
inline std::vector<double> solve_single_qubit(Complex a, Complex b) {
  // With u = e^{-i t2/2} cos(t1/2) and v = -i e^{i t2/2} sin(t1/2),
  // the circuit state is (u c3 - v s3, u s3 + v c3) for c3 = cos(t3/2),
  // s3 = sin(t3/2). Inverting the rotation gives u, v from (a, b); the
  // angle t3 is fixed by requiring u*v to be -i times a nonnegative real.
  const Complex b2a2 = b * b - a * a;
  const Complex ab = a * b;
  const double A = 0.5 * b2a2.real();
  const double B = ab.real();
  double t3 = (std::abs(A) + std::abs(B) < 1e-300) ? 0.0 : std::atan2(-B, A);

  auto split = [&](double angle, Complex& u, Complex& v) {
    const double c3 = std::cos(0.5 * angle);
    const double s3 = std::sin(0.5 * angle);
    u = c3 * a + s3 * b;
    v = -s3 * a + c3 * b;
  };
  Complex u, v;
  split(t3, u, v);
  if ((u * v).imag() > 1e-15) {
    t3 += 3.1415926535897932384626433832795;
    split(t3, u, v);
  }

  const double t1 = 2.0 * std::atan2(std::abs(v), std::abs(u));
  double t2 = 0.0;
  if (std::abs(u) >= std::abs(v)) {
    t2 = -2.0 * std::arg(u);
  } else {
    t2 = 2.0 * (std::arg(v) + 0.5 * 3.1415926535897932384626433832795);
  }
  return {t1, t2, t3};
}

/// Parameters for the Q-qubit construction reproducing `target` exactly.
/// Slot order matches build(): (theta_1, theta', theta'').
inline std::vector<double> solve_mmec_parameters(int num_qubits,
                                                 const std::vector<Complex>& target) {
  if (num_qubits == 1) return solve_single_qubit(target[0], target[1]);

  const std::size_t half = target.size() / 2;
  double n0 = 0.0, n1 = 0.0;
  for (std::size_t k = 0; k < half; ++k) n0 += std::norm(target[k]);
  for (std::size_t k = half; k < target.size(); ++k) n1 += std::norm(target[k]);
  n0 = std::sqrt(n0);
  n1 = std::sqrt(n1);

  // cos(t1/2)|1> C(theta'') - i sin(t1/2)|0> C(theta'')
  const double t1 = 2.0 * std::atan2(n0, n1);

  std::vector<Complex> psi0(half), psi1(half);
  const Complex i_unit{0.0, 1.0};
  for (std::size_t k = 0; k < half; ++k) {
    psi0[k] = (n0 > 1e-14) ? i_unit * target[k] / n0 : Complex{k == 0 ? 1.0 : 0.0, 0.0};
    psi1[k] = (n1 > 1e-14) ? target[half + k] / n1 : Complex{k == 0 ? 1.0 : 0.0, 0.0};
  }

  const std::vector<double> lo = solve_mmec_parameters(num_qubits - 1, psi0);
  const std::vector<double> hi = solve_mmec_parameters(num_qubits - 1, psi1);

  std::vector<double> theta;
  theta.reserve(1 + lo.size() + hi.size());
  theta.push_back(t1);
  theta.insert(theta.end(), lo.begin(), lo.end());
  theta.insert(theta.end(), hi.begin(), hi.end());
  return theta;
}

}  // namespace qcover::testing
