#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qcover/circuit.hpp"
#include "qcover/linalg.hpp"

namespace qcover {

enum class GramKind : std::uint8_t {
  Jacobian,  // Re<d_m C, d_n C> scaled Gram of tangent vectors
  Sample,    // Re<C(theta_j), C(theta_k)> Gram of sample states
  Metric,    // pullback metric g_jk
};

/// Real symmetric Gram matrix with a tag saying which object it represents.
struct GramMatrix {
  linalg::Matrix entries;
  GramKind kind = GramKind::Jacobian;
};

/// Checks symmetry within `sym_tol` and eigenvalues >= -`psd_tol`.
bool is_symmetric_psd(const GramMatrix& g, double sym_tol = 1e-10, double psd_tol = 1e-10);

/// How Gram entries are obtained: exact statevector inner products, or
/// simulated interferometry with a finite shot budget.
struct DeaMode {
  bool exact = true;
  long long shots = 0;
  std::uint64_t seed = 0;

  static DeaMode Exact() { return {}; }
  static DeaMode Shots(long long shots, std::uint64_t seed) { return {false, shots, seed}; }
};

/// Jacobian Gram matrix over the given slots: entry (a, b) equals
/// (1/4) Re<gamma_{slots[a]}, gamma_{slots[b]}>.
GramMatrix jacobian_gram(const ParametricCircuit& circuit, std::span<const double> theta,
                         std::span<const int> slots, const DeaMode& mode = DeaMode::Exact());

/// True iff the smallest singular value of S exceeds tol.
bool is_independent(const GramMatrix& s, double tol);

struct DeaReport {
  std::vector<int> independent_slots;                 // in scan order
  std::vector<std::pair<int, double>> redundant_slots;  // (slot, frozen value)
  std::vector<double> probe_theta;
  double tolerance = 0.0;
  DeaMode mode;
};

/// Default invertibility tolerance: 1e-8 in exact mode; in shot mode five
/// worst-case entry standard errors per matrix dimension.
double default_scan_tolerance(const DeaMode& mode, int dimension);

/// Inductive independence scan. Slots are visited in order; slot k is kept
/// iff the Gram matrix over kept slots plus k passes is_independent.
/// Previously measured Gram entries are reused; each new candidate adds one
/// row/column of measurements. Redundant slots are frozen at their probe
/// values. Pass tol <= 0 to use the per-step default.
DeaReport scan(const ParametricCircuit& circuit, std::span<const double> probe_theta,
               double tol, const DeaMode& mode = DeaMode::Exact());

struct MinimalityCertificate {
  double min_eigenvalue = 0.0;        // worst case over probes
  std::vector<double> per_probe;      // smallest eigenvalue of full S at each probe
};

/// Smallest eigenvalue of the full Jacobian Gram over a set of probe points;
/// numerical evidence that no parameter can be frozen anywhere.
MinimalityCertificate minimality_certificate(const ParametricCircuit& circuit,
                                             std::span<const std::vector<double>> probes);

}  // namespace qcover
