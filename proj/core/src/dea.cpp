#include "qcover/dea.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "qcover/errors.hpp"
#include "qcover/rng.hpp"
#include "qcover/shots.hpp"

namespace qcover {

namespace {

// One Gram entry: (1/4) Re<gamma_m, gamma_n>, exact or shot-estimated.
// In shot mode each unordered pair gets its own derived RNG stream.
class GramEntrySource {
 public:
  GramEntrySource(const ParametricCircuit& circuit, std::span<const double> theta,
                  const DeaMode& mode)
      : circuit_(circuit), theta_(theta.begin(), theta.end()), mode_(mode) {}

  double operator()(int m, int n) {
    if (mode_.exact) {
      return 0.25 * real_inner(gamma(m), gamma(n));
    }
    InterferenceJob job;
    job.base = circuit_;
    job.theta = theta_;
    job.mode = InterferenceJob::DerivativePair{m, n};
    job.shots = mode_.shots;
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    job.rng_seed = mix_seed(mode_.seed,
                            static_cast<std::uint64_t>(lo) * 0x10001ull +
                                static_cast<std::uint64_t>(hi));
    return 0.25 * estimate_real_inner(job).estimate;
  }

 private:
  const StateVector& gamma(int slot) {
    auto it = cache_.find(slot);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(slot, derivative_state(circuit_, theta_, slot)).first->second;
  }

  const ParametricCircuit& circuit_;
  std::vector<double> theta_;
  DeaMode mode_;
  std::map<int, StateVector> cache_;
};

}  // namespace

bool is_symmetric_psd(const GramMatrix& g, double sym_tol, double psd_tol) {
  if (!g.entries.square()) return false;
  if (linalg::symmetry_defect(g.entries) > sym_tol) return false;
  const auto eig = linalg::symmetric_eigenvalues(g.entries);
  return eig.empty() || eig.front() >= -psd_tol;
}

GramMatrix jacobian_gram(const ParametricCircuit& circuit, std::span<const double> theta,
                         std::span<const int> slots, const DeaMode& mode) {
  const int k = static_cast<int>(slots.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      detail::require(slots[static_cast<std::size_t>(a)] != slots[static_cast<std::size_t>(b)],
                      "jacobian_gram: slots must be distinct");

  GramEntrySource entry(circuit, theta, mode);
  GramMatrix g{linalg::Matrix(k, k), GramKind::Jacobian};
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const double v = entry(slots[static_cast<std::size_t>(a)],
                             slots[static_cast<std::size_t>(b)]);
      g.entries(a, b) = v;
      g.entries(b, a) = v;
    }
  }
  return g;
}

bool is_independent(const GramMatrix& s, double tol) {
  detail::require(s.entries.square(), "is_independent: matrix must be square");
  return linalg::smallest_singular_value(s.entries) > tol;
}

double default_scan_tolerance(const DeaMode& mode, int dimension) {
  if (mode.exact) return 1e-8;
  // Worst-case standard error of a quarter-scaled interferometric entry is
  // 0.25 / sqrt(shots); keep five of those per matrix dimension.
  const double entry_se = 0.25 / std::sqrt(static_cast<double>(std::max<long long>(1, mode.shots)));
  return 5.0 * entry_se * std::max(1, dimension);
}

DeaReport scan(const ParametricCircuit& circuit, std::span<const double> probe_theta,
               double tol, const DeaMode& mode) {
  validate(circuit);
  detail::require(circuit.num_params >= 1, "scan: circuit has no parameters");
  detail::require(static_cast<int>(probe_theta.size()) == circuit.num_params,
                  "scan: probe theta has wrong length");

  GramEntrySource entry(circuit, probe_theta, mode);

  DeaReport report;
  report.probe_theta.assign(probe_theta.begin(), probe_theta.end());
  report.mode = mode;
  report.tolerance = tol;

  std::vector<int> kept;
  // Gram over kept slots; measured entries are reused, each accepted or
  // rejected candidate adds exactly one new row/column of measurements.
  linalg::Matrix gram(0, 0);

  for (int slot = 0; slot < circuit.num_params; ++slot) {
    const int k = static_cast<int>(kept.size());
    linalg::Matrix candidate(k + 1, k + 1);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) candidate(a, b) = gram(a, b);
    for (int a = 0; a < k; ++a) {
      const double v = entry(kept[static_cast<std::size_t>(a)], slot);
      candidate(a, k) = v;
      candidate(k, a) = v;
    }
    candidate(k, k) = entry(slot, slot);

    const double step_tol = tol > 0.0 ? tol : default_scan_tolerance(mode, k + 1);
    if (is_independent({candidate, GramKind::Jacobian}, step_tol)) {
      kept.push_back(slot);
      gram = candidate;
    } else {
      report.redundant_slots.emplace_back(slot, probe_theta[static_cast<std::size_t>(slot)]);
    }
  }

  report.independent_slots = kept;
  if (tol <= 0.0)
    report.tolerance = default_scan_tolerance(mode, std::max<int>(1, circuit.num_params));
  return report;
}

MinimalityCertificate minimality_certificate(const ParametricCircuit& circuit,
                                             std::span<const std::vector<double>> probes) {
  detail::require(!probes.empty(), "minimality_certificate: need at least one probe");
  std::vector<int> all_slots(static_cast<std::size_t>(circuit.num_params));
  for (int s = 0; s < circuit.num_params; ++s) all_slots[static_cast<std::size_t>(s)] = s;

  MinimalityCertificate cert;
  cert.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& probe : probes) {
    const GramMatrix g = jacobian_gram(circuit, probe, all_slots);
    const auto eig = linalg::symmetric_eigenvalues(g.entries);
    const double smallest = eig.empty() ? 0.0 : eig.front();
    cert.per_probe.push_back(smallest);
    cert.min_eigenvalue = std::min(cert.min_eigenvalue, smallest);
  }
  return cert;
}

}  // namespace qcover
