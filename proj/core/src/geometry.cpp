#include "qcover/geometry.hpp"

#include <cmath>
#include <sstream>

#include "qcover/errors.hpp"
#include "qcover/sobol.hpp"
#include "qcover/special_functions.hpp"

namespace qcover {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 6.283185307179586476925286766559;

void append_number(std::ostringstream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  os << buf;
}
}  // namespace

SampleSet sobol_torus(int n_points, std::span<const SlotRange> slot_ranges, std::uint64_t seed,
                      bool scrambled) {
  detail::require(n_points >= 1, "sobol_torus: need at least one point");
  detail::require(!slot_ranges.empty(), "sobol_torus: need at least one slot range");
  for (const SlotRange& r : slot_ranges)
    detail::require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.hi > r.lo,
                    "sobol_torus: slot ranges must be finite with hi > lo");

  SobolSequence seq(static_cast<int>(slot_ranges.size()), seed, scrambled);
  SampleSet set;
  set.source = SampleSource::Sobol;
  set.seed = seed;
  set.scrambled = scrambled;
  set.thetas.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    std::vector<double> u = seq.next();
    for (std::size_t d = 0; d < slot_ranges.size(); ++d)
      u[d] = slot_ranges[d].lo + (slot_ranges[d].hi - slot_ranges[d].lo) * u[d];
    set.thetas.push_back(std::move(u));
  }
  return set;
}

std::vector<double> real_embed(const StateVector& state) {
  const std::size_t dim = state.amplitudes.size();
  std::vector<double> v(2 * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    v[k] = state.amplitudes[k].real();
    v[dim + k] = state.amplitudes[k].imag();
  }
  return v;
}

std::array<double, 3> bloch_project(const StateVector& state) {
  detail::require(state.amplitudes.size() == 2, "bloch_project: expects a single-qubit state");
  const Complex a = state.amplitudes[0];
  const Complex b = state.amplitudes[1];
  const Complex ab = std::conj(a) * b;
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

double orthodromic(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size(), "orthodromic: dimension mismatch");
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    dot += x[k] * y[k];
    nx += x[k] * x[k];
    ny += y[k] * y[k];
  }
  detail::require(std::abs(nx - 1.0) < 2e-8 && std::abs(ny - 1.0) < 2e-8,
                  "orthodromic: inputs must be unit vectors");
  if (dot > 1.0) dot = 1.0;
  if (dot < -1.0) dot = -1.0;
  return std::acos(dot);
}

const char* embedding_name(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::RealDoubling: return "real_doubling";
    case EmbeddingKind::Bloch: return "bloch";
    default: return "gram_schmidt";
  }
}

EmbeddedSet gram_schmidt_embed(const std::function<double(int, int)>& inner_oracle, int count,
                               double residual_tol_sq) {
  detail::require(count >= 1, "gram_schmidt_embed: need at least one point");
  detail::require(residual_tol_sq >= 0.0, "gram_schmidt_embed: tolerance must be >= 0");

  const double kOracleSlack = 1e-9;
  auto oracle = [&](int i, int j) {
    const double v = inner_oracle(i, j);
    if (v < -1.0 - kOracleSlack || v > 1.0 + kOracleSlack)
      throw NumericError("gram_schmidt_embed: oracle value outside [-1, 1]");
    return v;
  };

  std::vector<int> basis;                       // indices of basis points
  std::vector<std::vector<double>> coords(static_cast<std::size_t>(count));

  for (int k = 0; k < count; ++k) {
    const int b = static_cast<int>(basis.size());
    std::vector<double> c(static_cast<std::size_t>(b) + 1, 0.0);
    double sumsq = 0.0;
    for (int j = 0; j < b; ++j) {
      const auto& vb = coords[static_cast<std::size_t>(basis[static_cast<std::size_t>(j)])];
      double num = oracle(k, basis[static_cast<std::size_t>(j)]);
      for (int i = 0; i < j; ++i) num -= c[static_cast<std::size_t>(i)] * vb[static_cast<std::size_t>(i)];
      const double pivot = vb[static_cast<std::size_t>(j)];
      c[static_cast<std::size_t>(j)] = num / pivot;
      sumsq += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
    }
    double residual_sq = 1.0 - sumsq;
    if (residual_sq < -residual_tol_sq - 1e-9)
      throw NumericError("gram_schmidt_embed: residual below tolerance floor; "
                         "oracle is not a unit-diagonal Gram matrix");
    if (residual_sq > residual_tol_sq) {
      c[static_cast<std::size_t>(b)] = std::sqrt(residual_sq);
      basis.push_back(k);
    } else {
      // Rank-deficient direction: project onto the current basis span and
      // renormalize so every emitted point stays on the unit sphere.
      c.pop_back();
      double nrm = std::sqrt(std::max(sumsq, 1e-300));
      for (double& x : c) x /= nrm;
    }
    coords[static_cast<std::size_t>(k)] = std::move(c);
  }

  EmbeddedSet out;
  out.embedding = EmbeddingKind::GramSchmidt;
  out.basis_rank = static_cast<int>(basis.size());
  out.ambient_dim = out.basis_rank;
  out.points.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    auto& p = out.points[static_cast<std::size_t>(k)];
    p.assign(static_cast<std::size_t>(out.ambient_dim), 0.0);
    const auto& c = coords[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < c.size(); ++j) p[j] = c[j];
  }
  return out;
}

namespace {

int point_set_rank(const std::vector<std::vector<double>>& pts, double residual_tol_sq) {
  auto oracle = [&](int i, int j) {
    const auto& a = pts[static_cast<std::size_t>(i)];
    const auto& b = pts[static_cast<std::size_t>(j)];
    double dot = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
    return dot;
  };
  return gram_schmidt_embed(oracle, static_cast<int>(pts.size()), residual_tol_sq).basis_rank;
}

}  // namespace

EmbeddedSet embed_states(std::span<const StateVector> states, EmbeddingKind kind) {
  detail::require(!states.empty(), "embed_states: empty state list");
  detail::require(kind != EmbeddingKind::GramSchmidt,
                  "embed_states: use gram_schmidt_embed for the oracle embedding");

  EmbeddedSet out;
  out.embedding = kind;
  out.points.reserve(states.size());
  if (kind == EmbeddingKind::Bloch) {
    for (const StateVector& s : states) {
      const auto b = bloch_project(s);
      out.points.push_back({b[0], b[1], b[2]});
    }
    out.ambient_dim = 3;
  } else {
    for (const StateVector& s : states) out.points.push_back(real_embed(s));
    out.ambient_dim = static_cast<int>(out.points.front().size());
  }
  out.basis_rank = point_set_rank(out.points, 1e-7);
  return out;
}

RankGateResult rank_gate(const EmbeddedSet& embedded, int required_dim) {
  detail::require(required_dim >= 1, "rank_gate: required dimension must be >= 1");
  RankGateResult r;
  r.rank = embedded.basis_rank;
  r.required = required_dim;
  r.passed = embedded.basis_rank == required_dim;
  r.alpha_lower_bound = r.passed ? 0.0 : kPi / 2.0;
  return r;
}

std::vector<std::vector<double>> latitude_band_points(int n_target, int dim) {
  detail::require(n_target >= 2, "latitude_band_points: need at least two points");
  if (dim == 2) {
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n_target));
    for (int i = 0; i < n_target; ++i) {
      const double a = kTwoPi * i / n_target;
      pts.push_back({std::cos(a), std::sin(a)});
    }
    return pts;
  }
  detail::require(dim == 3, "latitude_band_points: only D = 2 and D = 3 are supported");

  // Equal-area target spacing, snapped to an integer fraction of pi.
  const double ideal =
      std::pow(sphere_surface_area(3) / static_cast<double>(n_target), 0.5);
  const int bands = std::max(1, static_cast<int>(std::llround(kPi / ideal)));
  const double d1 = kPi / bands;

  std::vector<std::vector<double>> pts;
  pts.push_back({0.0, 0.0, 1.0});
  for (int j = 1; j < bands; ++j) {
    const double phi = j * d1;
    const double circ = kTwoPi * std::sin(phi);
    const int k = std::max(1, static_cast<int>(std::llround(circ / d1)));
    for (int i = 0; i < k; ++i) {
      const double lam = kTwoPi * i / k;
      pts.push_back({std::sin(phi) * std::cos(lam), std::sin(phi) * std::sin(lam),
                     std::cos(phi)});
    }
  }
  pts.push_back({0.0, 0.0, -1.0});
  return pts;
}

std::string to_csv(const SampleSet& samples) {
  std::ostringstream os;
  os << "# source=";
  switch (samples.source) {
    case SampleSource::Sobol:
      os << "sobol seed=" << samples.seed << " scrambled=" << (samples.scrambled ? 1 : 0);
      break;
    case SampleSource::Grid: os << "grid"; break;
    case SampleSource::Explicit: os << "explicit"; break;
  }
  if (!samples.circuit_ref.empty()) os << " circuit=" << samples.circuit_ref;
  os << '\n';
  for (const auto& theta : samples.thetas) {
    for (std::size_t d = 0; d < theta.size(); ++d) {
      if (d) os << ',';
      append_number(os, theta[d]);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_csv(const EmbeddedSet& embedded) {
  std::ostringstream os;
  os << "# D=" << embedded.ambient_dim << " r=" << embedded.basis_rank
     << " embedding=" << embedding_name(embedded.embedding) << '\n';
  for (const auto& p : embedded.points) {
    for (std::size_t d = 0; d < p.size(); ++d) {
      if (d) os << ',';
      append_number(os, p[d]);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qcover
