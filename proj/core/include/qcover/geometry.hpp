#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover {

struct SlotRange {
  double lo = 0.0;
  double hi = 1.0;
};

enum class SampleSource : std::uint8_t { Sobol, Grid, Explicit };

/// Parameter points plus provenance (the seed and source reproduce the set).
struct SampleSet {
  std::vector<std::vector<double>> thetas;
  SampleSource source = SampleSource::Explicit;
  std::uint64_t seed = 0;
  bool scrambled = false;
  std::string circuit_ref;
};

/// First n points of a (scrambled) Sobol' sequence mapped affinely onto the
/// given box. Deterministic per seed.
SampleSet sobol_torus(int n_points, std::span<const SlotRange> slot_ranges, std::uint64_t seed,
                      bool scrambled = true);

/// Real doubling (Re C; Im C): an isometric embedding of the Hilbert sphere
/// into the unit sphere of R^(2^(Q+1)); real dot products there equal the
/// real part of the Hilbert inner product.
std::vector<double> real_embed(const StateVector& state);

/// Phase-invariant Bloch vector (<X>, <Y>, <Z>) of a single-qubit state.
std::array<double, 3> bloch_project(const StateVector& state);

/// Great-circle distance between unit vectors: arccos of the clamped dot.
double orthodromic(std::span<const double> x, std::span<const double> y);

enum class EmbeddingKind : std::uint8_t { RealDoubling, Bloch, GramSchmidt };

const char* embedding_name(EmbeddingKind kind);

/// Unit points in R^D plus the numeric rank of the set.
struct EmbeddedSet {
  std::vector<std::vector<double>> points;
  int ambient_dim = 0;
  int basis_rank = 0;
  EmbeddingKind embedding = EmbeddingKind::RealDoubling;
};

/// Maps k abstract unit vectors into R^r from real inner products alone.
/// The oracle must be symmetric with unit diagonal; entry (i, j) is the real
/// inner product of states i and j. Vector i gets coordinates against the
/// basis points found so far; its residual coordinate sqrt(1 - sum of
/// squares) opens a new basis direction unless the squared residual is at
/// most residual_tol_sq, in which case the point is projected and
/// renormalized. Pairwise dot products of the output reproduce the oracle up
/// to the embedding tolerance.
EmbeddedSet gram_schmidt_embed(const std::function<double(int, int)>& inner_oracle, int count,
                               double residual_tol_sq = 1e-7);

/// Embeds states explicitly (Bloch or real doubling) and computes the
/// numeric rank of the point set via the same inner-product scan.
EmbeddedSet embed_states(std::span<const StateVector> states, EmbeddingKind kind);

struct RankGateResult {
  bool passed = false;
  int rank = 0;
  int required = 0;
  double alpha_lower_bound = 0.0;  // pi/2 when the gate fails, else 0
};

/// Span test: samples confined to a proper subspace certify a covering
/// radius of at least pi/2 (the poles orthogonal to that subspace).
RankGateResult rank_gate(const EmbeddedSet& embedded, int required_dim);

/// Quasi-equidistant points on S^(D-1) from latitude bands spaced d1 apart,
/// with d1 the integer fraction of pi nearest the equal-area target spacing.
/// Supports D = 2 and D = 3; returns approximately n_target points.
std::vector<std::vector<double>> latitude_band_points(int n_target, int dim);

std::string to_csv(const SampleSet& samples);
std::string to_csv(const EmbeddedSet& embedded);

}  // namespace qcover
