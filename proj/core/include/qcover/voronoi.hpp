#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qcover/geometry.hpp"

namespace qcover {

/// Spherical Delaunay/Voronoi structure of a point set on S^2. Delaunay
/// facets are the faces of the 3D convex hull; Voronoi vertices are the
/// unit-normalized facet circumcenters on the empty side, with facets whose
/// circumcenters coincide (cocircular sample quadruples) merged into one
/// vertex.
struct SphericalVoronoi {
  std::vector<std::array<double, 3>> samples;
  std::vector<std::array<int, 3>> delaunay_facets;
  std::vector<int> facet_vertex;                    // facet -> merged vertex id
  std::vector<std::array<double, 3>> voronoi_vertices;
  std::vector<std::vector<int>> region_vertices;    // per sample, vertex ids
  std::vector<std::vector<int>> vertex_samples;     // per vertex, defining samples
};

/// Builds the diagram by incremental convex hull. Requires at least four
/// points spanning R^3 (run rank_gate first); duplicate points are an error.
SphericalVoronoi spherical_delaunay(const std::vector<std::array<double, 3>>& points);

/// Checks circumcenter equidistance and the empty-circumball property within
/// tol; throws NumericError on violation.
void validate(const SphericalVoronoi& sv, double tol = 1e-9);

struct AlphaEstimate {
  enum class Method : std::uint8_t { VoronoiExact, MonteCarlo };
  double value = 0.0;
  int sample_count = 0;
  Method method = Method::VoronoiExact;
  long long test_points = 0;  // Monte Carlo only
  std::uint64_t seed = 0;
  bool is_upper_bound_estimate = true;
  std::string embedding;
};

/// Worst-case best-approximation error of the sample set: the covering
/// radius max over Voronoi vertices of the distance to the nearest sample.
/// Both evaluation orders (global vertex sweep and per-region maxima) are
/// computed and must agree to 1e-9. Edge-interior maxima of the distance
/// field (antipodes of Delaunay edge midpoints) are included as well, which
/// only matters for sparse sample sets.
AlphaEstimate alpha_from_voronoi(const SphericalVoronoi& sv);

/// Monte-Carlo covering radius on S^(D-1): max over uniform random test
/// points of the distance to the nearest sample. Always a lower estimate of
/// the true supremum; works in any dimension.
AlphaEstimate alpha_monte_carlo(const EmbeddedSet& samples, long long n_test,
                                std::uint64_t seed);

struct RateFit {
  double prefactor = 0.0;  // c in alpha ~ c * N^rho
  double exponent = 0.0;   // rho
};

/// Least-squares fit of log(alpha) against log(N).
RateFit fit_rate(std::span<const std::pair<double, double>> series);

}  // namespace qcover
