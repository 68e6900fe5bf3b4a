#include "qcover/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "qcover/errors.hpp"
#include "qcover/rng.hpp"

namespace qcover {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double length(const Vec3& a) { return std::sqrt(dot(a, a)); }

double arc_from_dot(double d) {
  if (d > 1.0) d = 1.0;
  if (d < -1.0) d = -1.0;
  return std::acos(d);
}

double arc(const Vec3& a, const Vec3& b) { return arc_from_dot(dot(a, b)); }

// Coplanarity threshold for visibility decisions; facet normals are kept
// unit-length, so this is an absolute point-to-plane distance.
constexpr double kPlaneEps = 1e-12;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Incremental convex hull for points in convex position (all on the unit
// sphere). Coplanar insertions (cocircular sample quadruples) are handled by
// treating within-eps facets as visible, which re-stars the planar patch
// from the new point; the duplicate circumcenters this produces are merged
// at the Voronoi level.
class HullBuilder {
 public:
  struct Facet {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // nb[k] is across edge (v[k], v[(k+1)%3])
    Vec3 normal;            // unit, outward
    double offset = 0.0;    // plane: dot(normal, x) = offset
    bool alive = true;
    std::vector<int> conflicts;
  };

  explicit HullBuilder(const std::vector<Vec3>& pts) : pts_(pts) {}

  std::vector<Facet> run() {
    init_tetrahedron();
    for (int p : insertion_order_)
      if (!processed_[static_cast<std::size_t>(p)]) insert(p);
    std::vector<Facet> alive;
    for (Facet& f : facets_)
      if (f.alive) alive.push_back(std::move(f));
    return alive;
  }

 private:
  const Vec3& pt(int i) const { return pts_[static_cast<std::size_t>(i)]; }
  Facet& facet(int i) { return facets_[static_cast<std::size_t>(i)]; }

  double sdist(const Facet& f, int p) const { return dot(f.normal, pt(p)) - f.offset; }

  int make_facet(int a, int b, int c) {
    Facet f;
    f.v = {a, b, c};
    Vec3 n = cross(sub(pt(b), pt(a)), sub(pt(c), pt(a)));
    const double len = length(n);
    if (len < 1e-300) throw NumericError("convex hull: degenerate (collinear) facet");
    n = {n[0] / len, n[1] / len, n[2] / len};
    double off = dot(n, pt(a));
    if (dot(n, interior_) > off) {
      std::swap(f.v[1], f.v[2]);
      n = {-n[0], -n[1], -n[2]};
      off = -off;
    }
    f.normal = n;
    f.offset = off;
    f.nb = {-1, -1, -1};
    facets_.push_back(std::move(f));
    return static_cast<int>(facets_.size() - 1);
  }

  // Pairs up facets that share an edge; entries wait in `open` until their
  // partner arrives. Slots already wired are left alone.
  void wire(std::unordered_map<std::uint64_t, std::pair<int, int>>& open, int fid) {
    Facet& f = facet(fid);
    for (int k = 0; k < 3; ++k) {
      if (f.nb[static_cast<std::size_t>(k)] >= 0) continue;
      const std::uint64_t key =
          edge_key(f.v[static_cast<std::size_t>(k)], f.v[static_cast<std::size_t>((k + 1) % 3)]);
      auto it = open.find(key);
      if (it == open.end()) {
        open.emplace(key, std::make_pair(fid, k));
      } else {
        const auto [gid, gslot] = it->second;
        facet(gid).nb[static_cast<std::size_t>(gslot)] = fid;
        f.nb[static_cast<std::size_t>(k)] = gid;
        open.erase(it);
      }
    }
  }

  void init_tetrahedron() {
    const int n = static_cast<int>(pts_.size());
    int p1 = -1;
    double best = -1.0;
    for (int i = 1; i < n; ++i) {
      const double d = length(sub(pt(i), pt(0)));
      if (d > best) { best = d; p1 = i; }
    }
    if (best < 1e-9) throw NumericError("convex hull: all points coincide");

    const Vec3 e1 = sub(pt(p1), pt(0));
    int p2 = -1;
    best = -1.0;
    for (int i = 1; i < n; ++i) {
      if (i == p1) continue;
      const double d = length(cross(e1, sub(pt(i), pt(0))));
      if (d > best) { best = d; p2 = i; }
    }
    if (best < 1e-9) throw NumericError("convex hull: points are collinear");

    const Vec3 n0 = cross(e1, sub(pt(p2), pt(0)));
    int p3 = -1;
    best = -1.0;
    for (int i = 1; i < n; ++i) {
      if (i == p1 || i == p2) continue;
      const double d = std::abs(dot(n0, sub(pt(i), pt(0))));
      if (d > best) { best = d; p3 = i; }
    }
    if (best < 1e-9 * length(n0))
      throw NumericError("convex hull: points are coplanar (degenerate span)");

    const std::array<int, 4> tet{0, p1, p2, p3};
    interior_ = {0.0, 0.0, 0.0};
    for (int t : tet)
      for (int k = 0; k < 3; ++k)
        interior_[static_cast<std::size_t>(k)] += pt(t)[static_cast<std::size_t>(k)] / 4.0;

    std::unordered_map<std::uint64_t, std::pair<int, int>> open;
    wire(open, make_facet(tet[0], tet[1], tet[2]));
    wire(open, make_facet(tet[0], tet[1], tet[3]));
    wire(open, make_facet(tet[0], tet[2], tet[3]));
    wire(open, make_facet(tet[1], tet[2], tet[3]));
    if (!open.empty()) throw NumericError("convex hull: seed tetrahedron wiring failed");

    processed_.assign(static_cast<std::size_t>(n), false);
    for (int t : tet) processed_[static_cast<std::size_t>(t)] = true;

    // Deterministically shuffled insertion order keeps conflict lists small
    // for structured inputs.
    insertion_order_.resize(static_cast<std::size_t>(n));
    std::iota(insertion_order_.begin(), insertion_order_.end(), 0);
    Rng rng(0x51a7e5u);
    for (int i = n - 1; i > 0; --i)
      std::swap(insertion_order_[static_cast<std::size_t>(i)],
                insertion_order_[static_cast<std::size_t>(
                    rng.below(static_cast<std::uint64_t>(i) + 1))]);

    witness_.assign(static_cast<std::size_t>(n), -1);
    const std::array<int, 4> seed_facets{0, 1, 2, 3};
    for (int i = 0; i < n; ++i)
      if (!processed_[static_cast<std::size_t>(i)]) assign_witness(i, seed_facets);
  }

  void assign_witness(int p, std::span<const int> candidates) {
    int best_f = -1;
    double best_d = -std::numeric_limits<double>::infinity();
    for (int fid : candidates) {
      if (!facet(fid).alive) continue;
      const double d = sdist(facet(fid), p);
      if (d > best_d) { best_d = d; best_f = fid; }
    }
    if (best_f < 0 || best_d < kPlaneEps) {
      // Global fallback; on the sphere every unprocessed point stays outside
      // or on the current hull.
      for (int fid = 0; fid < static_cast<int>(facets_.size()); ++fid) {
        if (!facet(fid).alive) continue;
        const double d = sdist(facet(fid), p);
        if (d > best_d) { best_d = d; best_f = fid; }
      }
      if (best_d < -1e-6)
        throw NumericError("convex hull: point strictly inside hull (degenerate input)");
    }
    witness_[static_cast<std::size_t>(p)] = best_f;
    facet(best_f).conflicts.push_back(p);
  }

  void insert(int p) {
    processed_[static_cast<std::size_t>(p)] = true;
    int seed = witness_[static_cast<std::size_t>(p)];
    if (seed < 0 || !facet(seed).alive) {
      assign_witness(p, {});
      seed = witness_[static_cast<std::size_t>(p)];
    }

    // Visible region: facets the point lies above or within eps of, grown by
    // adjacency from the seed facet (the seed is always included).
    std::unordered_set<int> visible{seed};
    std::vector<int> stack{seed};
    std::unordered_set<int> seen{seed};
    while (!stack.empty()) {
      const int fid = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        const int g = facet(fid).nb[static_cast<std::size_t>(k)];
        if (g < 0 || seen.count(g)) continue;
        seen.insert(g);
        if (sdist(facet(g), p) >= -kPlaneEps) {
          visible.insert(g);
          stack.push_back(g);
        }
      }
    }

    struct HorizonEdge {
      int u, v;
      int outer;  // surviving facet across the edge
      int dead;   // the visible facet that bordered it
    };
    std::vector<HorizonEdge> horizon;
    std::vector<int> orphans;
    for (int fid : visible) {
      Facet& f = facet(fid);
      for (int k = 0; k < 3; ++k) {
        const int g = f.nb[static_cast<std::size_t>(k)];
        if (g < 0) throw NumericError("convex hull: broken adjacency");
        if (!visible.count(g))
          horizon.push_back({f.v[static_cast<std::size_t>(k)],
                             f.v[static_cast<std::size_t>((k + 1) % 3)], g, fid});
      }
      orphans.insert(orphans.end(), f.conflicts.begin(), f.conflicts.end());
      f.conflicts.clear();
    }
    if (horizon.empty()) throw NumericError("convex hull: empty horizon");
    for (int fid : visible) facet(fid).alive = false;

    std::unordered_map<std::uint64_t, std::pair<int, int>> open;
    std::vector<int> created;
    created.reserve(horizon.size());
    for (const HorizonEdge& e : horizon) {
      const int nf = make_facet(p, e.u, e.v);
      created.push_back(nf);
      // Reconnect the surviving outer facet to the new cone facet.
      const std::uint64_t key = edge_key(e.u, e.v);
      Facet& outer = facet(e.outer);
      for (int k = 0; k < 3; ++k) {
        if (outer.nb[static_cast<std::size_t>(k)] != e.dead) continue;
        if (edge_key(outer.v[static_cast<std::size_t>(k)],
                     outer.v[static_cast<std::size_t>((k + 1) % 3)]) != key)
          continue;
        outer.nb[static_cast<std::size_t>(k)] = nf;
        Facet& f = facet(nf);
        for (int j = 0; j < 3; ++j)
          if (edge_key(f.v[static_cast<std::size_t>(j)],
                       f.v[static_cast<std::size_t>((j + 1) % 3)]) == key)
            f.nb[static_cast<std::size_t>(j)] = e.outer;
      }
    }
    for (int nf : created) wire(open, nf);
    for (int nf : created)
      for (int k = 0; k < 3; ++k)
        if (facet(nf).nb[static_cast<std::size_t>(k)] < 0)
          throw NumericError("convex hull: open horizon ring (pathological input)");

    for (int q : orphans) {
      if (q == p || processed_[static_cast<std::size_t>(q)]) continue;
      assign_witness(q, created);
    }
  }

  const std::vector<Vec3>& pts_;
  std::vector<Facet> facets_;
  Vec3 interior_{0.0, 0.0, 0.0};
  std::vector<bool> processed_;
  std::vector<int> witness_;
  std::vector<int> insertion_order_;
};

// Max dot product against a structure-of-arrays sample set; the hot loop of
// every covering-radius sweep.
struct FlatPoints {
  std::vector<double> x, y, z;

  explicit FlatPoints(const std::vector<Vec3>& pts) {
    x.reserve(pts.size());
    y.reserve(pts.size());
    z.reserve(pts.size());
    for (const Vec3& p : pts) {
      x.push_back(p[0]);
      y.push_back(p[1]);
      z.push_back(p[2]);
    }
  }

  double max_dot(const Vec3& v) const {
    double best = -2.0;
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = v[0] * x[j] + v[1] * y[j] + v[2] * z[j];
      if (d > best) best = d;
    }
    return best;
  }
};

}  // namespace

SphericalVoronoi spherical_delaunay(const std::vector<std::array<double, 3>>& points) {
  detail::require(points.size() >= 4, "spherical_delaunay: need at least four points");
  for (const Vec3& p : points)
    detail::require(std::abs(length(p) - 1.0) < 1e-8,
                    "spherical_delaunay: points must be unit vectors");

  // Duplicate detection: lexicographic sort, compare within an x-window.
  {
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return points[static_cast<std::size_t>(a)] < points[static_cast<std::size_t>(b)];
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const Vec3& a = points[static_cast<std::size_t>(order[i])];
        const Vec3& b = points[static_cast<std::size_t>(order[j])];
        if (b[0] - a[0] > 1e-9) break;
        if (length(sub(a, b)) < 1e-9)
          throw InputError("spherical_delaunay: duplicate (or nearly duplicate) points");
      }
    }
  }

  HullBuilder builder(points);
  const auto facets = builder.run();

  SphericalVoronoi sv;
  sv.samples = points;
  sv.delaunay_facets.reserve(facets.size());
  for (const auto& f : facets) sv.delaunay_facets.push_back(f.v);

  // The Voronoi vertex of a Delaunay facet is the pole of the empty cap
  // beyond the facet plane: the outward unit normal.
  std::vector<Vec3> centers(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) centers[i] = facets[i].normal;

  // Merge adjacent facets whose circumcenters coincide (cocircular splits).
  std::vector<int> root(facets.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (root[static_cast<std::size_t>(a)] != a) {
      root[static_cast<std::size_t>(a)] =
          root[static_cast<std::size_t>(root[static_cast<std::size_t>(a)])];
      a = root[static_cast<std::size_t>(a)];
    }
    return a;
  };

  std::unordered_map<std::uint64_t, std::vector<int>> by_edge;
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (int k = 0; k < 3; ++k)
      by_edge[edge_key(facets[i].v[static_cast<std::size_t>(k)],
                       facets[i].v[static_cast<std::size_t>((k + 1) % 3)])]
          .push_back(static_cast<int>(i));
  for (const auto& [key, fs] : by_edge) {
    (void)key;
    for (std::size_t a = 0; a + 1 < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        int ra = find(fs[a]);
        int rb = find(fs[b]);
        if (ra == rb) continue;
        if (length(sub(centers[static_cast<std::size_t>(ra)],
                       centers[static_cast<std::size_t>(rb)])) < 1e-9)
          root[static_cast<std::size_t>(rb)] = ra;
      }
  }

  std::unordered_map<int, int> vertex_of_root;
  sv.facet_vertex.assign(facets.size(), -1);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const int r = find(static_cast<int>(i));
    auto it = vertex_of_root.find(r);
    if (it == vertex_of_root.end()) {
      const int id = static_cast<int>(sv.voronoi_vertices.size());
      sv.voronoi_vertices.push_back(centers[static_cast<std::size_t>(r)]);
      it = vertex_of_root.emplace(r, id).first;
    }
    sv.facet_vertex[i] = it->second;
  }

  sv.region_vertices.assign(points.size(), {});
  sv.vertex_samples.assign(sv.voronoi_vertices.size(), {});
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const int vid = sv.facet_vertex[i];
    for (int corner : facets[i].v) {
      sv.region_vertices[static_cast<std::size_t>(corner)].push_back(vid);
      sv.vertex_samples[static_cast<std::size_t>(vid)].push_back(corner);
    }
  }
  auto dedup = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& v : sv.region_vertices) dedup(v);
  for (auto& v : sv.vertex_samples) dedup(v);
  return sv;
}

void validate(const SphericalVoronoi& sv, double tol) {
  const FlatPoints flat(sv.samples);
  for (std::size_t vid = 0; vid < sv.voronoi_vertices.size(); ++vid) {
    const Vec3& v = sv.voronoi_vertices[vid];
    const auto& defining = sv.vertex_samples[vid];
    if (defining.size() < 3) throw NumericError("voronoi validate: vertex with < 3 samples");
    double dmin = 1e300, dmax = -1e300;
    for (int s : defining) {
      const double d = arc(v, sv.samples[static_cast<std::size_t>(s)]);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (dmax - dmin > tol)
      throw NumericError("voronoi validate: vertex not equidistant to defining samples");
    const double nearest = arc_from_dot(flat.max_dot(v));
    if (nearest < dmin - tol)
      throw NumericError("voronoi validate: empty-circumball violation");
  }
  for (std::size_t s = 0; s < sv.samples.size(); ++s)
    if (sv.region_vertices[s].empty())
      throw NumericError("voronoi validate: sample with empty vertex set");
}

AlphaEstimate alpha_from_voronoi(const SphericalVoronoi& sv) {
  detail::require(!sv.voronoi_vertices.empty(), "alpha_from_voronoi: empty diagram");

  // Reference order: sweep every Voronoi vertex against every sample.
  const FlatPoints flat(sv.samples);
  double worst_dot = 1.0;
  for (const Vec3& v : sv.voronoi_vertices)
    worst_dot = std::min(worst_dot, flat.max_dot(v));
  const double alpha_global = arc_from_dot(worst_dot);

  // Per-region order: farthest own-region vertex per sample.
  double alpha_region = 0.0;
  for (std::size_t s = 0; s < sv.samples.size(); ++s)
    for (int vid : sv.region_vertices[s])
      alpha_region = std::max(alpha_region,
                              arc(sv.samples[s],
                                  sv.voronoi_vertices[static_cast<std::size_t>(vid)]));

  if (std::abs(alpha_global - alpha_region) > 1e-9)
    throw NumericError("alpha_from_voronoi: evaluation orders disagree beyond 1e-9");

  // Mid-point completion. The nearest-sample distance field can also peak in
  // the interior of a Voronoi edge, at the antipode of the corresponding
  // Delaunay edge midpoint; these are its only non-vertex critical points
  // and matter for sparse sample sets. A candidate on edge (a, b) is capped
  // by pi - d(a,b)/2, so it is swept only when that ceiling beats the
  // running maximum, which never happens for dense sets.
  double alpha = alpha_global;
  const double pi = 3.1415926535897932384626433832795;
  std::unordered_set<std::uint64_t> seen_edges;
  for (const auto& f : sv.delaunay_facets) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[static_cast<std::size_t>(k)];
      const int b = f[static_cast<std::size_t>((k + 1) % 3)];
      if (!seen_edges.insert(edge_key(a, b)).second) continue;
      const Vec3& pa = sv.samples[static_cast<std::size_t>(a)];
      const Vec3& pb = sv.samples[static_cast<std::size_t>(b)];
      const Vec3 mid{pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]};
      const double len = length(mid);
      if (len < 1e-12) continue;  // antipodal pair, no unique midpoint
      if (pi - 0.5 * arc(pa, pb) <= alpha) continue;
      const Vec3 candidate{-mid[0] / len, -mid[1] / len, -mid[2] / len};
      alpha = std::max(alpha, arc_from_dot(flat.max_dot(candidate)));
    }
  }

  AlphaEstimate est;
  est.value = alpha;
  est.sample_count = static_cast<int>(sv.samples.size());
  est.method = AlphaEstimate::Method::VoronoiExact;
  est.is_upper_bound_estimate = true;
  return est;
}

AlphaEstimate alpha_monte_carlo(const EmbeddedSet& samples, long long n_test,
                                std::uint64_t seed) {
  detail::require(n_test >= 1, "alpha_monte_carlo: need at least one test point");
  detail::require(!samples.points.empty(), "alpha_monte_carlo: empty sample set");
  const int dim = samples.ambient_dim;
  detail::require(dim >= 1, "alpha_monte_carlo: empty ambient dimension");

  const std::size_t n = samples.points.size();
  std::vector<double> flat(n * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d)
      flat[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d)] =
          samples.points[i][static_cast<std::size_t>(d)];

  Rng rng(mix_seed(seed, 0xa1fa));
  std::vector<double> x(static_cast<std::size_t>(dim));
  double worst_dot = 1.0;
  for (long long t = 0; t < n_test; ++t) {
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (int d = 0; d < dim; ++d) {
        x[static_cast<std::size_t>(d)] = rng.normal();
        nrm += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
      }
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    for (int d = 0; d < dim; ++d) x[static_cast<std::size_t>(d)] /= nrm;

    double best = -2.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = &flat[i * static_cast<std::size_t>(dim)];
      double d = 0.0;
      for (int k = 0; k < dim; ++k) d += row[k] * x[static_cast<std::size_t>(k)];
      if (d > best) best = d;
    }
    if (best < worst_dot) worst_dot = best;
  }

  AlphaEstimate est;
  est.value = arc_from_dot(worst_dot);
  est.sample_count = static_cast<int>(n);
  est.method = AlphaEstimate::Method::MonteCarlo;
  est.test_points = n_test;
  est.seed = seed;
  est.is_upper_bound_estimate = false;
  est.embedding = embedding_name(samples.embedding);
  return est;
}

RateFit fit_rate(std::span<const std::pair<double, double>> series) {
  detail::require(series.size() >= 3, "fit_rate: need at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, alpha] : series) {
    detail::require(n > 0.0 && alpha > 0.0, "fit_rate: values must be positive");
    const double lx = std::log(n);
    const double ly = std::log(alpha);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(series.size());
  const double denom = m * sxx - sx * sx;
  detail::require(std::abs(denom) > 1e-12, "fit_rate: degenerate abscissae");
  RateFit fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.prefactor = std::exp((sy - fit.exponent * sx) / m);
  return fit;
}

}  // namespace qcover
