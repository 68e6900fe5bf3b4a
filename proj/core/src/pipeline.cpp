#include "qcover/pipeline.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qcover/errors.hpp"
#include "qcover/rng.hpp"
#include "qcover/special_functions.hpp"

namespace qcover {

using nlohmann::json;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

std::vector<SlotRange> sampling_box(const ParametricCircuit& circuit,
                                    const AlphaRunConfig& config) {
  if (config.ranges) {
    detail::require(static_cast<int>(config.ranges->size()) == circuit.num_params,
                    "alpha pipeline: range list does not match parameter count");
    return *config.ranges;
  }
  std::vector<SlotRange> box;
  box.reserve(static_cast<std::size_t>(circuit.num_params));
  const double scale = config.extend_periods ? 2.0 : 1.0;
  for (int s = 0; s < circuit.num_params; ++s)
    box.push_back({0.0, scale * circuit.period(s)});
  return box;
}

const char* method_name(AlphaEstimate::Method m) {
  return m == AlphaEstimate::Method::VoronoiExact ? "voronoi_exact" : "monte_carlo";
}

}  // namespace

PipelineSamples pipeline_samples(const ParametricCircuit& circuit,
                                 const AlphaRunConfig& config) {
  validate(circuit);
  detail::require(config.samples >= 1, "alpha pipeline: need at least one sample");

  PipelineSamples out;
  out.thetas = sobol_torus(config.samples, sampling_box(circuit, config), config.seed, true);
  out.states.reserve(out.thetas.thetas.size());
  for (const auto& theta : out.thetas.thetas) out.states.push_back(evaluate(circuit, theta));

  const bool use_bloch = config.embedding == EmbeddingChoice::Bloch ||
                         (config.embedding == EmbeddingChoice::Auto && circuit.num_qubits == 1);
  detail::require(!(use_bloch && circuit.num_qubits != 1),
                  "alpha pipeline: Bloch embedding needs a single-qubit circuit");
  if (use_bloch) {
    out.embedded = embed_states(out.states, EmbeddingKind::Bloch);
    out.required_rank = 3;
  } else {
    // Real doubling reduced through the inner-product scan; coordinates come
    // from real inner products alone.
    auto oracle = [&](int i, int j) {
      return real_inner(out.states[static_cast<std::size_t>(i)],
                        out.states[static_cast<std::size_t>(j)]);
    };
    out.embedded = gram_schmidt_embed(oracle, static_cast<int>(out.states.size()));
    out.required_rank = 1 << (circuit.num_qubits + 1);
  }
  return out;
}

AlphaRunReport run_alpha_estimate(const ParametricCircuit& circuit,
                                  const AlphaRunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();

  AlphaRunReport report;
  report.config = config;

  PipelineSamples samples = pipeline_samples(circuit, config);
  report.embedding = embedding_name(samples.embedded.embedding);
  report.ambient_dim = samples.embedded.ambient_dim;
  report.required_rank = samples.required_rank;

  const RankGateResult gate = rank_gate(samples.embedded, samples.required_rank);
  report.rank = gate.rank;
  report.rank_gate_passed = gate.passed;
  report.alpha_lower_bound = gate.alpha_lower_bound;

  if (gate.passed) {
    const bool want_voronoi =
        config.method == AlphaMethodChoice::Voronoi ||
        (config.method == AlphaMethodChoice::Auto && samples.embedded.ambient_dim == 3 &&
         samples.embedded.points.size() >= 4);
    detail::require(!(config.method == AlphaMethodChoice::Voronoi &&
                      samples.embedded.ambient_dim != 3),
                    "alpha pipeline: exact Voronoi requires a 3-dimensional embedding");
    if (want_voronoi) {
      std::vector<std::array<double, 3>> pts;
      pts.reserve(samples.embedded.points.size());
      for (const auto& p : samples.embedded.points) pts.push_back({p[0], p[1], p[2]});
      AlphaEstimate est = alpha_from_voronoi(spherical_delaunay(pts));
      est.embedding = report.embedding;
      report.alpha = est;
    } else {
      report.alpha =
          alpha_monte_carlo(samples.embedded, config.mc_test_points, mix_seed(config.seed, 77));
    }
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

ConvergenceReport run_convergence(const ParametricCircuit& circuit,
                                  const std::vector<int>& n_list, const AlphaRunConfig& base) {
  detail::require(!n_list.empty(), "convergence: empty N list");
  ConvergenceReport out;
  out.seed = base.seed;

  std::vector<std::pair<double, double>> series;
  for (int n : n_list) {
    AlphaRunConfig cfg = base;
    cfg.samples = n;
    cfg.seed = mix_seed(base.seed, static_cast<std::uint64_t>(n));
    const AlphaRunReport report = run_alpha_estimate(circuit, cfg);
    detail::require(report.rank_gate_passed && report.alpha.has_value(),
                    "convergence: rank gate failed; covering radius floor is pi/2");
    out.embedding = report.embedding;
    ConvergenceRow row;
    row.n = n;
    row.alpha = report.alpha->value;
    row.alpha_opt = alpha_opt(static_cast<double>(n), report.ambient_dim);
    out.rows.push_back(row);
    series.emplace_back(static_cast<double>(n), row.alpha);
  }
  if (series.size() >= 3) out.fit = fit_rate(series);
  return out;
}

ParametricCircuit full_bloch_circuit() {
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 2;
  c.param_periods = {2.0 * kPi, 2.0 * kPi};
  c.gates.push_back(axis_rotation_gate(Axis::Y, 0, 0));
  c.gates.push_back(axis_rotation_gate(Axis::Z, 0, 1));
  validate(c);
  return c;
}

ConvergenceReport run_bloch_study(const std::vector<int>& n_list, std::uint64_t seed) {
  const ParametricCircuit circuit = full_bloch_circuit();
  AlphaRunConfig cfg;
  cfg.seed = seed;
  cfg.embedding = EmbeddingChoice::Bloch;
  cfg.method = AlphaMethodChoice::Voronoi;
  // The circuit double-covers the sphere in theta_1; restricting it to
  // [0, pi] samples each state once.
  cfg.ranges = std::vector<SlotRange>{{0.0, kPi}, {0.0, 2.0 * kPi}};
  return run_convergence(circuit, n_list, cfg);
}

std::vector<SpiralRow> run_spiral_study(const std::vector<int>& turns_list, int samples,
                                        std::uint64_t seed) {
  detail::require(!turns_list.empty(), "spiral study: empty winding list");
  std::vector<SpiralRow> rows;
  for (int n : turns_list) {
    const ParametricCircuit circuit = spiral_circuit(n);
    SpiralRow row;
    row.turns = n;
    const VolumeReport vol =
        volume(circuit, QuadratureSpec::Trapezoid(4096), MetricGauge::Bloch);
    row.volume = vol.volume;
    row.bound = vol.alpha_lower_bound;

    AlphaRunConfig cfg;
    cfg.samples = samples;
    cfg.seed = mix_seed(seed, static_cast<std::uint64_t>(n));
    cfg.embedding = EmbeddingChoice::Bloch;
    cfg.method = AlphaMethodChoice::Voronoi;
    // The spiral curve lives on theta in [0, pi]; the second half period
    // retraces its antipodal image, which is not part of the curve whose
    // covering radius the volume relation bounds.
    cfg.ranges = std::vector<SlotRange>{{0.0, kPi}};
    const AlphaRunReport report = run_alpha_estimate(circuit, cfg);
    detail::require(report.rank_gate_passed && report.alpha.has_value(),
                    "spiral study: rank gate failed (winding number 0?)");
    row.alpha_voronoi = report.alpha->value;
    rows.push_back(row);
  }
  return rows;
}

InitGuessExport export_init_guesses(const ParametricCircuit& circuit,
                                    const AlphaRunConfig& config,
                                    const std::vector<double>* cost_diagonal,
                                    double cost_band) {
  InitGuessExport out;
  PipelineSamples samples = pipeline_samples(circuit, config);

  if (samples.states.size() == 1) {
    out.alpha = kPi;
    out.degenerate = true;
  } else {
    const AlphaRunReport report = run_alpha_estimate(circuit, config);
    out.alpha = report.rank_gate_passed && report.alpha ? report.alpha->value
                                                        : report.alpha_lower_bound;
    if (!report.rank_gate_passed) out.degenerate = true;
  }

  std::vector<double> costs;
  double cost_min = 0.0;
  if (cost_diagonal) {
    detail::require(cost_diagonal->size() == (std::size_t{1} << circuit.num_qubits),
                    "export: diagonal observable has wrong dimension");
    costs.reserve(samples.states.size());
    cost_min = std::numeric_limits<double>::infinity();
    for (const StateVector& s : samples.states) {
      double c = 0.0;
      for (std::size_t k = 0; k < s.amplitudes.size(); ++k)
        c += (*cost_diagonal)[k] * std::norm(s.amplitudes[k]);
      costs.push_back(c);
      cost_min = std::min(cost_min, c);
    }
  }

  std::ostringstream csv;
  csv << "# initialization bank: every state is within alpha="
      << format_number(out.alpha) << " of some guess"
      << (out.degenerate ? " (degenerate)" : "") << '\n';
  csv << "# seed=" << config.seed << " samples=" << samples.states.size()
      << " embedding=" << embedding_name(samples.embedded.embedding) << '\n';

  json rows = json::array();
  int kept = 0;
  for (std::size_t i = 0; i < samples.states.size(); ++i) {
    if (cost_diagonal && costs[i] > cost_min + cost_band) continue;
    ++kept;
    json row;
    row["theta"] = samples.thetas.thetas[i];
    row["embedded"] = samples.embedded.points[i];
    if (cost_diagonal) row["cost"] = costs[i];
    rows.push_back(row);

    for (std::size_t d = 0; d < samples.thetas.thetas[i].size(); ++d) {
      if (d) csv << ',';
      csv << format_number(samples.thetas.thetas[i][d]);
    }
    for (double v : samples.embedded.points[i]) csv << ',' << format_number(v);
    if (cost_diagonal) csv << ',' << format_number(costs[i]);
    csv << '\n';
  }
  out.kept = kept;
  out.csv = csv.str();

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["alpha"] = out.alpha;
  j["degenerate"] = out.degenerate;
  j["seed"] = config.seed;
  j["samples"] = samples.states.size();
  j["kept"] = kept;
  j["embedding"] = embedding_name(samples.embedded.embedding);
  j["guesses"] = rows;
  out.json = j.dump(2);
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_json(const AlphaRunReport& report) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {
      {"samples", report.config.samples},
      {"seed", report.config.seed},
      {"mc_test_points", report.config.mc_test_points},
      {"extend_periods", report.config.extend_periods},
  };
  if (!report.circuit_ref.empty()) j["circuit"] = report.circuit_ref;
  j["embedding"] = report.embedding;
  j["ambient_dim"] = report.ambient_dim;
  j["rank_gate"] = {
      {"passed", report.rank_gate_passed},
      {"rank", report.rank},
      {"required", report.required_rank},
  };
  if (!report.rank_gate_passed) {
    j["alpha_lower_bound"] = report.alpha_lower_bound;
    j["alpha_lower_bound_note"] = "samples span a proper subspace";
  }
  if (report.alpha) {
    j["alpha"] = report.alpha->value;
    j["method"] = method_name(report.alpha->method);
    if (report.alpha->method == AlphaEstimate::Method::MonteCarlo) {
      j["mc_test_points"] = report.alpha->test_points;
      j["is_upper_bound_estimate"] = report.alpha->is_upper_bound_estimate;
    }
  }
  j["runtime_seconds"] = report.runtime_seconds;
  return j.dump(2);
}

std::string to_json(const DeaReport& report, const std::string& circuit_ref) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  if (!circuit_ref.empty()) j["circuit"] = circuit_ref;
  j["independent_slots"] = report.independent_slots;
  json red = json::array();
  for (const auto& [slot, value] : report.redundant_slots)
    red.push_back({{"slot", slot}, {"frozen_value", value}});
  j["redundant_slots"] = red;
  j["probe_theta"] = report.probe_theta;
  j["tolerance"] = report.tolerance;
  j["mode"] = report.mode.exact
                  ? json{{"kind", "exact"}}
                  : json{{"kind", "shots"}, {"shots", report.mode.shots},
                         {"seed", report.mode.seed}};
  return j.dump(2);
}

std::string dea_table(const DeaReport& report) {
  std::ostringstream os;
  os << "slot  status      frozen_value\n";
  std::size_t ri = 0;
  const int total = static_cast<int>(report.independent_slots.size() +
                                     report.redundant_slots.size());
  for (int s = 0; s < total; ++s) {
    const bool redundant = ri < report.redundant_slots.size() &&
                           report.redundant_slots[ri].first == s;
    os << s << (s < 10 ? "     " : "    ");
    if (redundant) {
      os << "redundant   " << format_number(report.redundant_slots[ri].second);
      ++ri;
    } else {
      os << "independent -";
    }
    os << '\n';
  }
  os << "independent: " << report.independent_slots.size()
     << ", redundant: " << report.redundant_slots.size()
     << ", tolerance: " << format_number(report.tolerance) << '\n';
  return os.str();
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "# embedding=" << report.embedding << " seed=" << report.seed << '\n';
  os << "# fit: alpha ~ " << format_number(report.fit.prefactor) << " * N^("
     << format_number(report.fit.exponent) << ")\n";
  os << "N,alpha,alpha_opt\n";
  for (const ConvergenceRow& row : report.rows)
    os << row.n << ',' << format_number(row.alpha) << ',' << format_number(row.alpha_opt)
       << '\n';
  return os.str();
}

std::string to_csv(const std::vector<SpiralRow>& rows) {
  std::ostringstream os;
  os << "n,volume,bound,alpha_voronoi\n";
  for (const SpiralRow& row : rows)
    os << row.turns << ',' << format_number(row.volume) << ',' << format_number(row.bound)
       << ',' << format_number(row.alpha_voronoi) << '\n';
  return os.str();
}

}  // namespace qcover
