#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcover/circuit.hpp"
#include "qcover/dea.hpp"
#include "qcover/geometry.hpp"
#include "qcover/volume.hpp"
#include "qcover/voronoi.hpp"

namespace qcover {

/// Schema version stamped into every JSON report.
inline constexpr int kReportSchemaVersion = 1;

enum class EmbeddingChoice : std::uint8_t { Auto, Bloch, Real };
enum class AlphaMethodChoice : std::uint8_t { Auto, Voronoi, MonteCarlo };

struct AlphaRunConfig {
  int samples = 1024;
  std::uint64_t seed = 0;
  EmbeddingChoice embedding = EmbeddingChoice::Auto;
  AlphaMethodChoice method = AlphaMethodChoice::Auto;
  long long mc_test_points = 100000;
  bool extend_periods = false;  // sample theta over [0, 2*period) per slot
  std::optional<std::vector<SlotRange>> ranges;  // overrides the period box
};

struct AlphaRunReport {
  AlphaRunConfig config;
  std::string circuit_ref;
  std::string embedding;
  int ambient_dim = 0;
  int rank = 0;
  int required_rank = 0;
  bool rank_gate_passed = false;
  double alpha_lower_bound = 0.0;           // pi/2 on gate failure
  std::optional<AlphaEstimate> alpha;       // present when the gate passed
  double runtime_seconds = 0.0;
};

/// Full two-step estimation: sample the parameter box with scrambled Sobol'
/// points, push through the circuit, embed (Bloch for one qubit, real
/// doubling + inner-product reduction otherwise), run the rank gate, then
/// either stop with the pi/2 floor or measure the covering radius (exact
/// Voronoi on S^2, Monte Carlo fallback in higher dimension).
AlphaRunReport run_alpha_estimate(const ParametricCircuit& circuit, const AlphaRunConfig& config);

/// The evaluated sample states and their embedding, as used by
/// run_alpha_estimate; exposed for export and tests.
struct PipelineSamples {
  SampleSet thetas;
  std::vector<StateVector> states;
  EmbeddedSet embedded;
  int required_rank = 0;
};

PipelineSamples pipeline_samples(const ParametricCircuit& circuit, const AlphaRunConfig& config);

struct ConvergenceRow {
  int n = 0;
  double alpha = 0.0;
  double alpha_opt = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  RateFit fit;
  std::string embedding;
  std::uint64_t seed = 0;
};

ConvergenceReport run_convergence(const ParametricCircuit& circuit,
                                  const std::vector<int>& n_list, const AlphaRunConfig& base);

/// The two-parameter full-sphere demo circuit R_Z(theta_2) R_Y(theta_1)|0>,
/// sampled over [0, pi] x [0, 2 pi).
ParametricCircuit full_bloch_circuit();

ConvergenceReport run_bloch_study(const std::vector<int>& n_list, std::uint64_t seed);

struct SpiralRow {
  int turns = 0;
  double volume = 0.0;
  double bound = 0.0;         // pi / E(-4 n^2) from the volume relation
  double alpha_voronoi = 0.0;
};

std::vector<SpiralRow> run_spiral_study(const std::vector<int>& turns_list, int samples,
                                        std::uint64_t seed);

struct InitGuessExport {
  std::string csv;
  std::string json;
  double alpha = 0.0;
  int kept = 0;
  bool degenerate = false;  // single-sample covering radius pi
};

/// Initialization bank for downstream variational optimization: every state
/// is within alpha of some exported guess. An optional diagonal observable
/// keeps only guesses whose expectation is within `cost_band` of the best.
InitGuessExport export_init_guesses(const ParametricCircuit& circuit,
                                    const AlphaRunConfig& config,
                                    const std::vector<double>* cost_diagonal = nullptr,
                                    double cost_band = 0.0);

std::string to_json(const AlphaRunReport& report);
std::string to_json(const DeaReport& report, const std::string& circuit_ref);
std::string dea_table(const DeaReport& report);
std::string to_csv(const ConvergenceReport& report);
std::string to_csv(const std::vector<SpiralRow>& rows);

/// Formats a double with 12 significant digits (report reproducibility).
std::string format_number(double v);

}  // namespace qcover
