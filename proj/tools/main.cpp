// qcover command line tool: expressivity analysis, circuit construction, and
// covering-radius estimation for parametric quantum circuits.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcover/circuit_io.hpp"
#include "qcover/dea.hpp"
#include "qcover/errors.hpp"
#include "qcover/mmec.hpp"
#include "qcover/pipeline.hpp"
#include "qcover/rng.hpp"
#include "qcover/shots.hpp"
#include "qcover/volume.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string output_path(const std::string& name) {
  if (name.empty() || name.find('/') != std::string::npos) return name;
  const char* dir = std::getenv("QCOVER_OUT_DIR");
  if (!dir || !*dir) return name;
  return std::string(dir) + "/" + name;
}

// Reports are composed in memory and written atomically: a failed run leaves
// no partial file behind.
void write_file(const std::string& path, const std::string& text) {
  const std::string full = output_path(path);
  std::ofstream out(full);
  if (!out) throw qcover::InputError("cannot open output file: " + full);
  out << text;
  if (!out) throw qcover::InputError("write failed: " + full);
}

std::vector<double> parse_theta_arg(const std::string& arg, const qcover::ParametricCircuit& c) {
  if (arg.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::stoull(arg.substr(7));
    qcover::Rng rng(qcover::mix_seed(seed, 0x7e7a));
    std::vector<double> theta(static_cast<std::size_t>(c.num_params));
    for (int s = 0; s < c.num_params; ++s)
      theta[static_cast<std::size_t>(s)] = rng.uniform(0.0, c.period(s));
    return theta;
  }
  std::ifstream in(arg);
  if (!in) throw qcover::InputError("cannot open theta file: " + arg);
  nlohmann::json j;
  try {
    in >> j;
    return j.get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw qcover::InputError(std::string("theta file must be a JSON array: ") + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& arg) {
  std::vector<int> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw qcover::InputError("empty integer list");
  return out;
}

qcover::DeaMode parse_mode(const std::string& arg) {
  if (arg == "exact") return qcover::DeaMode::Exact();
  if (arg.rfind("shots:", 0) == 0) {
    const std::string rest = arg.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw qcover::InputError("shot mode syntax: shots:<count>:<seed>");
    return qcover::DeaMode::Shots(std::stoll(rest.substr(0, colon)),
                                  std::stoull(rest.substr(colon + 1)));
  }
  throw qcover::InputError("mode must be 'exact' or 'shots:<count>:<seed>'");
}

int run(int argc, char** argv) {
  CLI::App app{"Expressivity and covering-radius analysis for parametric quantum circuits"};
  app.require_subcommand(1);

  // ---- analyze-dea ----------------------------------------------------
  auto* dea_cmd = app.add_subcommand("analyze-dea", "Identify redundant circuit parameters");
  std::string dea_circuit, dea_theta = "random:0", dea_mode = "exact", dea_out;
  double dea_tol = 0.0;
  dea_cmd->add_option("--circuit", dea_circuit, "circuit JSON file")->required();
  dea_cmd->add_option("--theta", dea_theta, "theta JSON file or random:<seed>");
  dea_cmd->add_option("--tol", dea_tol, "invertibility tolerance (<=0: default)");
  dea_cmd->add_option("--mode", dea_mode, "exact | shots:<count>:<seed>");
  dea_cmd->add_option("--out", dea_out, "write DeaReport JSON here");

  // ---- build-mmec ------------------------------------------------------
  auto* mmec_cmd = app.add_subcommand("build-mmec", "Construct a minimal maximally expressive circuit");
  int mmec_qubits = 1;
  std::string mmec_phase = "global", mmec_compile = "native", mmec_out;
  mmec_cmd->add_option("--qubits", mmec_qubits, "qubit count")->required();
  mmec_cmd->add_option("--phase", mmec_phase, "global | free");
  mmec_cmd->add_option("--compile", mmec_compile, "native | cnot");
  mmec_cmd->add_option("--out", mmec_out, "circuit JSON output")->required();

  // ---- estimate-alpha --------------------------------------------------
  auto* alpha_cmd = app.add_subcommand("estimate-alpha", "Covering radius of the circuit image");
  std::string alpha_circuit, alpha_embedding = "auto", alpha_method = "auto", alpha_out;
  int alpha_samples = 1024;
  std::uint64_t alpha_seed = 0;
  bool alpha_extend = false;
  alpha_cmd->add_option("--circuit", alpha_circuit, "circuit JSON file")->required();
  alpha_cmd->add_option("--samples", alpha_samples, "Sobol' sample count");
  alpha_cmd->add_option("--seed", alpha_seed, "scramble seed");
  alpha_cmd->add_option("--embedding", alpha_embedding, "auto | bloch | real");
  alpha_cmd->add_option("--method", alpha_method, "auto | voronoi | mc:<test points>");
  alpha_cmd->add_flag("--extend-periods", alpha_extend, "sample theta over twice each period");
  alpha_cmd->add_option("--out", alpha_out, "write report JSON here");

  // ---- convergence -----------------------------------------------------
  auto* conv_cmd = app.add_subcommand("convergence", "alpha(N) series with rate fit");
  std::string conv_circuit, conv_nlist = "64,128,256,512,1024", conv_out,
              conv_embedding = "auto";
  std::uint64_t conv_seed = 0;
  conv_cmd->add_option("--circuit", conv_circuit, "circuit JSON file")->required();
  conv_cmd->add_option("--n-list", conv_nlist, "comma-separated sample counts");
  conv_cmd->add_option("--seed", conv_seed, "scramble seed");
  conv_cmd->add_option("--embedding", conv_embedding, "auto | bloch | real");
  conv_cmd->add_option("--out", conv_out, "write CSV here");

  // ---- volume ------------------------------------------------------------
  auto* vol_cmd = app.add_subcommand("volume", "Riemannian volume of the circuit image");
  std::string vol_circuit, vol_quad = "trap:4096", vol_gauge = "hilbert", vol_out;
  vol_cmd->add_option("--circuit", vol_circuit, "circuit JSON file")->required();
  vol_cmd->add_option("--quad", vol_quad, "trap:<K> | qmc:<N>:<seed>");
  vol_cmd->add_option("--gauge", vol_gauge, "hilbert | bloch");
  vol_cmd->add_option("--out", vol_out, "write report JSON here");

  // ---- spiral-demo -------------------------------------------------------
  auto* spiral_cmd = app.add_subcommand("spiral-demo",
                                        "Volume bound vs Voronoi alpha for spiral circuits");
  std::string spiral_nlist = "1,2,4,8", spiral_out;
  int spiral_samples = 32768;
  std::uint64_t spiral_seed = 0;
  spiral_cmd->add_option("--n-list", spiral_nlist, "winding numbers");
  spiral_cmd->add_option("--samples", spiral_samples, "Sobol' samples per spiral");
  spiral_cmd->add_option("--seed", spiral_seed, "scramble seed");
  spiral_cmd->add_option("--out", spiral_out, "write CSV here");

  // ---- bloch-demo ----------------------------------------------------------
  auto* bloch_cmd = app.add_subcommand("bloch-demo",
                                       "alpha(N) convergence for the full Bloch sphere circuit");
  std::string bloch_nlist = "64,128,256,512,1024,2048,4096,8192", bloch_out;
  std::uint64_t bloch_seed = 0;
  bloch_cmd->add_option("--n-list", bloch_nlist, "sample counts");
  bloch_cmd->add_option("--seed", bloch_seed, "scramble seed");
  bloch_cmd->add_option("--out", bloch_out, "write CSV here");

  // ---- export-init-guesses ---------------------------------------------
  auto* export_cmd = app.add_subcommand("export-init-guesses",
                                        "Emit sample parameters as optimizer initial guesses");
  std::string export_circuit, export_out = "init_guesses.csv", export_cost, export_json;
  int export_samples = 1024;
  std::uint64_t export_seed = 0;
  double export_band = 0.0;
  export_cmd->add_option("--circuit", export_circuit, "circuit JSON file")->required();
  export_cmd->add_option("--samples", export_samples, "Sobol' sample count");
  export_cmd->add_option("--seed", export_seed, "scramble seed");
  export_cmd->add_option("--out", export_out, "CSV output path");
  export_cmd->add_option("--json-out", export_json, "JSON output path");
  export_cmd->add_option("--cost-diag", export_cost,
                         "JSON file with a diagonal observable; keeps near-optimal guesses");
  export_cmd->add_option("--cost-band", export_band, "cost acceptance band above the minimum");

  // ---- interference ----------------------------------------------------
  auto* intf_cmd = app.add_subcommand("interference",
                                      "Ancilla interferometry estimates of Re<gamma_m, gamma_n>");
  std::string intf_circuit, intf_theta = "random:0", intf_pair = "all", intf_out;
  long long intf_shots = 10000;
  std::uint64_t intf_seed = 0;
  intf_cmd->add_option("--circuit", intf_circuit, "circuit JSON file")->required();
  intf_cmd->add_option("--theta", intf_theta, "theta JSON file or random:<seed>");
  intf_cmd->add_option("--pair", intf_pair, "m,n | all");
  intf_cmd->add_option("--shots", intf_shots, "shots per pair");
  intf_cmd->add_option("--seed", intf_seed, "rng seed");
  intf_cmd->add_option("--out", intf_out, "write CSV here");

  CLI11_PARSE(app, argc, argv);

  if (dea_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(dea_circuit);
    const auto theta = parse_theta_arg(dea_theta, circuit);
    const auto report = qcover::scan(circuit, theta, dea_tol, parse_mode(dea_mode));
    std::cout << qcover::dea_table(report);
    if (!dea_out.empty()) write_file(dea_out, qcover::to_json(report, dea_circuit));
    return kExitOk;
  }

  if (mmec_cmd->parsed()) {
    qcover::MmecSpec spec;
    spec.num_qubits = mmec_qubits;
    if (mmec_phase == "global") spec.phase_mode = qcover::PhaseMode::WithGlobalPhase;
    else if (mmec_phase == "free") spec.phase_mode = qcover::PhaseMode::PhaseFree;
    else throw qcover::InputError("--phase must be 'global' or 'free'");
    if (mmec_compile == "native") spec.compile_mode = qcover::CompileMode::NativeControls;
    else if (mmec_compile == "cnot") spec.compile_mode = qcover::CompileMode::CnotBasis;
    else throw qcover::InputError("--compile must be 'native' or 'cnot'");
    const auto circuit = qcover::build(spec);
    write_file(mmec_out, qcover::circuit_to_json(circuit) + "\n");
    std::cout << "wrote " << mmec_out << " (" << circuit.num_params << " parameters, "
              << circuit.gates.size() << " gates)\n";
    return kExitOk;
  }

  if (alpha_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(alpha_circuit);
    qcover::AlphaRunConfig cfg;
    cfg.samples = alpha_samples;
    cfg.seed = alpha_seed;
    cfg.extend_periods = alpha_extend;
    if (alpha_embedding == "auto") cfg.embedding = qcover::EmbeddingChoice::Auto;
    else if (alpha_embedding == "bloch") cfg.embedding = qcover::EmbeddingChoice::Bloch;
    else if (alpha_embedding == "real") cfg.embedding = qcover::EmbeddingChoice::Real;
    else throw qcover::InputError("--embedding must be auto, bloch, or real");
    if (alpha_method == "auto") cfg.method = qcover::AlphaMethodChoice::Auto;
    else if (alpha_method == "voronoi") cfg.method = qcover::AlphaMethodChoice::Voronoi;
    else if (alpha_method.rfind("mc:", 0) == 0) {
      cfg.method = qcover::AlphaMethodChoice::MonteCarlo;
      cfg.mc_test_points = std::stoll(alpha_method.substr(3));
    } else {
      throw qcover::InputError("--method must be auto, voronoi, or mc:<test points>");
    }
    auto report = qcover::run_alpha_estimate(circuit, cfg);
    report.circuit_ref = alpha_circuit;
    const std::string text = qcover::to_json(report) + "\n";
    std::cout << text;
    if (!alpha_out.empty()) write_file(alpha_out, text);
    return kExitOk;
  }

  if (conv_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(conv_circuit);
    qcover::AlphaRunConfig cfg;
    cfg.seed = conv_seed;
    if (conv_embedding == "bloch") cfg.embedding = qcover::EmbeddingChoice::Bloch;
    else if (conv_embedding == "real") cfg.embedding = qcover::EmbeddingChoice::Real;
    const auto report = qcover::run_convergence(circuit, parse_int_list(conv_nlist), cfg);
    const std::string text = qcover::to_csv(report);
    std::cout << text;
    if (!conv_out.empty()) write_file(conv_out, text);
    return kExitOk;
  }

  if (vol_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(vol_circuit);
    qcover::QuadratureSpec quad;
    if (vol_quad.rfind("trap:", 0) == 0) {
      quad = qcover::QuadratureSpec::Trapezoid(std::stoi(vol_quad.substr(5)));
    } else if (vol_quad.rfind("qmc:", 0) == 0) {
      const std::string rest = vol_quad.substr(4);
      const auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw qcover::InputError("QMC syntax: qmc:<N>:<seed>");
      quad = qcover::QuadratureSpec::Qmc(std::stoll(rest.substr(0, colon)),
                                         std::stoull(rest.substr(colon + 1)));
    } else {
      throw qcover::InputError("--quad must be trap:<K> or qmc:<N>:<seed>");
    }
    qcover::MetricGauge gauge;
    if (vol_gauge == "hilbert") gauge = qcover::MetricGauge::Hilbert;
    else if (vol_gauge == "bloch") gauge = qcover::MetricGauge::Bloch;
    else throw qcover::InputError("--gauge must be hilbert or bloch");

    const auto report = qcover::volume(circuit, quad, gauge);
    nlohmann::json j;
    j["schema_version"] = qcover::kReportSchemaVersion;
    j["circuit"] = vol_circuit;
    j["volume"] = report.volume;
    j["dim_image"] = report.dim_image;
    j["alpha_lower_bound"] = report.alpha_lower_bound;
    j["gauge"] = vol_gauge;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!vol_out.empty()) write_file(vol_out, text);
    return kExitOk;
  }

  if (spiral_cmd->parsed()) {
    const auto rows =
        qcover::run_spiral_study(parse_int_list(spiral_nlist), spiral_samples, spiral_seed);
    const std::string text = qcover::to_csv(rows);
    std::cout << text;
    if (!spiral_out.empty()) write_file(spiral_out, text);
    return kExitOk;
  }

  if (bloch_cmd->parsed()) {
    const auto report = qcover::run_bloch_study(parse_int_list(bloch_nlist), bloch_seed);
    const std::string text = qcover::to_csv(report);
    std::cout << text;
    if (!bloch_out.empty()) write_file(bloch_out, text);
    return kExitOk;
  }

  if (export_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(export_circuit);
    qcover::AlphaRunConfig cfg;
    cfg.samples = export_samples;
    cfg.seed = export_seed;
    std::optional<std::vector<double>> cost;
    if (!export_cost.empty()) {
      std::ifstream in(export_cost);
      if (!in) throw qcover::InputError("cannot open cost file: " + export_cost);
      nlohmann::json j;
      try {
        in >> j;
        cost = j.get<std::vector<double>>();
      } catch (const nlohmann::json::exception& e) {
        throw qcover::InputError(std::string("cost file must be a JSON array: ") + e.what());
      }
    }
    const auto bank = qcover::export_init_guesses(circuit, cfg, cost ? &*cost : nullptr,
                                                  export_band);
    write_file(export_out, bank.csv);
    if (!export_json.empty()) write_file(export_json, bank.json + "\n");
    std::cout << "wrote " << export_out << " (" << bank.kept << " guesses, alpha="
              << qcover::format_number(bank.alpha) << (bank.degenerate ? ", degenerate" : "")
              << ")\n";
    return kExitOk;
  }

  if (intf_cmd->parsed()) {
    const auto circuit = qcover::read_circuit(intf_circuit);
    const auto theta = parse_theta_arg(intf_theta, circuit);
    std::vector<std::pair<int, int>> pairs;
    if (intf_pair == "all") {
      for (int m = 0; m < circuit.num_params; ++m)
        for (int n = m; n < circuit.num_params; ++n) pairs.emplace_back(m, n);
    } else {
      const auto mn = parse_int_list(intf_pair);
      if (mn.size() != 2) throw qcover::InputError("--pair expects m,n");
      pairs.emplace_back(mn[0], mn[1]);
    }
    std::ostringstream os;
    os << "m,n,exact,estimate,std_error,shots\n";
    for (const auto& [m, n] : pairs) {
      qcover::InterferenceJob job;
      job.base = circuit;
      job.theta = theta;
      job.mode = qcover::InterferenceJob::DerivativePair{m, n};
      job.shots = intf_shots;
      job.rng_seed = qcover::mix_seed(intf_seed, static_cast<std::uint64_t>(m) * 0x10001ull +
                                                     static_cast<std::uint64_t>(n));
      const double exact = 2.0 * qcover::prob_anc0_exact(job) - 1.0;
      const auto est = qcover::estimate_real_inner(job);
      os << m << ',' << n << ',' << qcover::format_number(exact) << ','
         << qcover::format_number(est.estimate) << ',' << qcover::format_number(est.std_error)
         << ',' << intf_shots << '\n';
    }
    const std::string text = os.str();
    std::cout << text;
    if (!intf_out.empty()) write_file(intf_out, text);
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qcover::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const qcover::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
