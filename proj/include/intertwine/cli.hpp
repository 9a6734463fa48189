#pragma once

// Command-line front end.  run_cli() does all the work and writes to the
// given streams, so the binary in tools/ is a one-line wrapper and tests can
// drive it in-process.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oracle.hpp"
#include "verify.hpp"

namespace intertwine::cli {

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  std::string model = "all";
  std::optional<double> m, g, l, omega;
  int n_max = 8;
  int parameter_sets = 3;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string format;  // json | csv; empty picks the command default
  std::string output;  // empty writes to stdout
  std::vector<int> grid;
  int k = 4;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<ModelId> selected_models(const RunConfig& cfg) {
  if (cfg.model == "all") return {std::begin(kAllModels), std::end(kAllModels)};
  const auto id = parse_model(cfg.model);
  if (!id) throw ConfigError("unknown model '" + cfg.model + "' (expected ho, cs, hydrogen, rm-sph, rm-hyp or all)");
  return {*id};
}

inline bool has_overrides(const RunConfig& cfg) { return cfg.m || cfg.g || cfg.l || cfg.omega; }

/// The first default set of the model with any command-line overrides applied.
inline ParameterSet overridden_parameters(ModelId id, const RunConfig& cfg) {
  ParameterSet p = default_parameter_sets(id).front();
  if (cfg.m) p.m = *cfg.m;
  if (cfg.g) p.g = *cfg.g;
  if (cfg.l) p.l = *cfg.l;
  if (cfg.omega) p.omega = *cfg.omega;
  validate(id, p);
  return p;
}

inline std::vector<ParameterSet> parameter_sets(ModelId id, const RunConfig& cfg, int count) {
  if (has_overrides(cfg)) return {overridden_parameters(id, cfg)};
  const auto all = default_parameter_sets(id);
  return {all.begin(), all.begin() + std::min<std::size_t>(all.size(), count)};
}

inline nlohmann::ordered_json tolerances_json(const Tolerances& t) {
  return {{"relation", t.relation},       {"mapping", t.mapping},
          {"arithmetic", t.arithmetic},   {"eigenpair", t.eigenpair},
          {"orthogonality", t.orthogonality}, {"closure", t.closure},
          {"shape", t.shape},             {"epsilon_spread", t.epsilon_spread},
          {"scaling", t.scaling},         {"annihilation", t.annihilation},
          {"gap", t.gap},                 {"overlap", t.overlap},
          {"oracle", t.oracle},           {"oracle_overlap", t.oracle_overlap},
          {"order_band", t.order_band}};
}

inline nlohmann::ordered_json run_config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = cfg.command;
  j["model"] = cfg.model;
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  if (cfg.m) o["m"] = *cfg.m;
  if (cfg.g) o["g"] = *cfg.g;
  if (cfg.l) o["l"] = *cfg.l;
  if (cfg.omega) o["omega"] = *cfg.omega;
  j["parameter_overrides"] = o;
  j["nmax"] = cfg.n_max;
  j["sets"] = cfg.parameter_sets;
  j["tolerances"] = tolerances_json(cfg.tol);
  j["seed"] = cfg.seed;
  j["format"] = cfg.format;
  if (cfg.command == "oracle") {
    j["grid"] = cfg.grid;
    j["k"] = cfg.k;
  }
  return j;
}

/// Report document: run_config, results and summary are reproducible; wall
/// time lives in "timing" only.
inline nlohmann::ordered_json report_document(const RunConfig& cfg, const std::vector<VerificationReport>& reports,
                                              const std::vector<std::string>& notes, double wall_seconds) {
  nlohmann::ordered_json doc;
  doc["run_config"] = run_config_json(cfg);
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    results.push_back(to_json(r));
    if (!r.pass()) ++failed;
  }
  doc["results"] = std::move(results);
  doc["summary"] = {{"rows", reports.size()},
                    {"passed", reports.size() - failed},
                    {"failed", failed},
                    {"pass", failed == 0},
                    {"notes", notes}};
  doc["timing"] = {{"wall_seconds", wall_seconds}};
  return doc;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + cfg.output + "'");
  f << text;
}

inline void validate_config(const RunConfig& cfg) {
  const auto t = tolerances_json(cfg.tol);
  for (const auto& [name, v] : t.items()) {
    if (!(v.get<double>() > 0)) throw ConfigError("tolerance " + name + " must be positive");
  }
  if (cfg.n_max < 0) throw ConfigError("--nmax must be non-negative");
  if (cfg.parameter_sets < 1 || cfg.parameter_sets > 5) throw ConfigError("--sets must be in 1..5");
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteConfig sc;
  sc.models = selected_models(cfg);
  sc.parameter_sets = cfg.parameter_sets;
  sc.n_max = cfg.n_max;
  sc.tol = cfg.tol;
  sc.seed = cfg.seed;
  if (has_overrides(cfg)) {
    if (sc.models.size() != 1) throw ConfigError("parameter overrides need a single --model");
    sc.params = overridden_parameters(sc.models.front(), cfg);
  }
  const SuiteResult res = run_suite(sc);
  if (cfg.format == "csv") {
    emit(cfg, to_csv(res.reports), out);
  } else {
    emit(cfg, report_document(cfg, res.reports, res.notes, seconds_since(t0)).dump(2) + "\n", out);
  }
  return res.pass() ? kPass : kFail;
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.model == "all") throw ConfigError("spectrum needs a single --model");
  const ModelId id = selected_models(cfg).front();
  const ParameterSet p = overridden_parameters(id, cfg);
  int N = cfg.n_max;
  std::vector<std::string> notes;
  if (const auto count = bound_state_count(id, p); count && N > *count - 1) {
    N = *count - 1;
    notes.push_back(std::string(model_name(id)) + ": bound spectrum has " + std::to_string(*count) +
                    " levels; chain truncated at n=" + std::to_string(N));
  }
  std::vector<ChainLevel> levels;
  std::vector<VerificationReport> reports;
  try {
    levels = ladder_construct_spectrum(id, p, N, cfg.tol);
    reports = spectrum_reports(id, p, levels, cfg.tol);
  } catch (const Error& e) {
    VerificationReport r;
    r.relation_id = std::string(model_name(id)) + ".ladder_spectrum";
    r.model = id;
    r.params = p;
    r.n_max = N;
    r.failed_hard = true;
    r.note = e.what();
    reports = {r};
  }
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  if (cfg.format == "json") {
    emit(cfg, report_document(cfg, reports, notes, seconds_since(t0)).dump(2) + "\n", out);
  } else {
    std::string csv = "n,E_direct,E_chain,overlap\r\n";
    for (const auto& l : levels) {
      csv += std::to_string(l.n) + "," + detail::format_double(l.e_direct) + "," +
             detail::format_double(l.e_chain) + "," + detail::format_double(l.overlap) + "\r\n";
    }
    emit(cfg, csv, out);
  }
  return pass ? kPass : kFail;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.k < 1) throw ConfigError("--k must be at least 1");
  if (cfg.k > kMaxOracleStates) throw ConfigError("--k must be at most " + std::to_string(kMaxOracleStates));
  GridConfig grid;
  if (!cfg.grid.empty()) grid.points = cfg.grid;
  if (grid.points.size() < 2) throw ConfigError("--grid needs at least two levels");
  for (int n : grid.points)
    if (n < 64) throw ConfigError("--grid levels need at least 64 points");

  using Rows = std::vector<VerificationReport>;
  std::vector<std::function<Rows()>> tasks;
  std::vector<std::string> notes;
  for (ModelId id : selected_models(cfg)) {
    for (const auto& p : parameter_sets(id, cfg, cfg.parameter_sets)) {
      int k = cfg.k;
      if (const auto count = bound_state_count(id, p); count && k > *count) {
        k = *count;
        notes.push_back(std::string(model_name(id)) + " g=" + detail::format_double(p.g) + " l=" +
                        detail::format_double(p.l) + ": bound spectrum has " + std::to_string(*count) +
                        " levels; oracle truncated at n=" + std::to_string(k - 1));
      }
      tasks.push_back(detail::guarded_task("oracle.finite_difference_eigenpair", id, p, 0,
                                           [=] { return compare_with_closed_form(id, p, k, grid, cfg.tol); }));
    }
  }
  Rows reports;
  for (auto& rows : parallel_map(tasks))
    for (auto& r : rows) reports.push_back(std::move(r));
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  if (cfg.format == "csv") {
    emit(cfg, to_csv(reports), out);
  } else {
    emit(cfg, report_document(cfg, reports, notes, seconds_since(t0)).dump(2) + "\n", out);
  }
  return pass ? kPass : kFail;
}

inline void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--model", cfg.model, "ho, cs, hydrogen, rm-sph, rm-hyp or all");
  sub->add_option("--m", cfg.m, "mass");
  sub->add_option("--g", cfg.g, "coupling");
  sub->add_option("--l", cfg.l, "centrifugal parameter");
  sub->add_option("--omega", cfg.omega, "oscillator frequency");
  sub->add_option("--nmax", cfg.n_max, "highest level");
  sub->add_option("--sets", cfg.parameter_sets, "number of default parameter sets per model (1..5)");
  sub->add_option("--seed", cfg.seed, "seed for the randomized test functions");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", cfg.output, "write the report here instead of stdout");
  Tolerances& t = cfg.tol;
  sub->add_option("--tol-relation", t.relation, "operator identities");
  sub->add_option("--tol-mapping", t.mapping, "mapping statements");
  sub->add_option("--tol-arithmetic", t.arithmetic, "energy identities");
  sub->add_option("--tol-eigenpair", t.eigenpair, "eigenpair residuals");
  sub->add_option("--tol-orthogonality", t.orthogonality, "overlaps between levels");
  sub->add_option("--tol-closure", t.closure, "closure relation");
  sub->add_option("--tol-shape", t.shape, "shape invariance");
  sub->add_option("--tol-epsilon-spread", t.epsilon_spread, "spread of fitted shape offsets");
  sub->add_option("--tol-scaling", t.scaling, "hydrogen rescaling");
  sub->add_option("--tol-annihilation", t.annihilation, "ground-state annihilation");
  sub->add_option("--tol-gap", t.gap, "ladder energy gaps");
  sub->add_option("--tol-overlap", t.overlap, "chain-built states");
  sub->add_option("--tol-oracle", t.oracle, "finite-difference eigenvalues");
  sub->add_option("--tol-oracle-overlap", t.oracle_overlap, "finite-difference eigenvectors");
  sub->add_option("--tol-order-band", t.order_band, "convergence order band around 2");
}

/// Parses argv, runs the command and returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Verification of spectral intertwining relations in exactly solvable models", "intertwine"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App* verify = app.add_subcommand("verify", "check operator relations, mappings and energy identities");
  CLI::App* spectrum = app.add_subcommand("spectrum", "build a spectrum by a ladder chain and compare");
  CLI::App* oracle = app.add_subcommand("oracle", "cross-check closed forms against finite differences");
  for (CLI::App* sub : {verify, spectrum, oracle}) add_common_options(sub, cfg);
  oracle->add_option("--grid", cfg.grid, "interior points per refinement level (repeatable)");
  oracle->add_option("--k", cfg.k, "number of lowest states");
  spectrum->get_option("--nmax")->description("highest chain level N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "spectrum" ? "csv" : "json";
  try {
    validate_config(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    return cmd_oracle(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n" << chosen->help();
    return kUsage;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidParameters) throw;
    err << "error: " << e.what() << "\n" << chosen->help();
    return kUsage;
  }
}

}  // namespace intertwine::cli
