// persuade: command-line front end. Subcommands: analyze, simulate, sweep,
// oracle, extensions. JSON (or CSV for sweeps) goes to stdout or --output.
// Exit codes: 0 success, 2 domain violation, 3 internal invariant failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "persuasion/analysis.hpp"
#include "persuasion/core.hpp"
#include "persuasion/extensions.hpp"
#include "persuasion/json_report.hpp"
#include "persuasion/oracle.hpp"
#include "persuasion/simulate.hpp"
#include "persuasion/sweep.hpp"

namespace {

using nlohmann::json;
using namespace persuasion;

constexpr int kExitDomainViolation = 2;
constexpr int kExitInternalError = 3;

struct ProfileFlags {
  std::optional<double> lambda;
  std::optional<double> q_low;
  std::optional<double> q_high;
  std::optional<double> q;  // homogeneous shorthand

  void add_to(CLI::App& app) {
    app.add_option("--lambda", lambda, "Share of low-accuracy voters");
    app.add_option("--q-low", q_low, "Low-class signal accuracy in [0.5, 1]");
    app.add_option("--q-high", q_high, "High-class signal accuracy");
    app.add_option("--q", q, "Homogeneous accuracy (sets both classes, lambda 0)");
  }

  PopulationProfile resolve() const {
    if (q) {
      if (q_low || q_high)
        throw std::invalid_argument("--q conflicts with --q-low/--q-high");
      return PopulationProfile(lambda.value_or(0.0), *q, *q);
    }
    if (!q_high) throw std::invalid_argument("profile requires --q-high or --q");
    return PopulationProfile(lambda.value_or(0.0), q_low.value_or(*q_high),
                             *q_high);
  }
};

TieRule parse_tie(const std::string& s) {
  if (s == "favor-a") return TieRule::kFavorA;
  if (s == "favor-b") return TieRule::kFavorB;
  throw std::invalid_argument("tie rule must be favor-a or favor-b");
}

StateOfWorld parse_state(const std::string& s) {
  if (s == "A" || s == "a") return StateOfWorld::kThetaA;
  if (s == "B" || s == "b") return StateOfWorld::kThetaB;
  throw std::invalid_argument("state must be A or B");
}

// Accepts "alpha=0.7,beta=0.3".
SignalSpec parse_signal_posteriors(const std::string& spec) {
  std::optional<double> alpha, beta;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--signal expects alpha=<v>,beta=<v>");
    const std::string key = part.substr(0, eq);
    const double value = std::stod(part.substr(eq + 1));
    if (key == "alpha")
      alpha = value;
    else if (key == "beta")
      beta = value;
    else
      throw std::invalid_argument("unknown --signal key: " + key);
  }
  if (!alpha || !beta)
    throw std::invalid_argument("--signal needs both alpha and beta");
  return SignalSpec::from_posteriors(*alpha, *beta);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json profile_echo(const PopulationProfile& profile) {
  return to_json(profile);
}

int cmd_analyze(const ProfileFlags& flags, const std::string& output) {
  const PopulationProfile profile = flags.resolve();
  const ManipulabilityReport report = classify(profile);

  json j;
  j["tool"] = tool_info();
  j["command"] = "analyze";
  j["inputs"] = {{"profile", profile_echo(profile)}, {"tie", "favor-a"}};
  j.update(to_json(report));

  json thresholds;
  thresholds["q_ni"] = std::isfinite(q_ni(profile.lambda()))
                           ? json(q_ni(profile.lambda()))
                           : json(nullptr);
  thresholds["q_bar"] =
      profile.lambda() < 1.0 ? json(q_bar(profile.lambda())) : json(nullptr);
  const double qh = profile.q_high();
  thresholds["lambda_under"] = (qh > 0.5 && qh <= 0.70710678118654752 + 1e-12)
                                   ? json(lambda_under(qh))
                                   : json(nullptr);
  j["thresholds"] = thresholds;

  if (profile.q_low() < profile.q_high()) {
    const auto min_lambda =
        min_lambda_high_manipulable(profile.q_low(), profile.q_high());
    j["min_lambda_high_manipulable"] =
        min_lambda ? json(*min_lambda) : json(nullptr);
  } else {
    j["min_lambda_high_manipulable"] = nullptr;
  }

  j["regime_tags"] = json::array();
  if (report.classification == Manipulability::kManipulable)
    for (const std::string& tag : bias_direction(profile).regime_tags)
      j["regime_tags"].push_back(tag);

  write_output(dump(j), output);
  return 0;
}

int cmd_simulate(const ProfileFlags& flags, const SignalSpec& signal,
                 StateOfWorld state, const SimConfig& config,
                 const std::string& output) {
  const PopulationProfile profile = flags.resolve();
  if (config.n_voters % 2 == 0)
    std::cerr << "warning: even n-voters makes the tie rule load-bearing; "
                 "odd counts are recommended\n";
  const ElectionResult result = simulate(profile, signal, state, config);

  json j;
  j["tool"] = tool_info();
  j["command"] = "simulate";
  j["inputs"] = {{"profile", profile_echo(profile)},
                 {"signal", to_json(signal)},
                 {"state", to_string(state)},
                 {"n_voters", config.n_voters},
                 {"trials", config.trials},
                 {"seed", config.seed},
                 {"tie", to_string(config.tie)},
                 {"fixed_split", config.fixed_split}};
  j["result"] = to_json(result);
  write_output(dump(j), output);
  return 0;
}

int cmd_sweep(const SweepSpec& spec, bool as_json, const std::string& output) {
  const std::vector<SweepRow> rows = run_sweep(spec);
  if (!as_json) {
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    write_output(csv.str(), output);
    return 0;
  }
  json j;
  j["tool"] = tool_info();
  j["command"] = "sweep";
  j["inputs"] = {{"q_high", spec.q_high},
                 {"q_low_min", spec.q_low_min},
                 {"q_low_max", spec.q_low_max},
                 {"q_low_step", spec.q_low_step},
                 {"lambda_min", spec.lambda_min},
                 {"lambda_max", spec.lambda_max},
                 {"lambda_step", spec.lambda_step},
                 {"tie", "favor-a"}};
  j["rows"] = json::array();
  for (const SweepRow& r : rows) {
    j["rows"].push_back(
        {{"q_low", r.q_low},
         {"q_high", r.q_high},
         {"lambda", r.lambda},
         {"classification", to_string(r.classification)},
         {"n_witnesses", r.n_witnesses},
         {"bias_min", r.bias_min ? json(*r.bias_min) : json(nullptr)},
         {"bias_max", r.bias_max ? json(*r.bias_max) : json(nullptr)},
         {"best_candidate_id", r.best_candidate_id}});
  }
  write_output(dump(j), output);
  return 0;
}

int cmd_oracle(const ProfileFlags& flags, double step, TieRule tie,
               bool full_set, const std::string& output) {
  const PopulationProfile profile = flags.resolve();
  const GridReport grid = grid_search(profile, step, tie);
  const Lemma1Report lemma1 = verify_lemma1(profile, step);

  json j;
  j["tool"] = tool_info();
  j["command"] = "oracle";
  j["inputs"] = {{"profile", profile_echo(profile)},
                 {"step", step},
                 {"tie", to_string(tie)}};
  j["grid"] = to_json(grid, full_set);
  j["lemma1"] = to_json(lemma1);
  write_output(dump(j), output);
  return 0;
}

ContinuousProfile load_continuous(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  return ContinuousProfile::from_breakpoint_table(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Election-manipulation analysis for majority votes with a "
               "designer-controlled private signal"};
  app.require_subcommand(1);

  std::string output;
  app.add_option("--output", output, "Write output to a file (default stdout)")
      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Classify a population profile");
  ProfileFlags analyze_profile;
  analyze_profile.add_to(*analyze);

  // simulate
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Finite-population Monte Carlo election");
  ProfileFlags sim_profile;
  sim_profile.add_to(*simulate_cmd);
  std::string signal_spec;
  std::vector<double> signal_cond;
  std::string state_str = "B";
  std::string tie_str = "favor-a";
  SimConfig sim_config;
  sim_config.n_voters = 10001;
  sim_config.trials = 200;
  simulate_cmd->add_option("--signal", signal_spec,
                           "Designer signal as alpha=<v>,beta=<v>");
  simulate_cmd
      ->add_option("--signal-cond", signal_cond,
                   "Designer signal as conditionals P(pro-A|theta_A) P(pro-A|theta_B)")
      ->expected(2);
  simulate_cmd->add_option("--state", state_str, "True state, A or B")
      ->capture_default_str();
  simulate_cmd->add_option("--n", sim_config.n_voters, "Number of voters")
      ->capture_default_str();
  simulate_cmd->add_option("--trials", sim_config.trials, "Number of trials")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", sim_config.seed, "RNG seed")
      ->capture_default_str();
  simulate_cmd->add_option("--tie", tie_str, "Tie rule: favor-a or favor-b")
      ->capture_default_str();
  simulate_cmd->add_flag("--fixed-split", sim_config.fixed_split,
                         "Deterministic round(lambda*n) low-accuracy voters");
  simulate_cmd->add_flag("--tallies", sim_config.keep_tallies,
                         "Include per-trial A-vote counts in the output");

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Classify a (q_low, lambda) grid as CSV");
  SweepSpec sweep_spec{0.7, 0.5, 0.7, 0.01, 0.0, 1.0, 0.05};
  bool sweep_json = false;
  sweep_cmd->add_option("--q-high", sweep_spec.q_high, "Fixed high accuracy")
      ->required();
  sweep_cmd->add_option("--q-low-min", sweep_spec.q_low_min, "q_low range start")
      ->capture_default_str();
  sweep_cmd->add_option("--q-low-max", sweep_spec.q_low_max, "q_low range end")
      ->capture_default_str();
  sweep_cmd->add_option("--q-low-step", sweep_spec.q_low_step, "q_low step")
      ->capture_default_str();
  sweep_cmd->add_option("--lambda-min", sweep_spec.lambda_min, "lambda range start")
      ->capture_default_str();
  sweep_cmd->add_option("--lambda-max", sweep_spec.lambda_max, "lambda range end")
      ->capture_default_str();
  sweep_cmd->add_option("--lambda-step", sweep_spec.lambda_step, "lambda step")
      ->capture_default_str();
  sweep_cmd->add_flag("--json", sweep_json, "Emit JSON rows instead of CSV");

  // oracle
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force grid search plus candidate-closure verification");
  ProfileFlags oracle_profile;
  oracle_profile.add_to(*oracle_cmd);
  double oracle_step = 0.005;
  std::string oracle_tie = "favor-a";
  bool oracle_full = false;
  oracle_cmd->add_option("--step", oracle_step, "Grid step in (0, 0.01]")
      ->capture_default_str();
  oracle_cmd->add_option("--tie", oracle_tie, "Tie rule: favor-a or favor-b")
      ->capture_default_str();
  oracle_cmd->add_flag("--full", oracle_full,
                       "Include the full optimal set in the output");

  // extensions
  auto* ext = app.add_subcommand("extensions", "Model variants");
  ext->require_subcommand(1);
  std::string profile_file;
  double ext_step = 0.005;

  auto* continuous =
      ext->add_subcommand("continuous", "Continuous accuracy distribution");
  continuous
      ->add_option("--profile-file", profile_file,
                   "Breakpoint/value density table")
      ->required();
  continuous->add_option("--step", ext_step, "Numeric-fallback grid step")
      ->capture_default_str();

  auto* targeted =
      ext->add_subcommand("targeted", "Per-accuracy-class designer signals");
  ProfileFlags targeted_profile;
  targeted_profile.add_to(*targeted);
  targeted->add_option("--profile-file", profile_file,
                       "Continuous profile instead of class flags");

  auto* strongly = ext->add_subcommand(
      "strongly-targeted", "Signals conditioned on class and realization");
  ProfileFlags strongly_profile;
  strongly_profile.add_to(*strongly);
  strongly->add_option("--profile-file", profile_file,
                       "Continuous profile instead of class flags");

  auto* public_cmd =
      ext->add_subcommand("public", "Public persuasion comparison");
  ProfileFlags public_profile;
  public_profile.add_to(*public_cmd);
  public_cmd->add_option("--step", ext_step, "Public-signal grid step")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(analyze_profile, output);

    if (*simulate_cmd) {
      if (signal_spec.empty() == signal_cond.empty())
        throw std::invalid_argument(
            "simulate needs exactly one of --signal or --signal-cond");
      const SignalSpec signal =
          !signal_spec.empty()
              ? parse_signal_posteriors(signal_spec)
              : SignalSpec::from_conditionals(signal_cond[0], signal_cond[1]);
      sim_config.tie = parse_tie(tie_str);
      return cmd_simulate(sim_profile, signal, parse_state(state_str),
                          sim_config, output);
    }

    if (*sweep_cmd) return cmd_sweep(sweep_spec, sweep_json, output);

    if (*oracle_cmd)
      return cmd_oracle(oracle_profile, oracle_step, parse_tie(oracle_tie),
                        oracle_full, output);

    json j;
    j["tool"] = tool_info();
    if (*continuous) {
      const ContinuousProfile cp = load_continuous(profile_file);
      j["command"] = "extensions continuous";
      j["inputs"] = {{"profile_file", profile_file}, {"step", ext_step}};
      j["report"] = to_json(continuous_classify(cp, ext_step));
    } else if (*targeted) {
      j["command"] = "extensions targeted";
      if (!profile_file.empty()) {
        j["inputs"] = {{"profile_file", profile_file}};
        j["report"] = to_json(targeted_classify(load_continuous(profile_file)));
      } else {
        const PopulationProfile profile = targeted_profile.resolve();
        j["inputs"] = {{"profile", profile_echo(profile)}};
        j["report"] = to_json(targeted_classify(profile));
      }
    } else if (*strongly) {
      j["command"] = "extensions strongly-targeted";
      if (!profile_file.empty()) {
        j["inputs"] = {{"profile_file", profile_file}};
        j["report"] =
            to_json(strongly_targeted_classify(load_continuous(profile_file)));
      } else {
        const PopulationProfile profile = strongly_profile.resolve();
        j["inputs"] = {{"profile", profile_echo(profile)}};
        j["report"] = to_json(strongly_targeted_classify(profile));
      }
    } else if (*public_cmd) {
      const PopulationProfile profile = public_profile.resolve();
      j["command"] = "extensions public";
      j["inputs"] = {{"profile", profile_echo(profile)}, {"step", ext_step}};
      j["report"] = to_json(public_persuasion_compare(profile, ext_step));
    }
    write_output(dump(j), output);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainViolation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainViolation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}
