#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dinaq/commands.hpp"
#include "dinaq/config.hpp"
#include "dinaq/errors.hpp"

namespace {

struct CommandInputs {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

/// One CLI flag per config key; flags override file values.
void add_key_flags(CLI::App* cmd, CommandInputs& inputs,
                   const std::vector<std::string>& keys) {
  cmd->add_option("--config", inputs.config_path, "Key-value config file");
  for (const std::string& key : keys) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option_function<std::string>(
        flag, [&inputs, key](const std::string& value) { inputs.overrides[key] = value; },
        "Overrides config key '" + key + "'");
  }
}

dinaq::KeyValueConfig resolve_config(const CommandInputs& inputs) {
  dinaq::KeyValueConfig cfg = inputs.config_path.empty()
                                  ? dinaq::KeyValueConfig{}
                                  : dinaq::KeyValueConfig::parse_file(inputs.config_path);
  for (const auto& [key, value] : inputs.overrides) cfg.set(key, value);
  return cfg;
}

int fail(const char* category, const std::exception& e, int code) {
  std::cerr << "error: " << category << ": " << e.what() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian Q-matrix estimation for the DINA model"};
  app.require_subcommand(1);

  CommandInputs sim_inputs;
  std::string sim_out;
  CLI::App* sim = app.add_subcommand("simulate", "Generate correlated-attribute DINA data");
  add_key_flags(sim, sim_inputs, {"n", "j", "k", "rho", "rule", "g", "s", "seed", "q_fixture"});
  sim->add_option("--out", sim_out, "Output directory")->required();

  CommandInputs fit_inputs;
  std::string fit_responses;
  std::string fit_out;
  bool fit_save_draws = false;
  CLI::App* fit = app.add_subcommand("fit", "Estimate the Q-matrix from responses");
  add_key_flags(fit, fit_inputs,
                {"k", "iterations", "burn_in", "chains", "seed", "q_known", "q_init_path",
                 "q_fixture"});
  fit->add_option("--responses", fit_responses, "Response matrix CSV")->required();
  fit->add_option("--out", fit_out, "Output directory")->required();
  fit->add_flag("--save-draws", fit_save_draws, "Also dump the raw and relabeled Q draws");

  std::string score_estimate;
  std::string score_truth;
  std::string score_out;
  CLI::App* score = app.add_subcommand("score", "Recovery rates of an estimate against truth");
  score->add_option("--estimate", score_estimate, "Estimated Q-matrix CSV (real-valued)")
      ->required();
  score->add_option("--truth", score_truth, "True Q-matrix CSV (binary)")->required();
  score->add_option("--out", score_out, "Optional directory for the per-entry error matrix");

  CommandInputs sweep_inputs;
  std::string sweep_out;
  int sweep_workers = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Simulate + fit + score over an (n, rho) grid");
  add_key_flags(sweep, sweep_inputs,
                {"n", "rho", "replications", "rule", "g", "s", "iterations", "burn_in", "chains",
                 "seed", "q_fixture"});
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--workers", sweep_workers, "Concurrent grid cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << std::endl;
    return 64;
  }

  try {
    if (sim->parsed()) {
      dinaq::cmd_simulate(resolve_config(sim_inputs), sim_out);
    } else if (fit->parsed()) {
      dinaq::cmd_fit(resolve_config(fit_inputs), fit_responses, fit_out, fit_save_draws);
    } else if (score->parsed()) {
      std::optional<std::filesystem::path> out_dir;
      if (!score_out.empty()) out_dir = score_out;
      dinaq::cmd_score(score_estimate, score_truth, out_dir, std::cout);
    } else if (sweep->parsed()) {
      dinaq::cmd_sweep(resolve_config(sweep_inputs), sweep_out, sweep_workers);
    }
    return 0;
  } catch (const dinaq::ConfigError& e) {
    return fail("config", e, 4);
  } catch (const dinaq::IoError& e) {
    return fail("io", e, 5);
  } catch (const dinaq::UnsupportedConfigError& e) {
    return fail("unsupported-config", e, 3);
  } catch (const dinaq::DecompositionError& e) {
    return fail("invalid-input", e, 2);
  } catch (const dinaq::InvalidInputError& e) {
    return fail("invalid-input", e, 2);
  } catch (const std::exception& e) {
    return fail("internal", e, 1);
  }
}
