#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "dinaq/config.hpp"
#include "dinaq/metrics.hpp"

namespace dinaq {

/// Generates a dataset (responses, true attributes, true Q) into out_dir.
void cmd_simulate(const KeyValueConfig& cfg, const std::filesystem::path& out_dir);

/// Runs the full estimation pipeline on a response file, writing the
/// relabeled Q-matrix mean, parameter summaries, optional draw dumps, and a
/// manifest into out_dir.
void cmd_fit(const KeyValueConfig& cfg, const std::filesystem::path& responses_path,
             const std::filesystem::path& out_dir, bool save_draws);

/// Scores an estimate (real-valued CSV) against a true Q-matrix. Prints
/// both recovery rates to `out`; writes the per-entry error matrix when an
/// output directory is given.
RecoveryReport cmd_score(const std::filesystem::path& estimate_path,
                         const std::filesystem::path& truth_path,
                         const std::optional<std::filesystem::path>& out_dir, std::ostream& out);

/// Runs simulate + fit + score over an (n, rho) grid with replications,
/// recording recovery before and after relabeling per cell. Failed cells
/// are recorded and the sweep continues.
void cmd_sweep(const KeyValueConfig& cfg, const std::filesystem::path& out_dir, int workers);

}  // namespace dinaq
