#include "dinaq/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dinaq/csv.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/fit.hpp"
#include "dinaq/manifest.hpp"
#include "dinaq/simulate.hpp"

namespace dinaq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
}

std::string hash_matrix(const BinaryMatrix& m) {
  std::string bytes;
  bytes.reserve(m.data().size());
  for (std::uint8_t v : m.data()) bytes.push_back(static_cast<char>('0' + v));
  return fnv1a_hex(bytes);
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return fnv1a_hex(buffer.str());
}

/// A q_fixture value names a bundled matrix, or, when it is neither, a CSV
/// path to a user-supplied one.
QMatrix resolve_q_source(const std::string& value) {
  if (value == "qmatrix_I" || value == "qmatrix_II") return load_fixture_qmatrix(value);
  if (std::filesystem::exists(value)) return QMatrix(read_binary_csv(value));
  throw InvalidInputError("q_fixture '" + value +
                          "' is neither a bundled fixture name nor an existing file");
}

ThresholdRule parse_rule(const std::string& value) {
  if (value == "zero") return ThresholdRule::zero;
  if (value == "quantile") return ThresholdRule::quantile;
  throw ConfigError("rule must be 'zero' or 'quantile', found '" + value + "'");
}

/// Scalar values broadcast to every item; lists must match the item count.
std::vector<double> item_values(const KeyValueConfig& cfg, const std::string& key,
                                std::size_t items) {
  std::vector<double> values = cfg.get_double_list(key);
  if (values.size() == 1) values.assign(items, values.front());
  if (values.size() != items) {
    throw InvalidInputError("config key '" + key + "': expected 1 or " + std::to_string(items) +
                            " values, found " + std::to_string(values.size()));
  }
  return values;
}

void check_dimension_keys(const KeyValueConfig& cfg, const QMatrix& q) {
  if (cfg.has("j") && cfg.get_int("j") != static_cast<int>(q.items())) {
    throw InvalidInputError("config key 'j' does not match the Q-matrix item count");
  }
  if (cfg.has("k") && cfg.get_int("k") != static_cast<int>(q.attributes())) {
    throw InvalidInputError("config key 'k' does not match the Q-matrix attribute count");
  }
}

ChainConfig chain_config_from(const KeyValueConfig& cfg, std::optional<int> default_k = {}) {
  ChainConfig out;
  out.k = cfg.has("k") || !default_k ? cfg.get_int("k") : *default_k;
  out.iterations = cfg.get_int("iterations");
  if (cfg.has("burn_in")) out.burn_in = cfg.get_int("burn_in");
  out.chains = cfg.get_int_or("chains", 3);
  out.seed = cfg.get_uint64_or("seed", 0);
  out.q_known = cfg.get_bool_or("q_known", false);
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(base + 0x9e3779b97f4a7c15ULL * (a + 1)) ^ mix(b + 1);
}

std::string format_real(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

}  // namespace

void cmd_simulate(const KeyValueConfig& cfg, const std::filesystem::path& out_dir) {
  const auto start = Clock::now();
  const std::string q_source = cfg.get_string("q_fixture");
  const QMatrix q_true = resolve_q_source(q_source);
  check_dimension_keys(cfg, q_true);

  SimConfig sim{
      .n = cfg.get_int("n"),
      .q_true = q_true,
      .rho = cfg.get_double("rho"),
      .g_true = item_values(cfg, "g", q_true.items()),
      .s_true = item_values(cfg, "s", q_true.items()),
      .rule = parse_rule(cfg.has("rule") ? cfg.get_string("rule") : "zero"),
      .seed = cfg.get_uint64_or("seed", 0),
  };
  validate_sim_config(sim);

  ensure_dir(out_dir);
  const SimulatedData data = simulate_dataset(sim);
  write_binary_csv(out_dir / "responses.csv", data.responses.matrix());
  write_binary_csv(out_dir / "alpha_true.csv", data.alpha.matrix());
  write_binary_csv(out_dir / "q_true.csv", q_true.matrix());

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config = cfg.entries();
  manifest.seed = sim.seed;
  manifest.input_hashes[q_source] = hash_matrix(q_true.matrix());
  manifest.outputs = {(out_dir / "responses.csv").string(), (out_dir / "alpha_true.csv").string(),
                      (out_dir / "q_true.csv").string()};
  manifest.wall_clock_seconds = seconds_since(start);
  write_manifest(out_dir / "manifest.json", manifest);
}

void cmd_fit(const KeyValueConfig& cfg, const std::filesystem::path& responses_path,
             const std::filesystem::path& out_dir, bool save_draws) {
  const auto start = Clock::now();
  const ResponseMatrix y(read_binary_csv(responses_path));
  const ChainConfig chain_cfg = chain_config_from(cfg);

  std::optional<QMatrix> q;
  std::string q_source;
  if (cfg.has("q_init_path")) {
    q_source = cfg.get_string("q_init_path");
    q = QMatrix(read_binary_csv(q_source));
  } else if (cfg.has("q_fixture")) {
    q_source = cfg.get_string("q_fixture");
    q = resolve_q_source(q_source);
  }
  if (chain_cfg.q_known && !q) {
    throw InvalidInputError("q_known requires q_init_path or q_fixture");
  }
  if (q && (q->items() != y.items() ||
            q->attributes() != static_cast<std::size_t>(chain_cfg.k))) {
    throw InvalidInputError("supplied Q-matrix shape does not match the data and k");
  }

  const EstimationResult result = estimate_qmatrix(y, chain_cfg, q);

  ensure_dir(out_dir);
  write_real_csv(out_dir / "q_mean.csv", result.relabel.mean_q);
  write_real_csv(out_dir / "q_mean_raw.csv", result.summary.mean_q);

  {
    std::ofstream out(out_dir / "params_summary.csv");
    if (!out) throw IoError("cannot write params_summary.csv");
    out << "param,index,mean,lower95,upper95\n";
    auto emit = [&](const char* name, const std::vector<ParamSummary>& rows) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out << name << ',' << i << ',' << format_real(rows[i].mean) << ','
            << format_real(rows[i].lower) << ',' << format_real(rows[i].upper) << '\n';
      }
    };
    emit("g", result.summary.guess);
    emit("s", result.summary.slip);
    emit("theta", result.summary.theta);
  }

  RunManifest manifest;
  manifest.command = "fit";
  manifest.config = cfg.entries();
  manifest.config["burn_in"] = std::to_string(chain_cfg.resolved_burn_in());
  manifest.config["chains"] = std::to_string(chain_cfg.chains);
  manifest.seed = chain_cfg.seed;
  for (int chain = 0; chain < chain_cfg.chains; ++chain) {
    manifest.chain_streams.push_back(static_cast<std::uint64_t>(chain));
  }
  manifest.input_hashes[responses_path.string()] = hash_file(responses_path);
  if (q) manifest.input_hashes[q_source] = hash_matrix(q->matrix());
  manifest.outputs = {(out_dir / "q_mean.csv").string(), (out_dir / "q_mean_raw.csv").string(),
                      (out_dir / "params_summary.csv").string()};
  manifest.has_relabel = true;
  manifest.relabel_rounds = result.relabel.rounds;
  manifest.relabel_converged = result.relabel.converged;

  if (save_draws) {
    write_draw_stack_csv(out_dir / "q_draws.csv", result.pooled.q_draws);
    write_draw_stack_csv(out_dir / "q_draws_relabeled.csv", result.relabel.relabeled);
    manifest.outputs.push_back((out_dir / "q_draws.csv").string());
    manifest.outputs.push_back((out_dir / "q_draws_relabeled.csv").string());
  }

  manifest.wall_clock_seconds = seconds_since(start);
  write_manifest(out_dir / "manifest.json", manifest);
}

RecoveryReport cmd_score(const std::filesystem::path& estimate_path,
                         const std::filesystem::path& truth_path,
                         const std::optional<std::filesystem::path>& out_dir, std::ostream& out) {
  const RealMatrix estimate = read_real_csv(estimate_path);
  const QMatrix truth(read_binary_csv(truth_path));
  const RecoveryReport report = recovery_report({estimate}, truth);

  out << "delta_q " << format_real(report.delta_q) << '\n';
  out << "delta_q_rounded " << format_real(report.delta_q_rounded) << '\n';

  if (out_dir) {
    ensure_dir(*out_dir);
    write_real_csv(*out_dir / "per_entry_error.csv", report.per_entry_error);
  }
  return report;
}

namespace {

struct SweepCell {
  int n = 0;
  double rho = 0.0;
};

struct CellOutcome {
  std::vector<double> d7_before, d7_after, d8_before, d8_after;  // per replication
  std::string error;  // empty on success
};

CellOutcome run_sweep_cell(const KeyValueConfig& cfg, const QMatrix& q_true, SweepCell cell,
                           int replications, std::uint64_t base_seed, std::size_t cell_index) {
  CellOutcome outcome;
  try {
    for (int rep = 0; rep < replications; ++rep) {
      SimConfig sim{
          .n = cell.n,
          .q_true = q_true,
          .rho = cell.rho,
          .g_true = item_values(cfg, "g", q_true.items()),
          .s_true = item_values(cfg, "s", q_true.items()),
          .rule = parse_rule(cfg.has("rule") ? cfg.get_string("rule") : "zero"),
          .seed = derive_seed(base_seed, cell_index, static_cast<std::uint64_t>(2 * rep)),
      };
      const SimulatedData data = simulate_dataset(sim);

      ChainConfig chain_cfg =
          chain_config_from(cfg, static_cast<int>(q_true.attributes()));
      chain_cfg.seed = derive_seed(base_seed, cell_index, static_cast<std::uint64_t>(2 * rep + 1));

      // The design matrix seeds the chains (the estimate is identified only
      // up to column order otherwise); the sampler updates Q freely from
      // there.
      const EstimationResult fit = estimate_qmatrix(data.responses, chain_cfg, q_true);
      const RealMatrix before = fit.summary.mean_q;
      const RealMatrix after = fit.relabel.mean_q;
      outcome.d7_before.push_back(recovery_rate({before}, q_true));
      outcome.d7_after.push_back(recovery_rate({after}, q_true));
      outcome.d8_before.push_back(recovery_rate_rounded({before}, q_true));
      outcome.d8_after.push_back(recovery_rate_rounded({after}, q_true));
    }
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

double mean_of(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return values.empty() ? 0.0 : total / static_cast<double>(values.size());
}

}  // namespace

void cmd_sweep(const KeyValueConfig& cfg, const std::filesystem::path& out_dir, int workers) {
  const auto start = Clock::now();
  if (workers < 1) throw InvalidInputError("sweep: workers must be >= 1");
  const int replications = cfg.get_int("replications");
  if (replications < 1) throw InvalidInputError("sweep: replications must be >= 1");

  const std::string q_source = cfg.get_string("q_fixture");
  const QMatrix q_true = resolve_q_source(q_source);
  const std::vector<int> n_values = cfg.get_int_list("n");
  const std::vector<double> rho_values = cfg.get_double_list("rho");
  const std::uint64_t base_seed = cfg.get_uint64_or("seed", 0);

  std::vector<SweepCell> cells;
  for (int n : n_values) {
    for (double rho : rho_values) cells.push_back(SweepCell{n, rho});
  }

  std::vector<CellOutcome> outcomes(cells.size());
  for (std::size_t first = 0; first < cells.size(); first += static_cast<std::size_t>(workers)) {
    const std::size_t last = std::min(cells.size(), first + static_cast<std::size_t>(workers));
    std::vector<std::future<CellOutcome>> batch;
    for (std::size_t c = first; c < last; ++c) {
      batch.push_back(std::async(std::launch::async, [&, c] {
        return run_sweep_cell(cfg, q_true, cells[c], replications, base_seed, c);
      }));
    }
    for (std::size_t c = first; c < last; ++c) outcomes[c] = batch[c - first].get();
  }

  ensure_dir(out_dir);
  {
    std::ofstream out(out_dir / "sweep_results.csv");
    if (!out) throw IoError("cannot write sweep_results.csv");
    out << "n,rho,replications,status,delta7_before,delta7_after,delta8_before,delta8_after\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const CellOutcome& o = outcomes[c];
      out << cells[c].n << ',' << format_real(cells[c].rho) << ',' << replications << ','
          << (o.error.empty() ? "ok" : "error") << ',' << format_real(mean_of(o.d7_before)) << ','
          << format_real(mean_of(o.d7_after)) << ',' << format_real(mean_of(o.d8_before)) << ','
          << format_real(mean_of(o.d8_after)) << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "sweep_detail.csv");
    if (!out) throw IoError("cannot write sweep_detail.csv");
    out << "n,rho,replication,delta7_before,delta7_after,delta8_before,delta8_after,error\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const CellOutcome& o = outcomes[c];
      for (std::size_t rep = 0; rep < o.d7_before.size(); ++rep) {
        out << cells[c].n << ',' << format_real(cells[c].rho) << ',' << rep << ','
            << format_real(o.d7_before[rep]) << ',' << format_real(o.d7_after[rep]) << ','
            << format_real(o.d8_before[rep]) << ',' << format_real(o.d8_after[rep]) << ",\n";
      }
      if (!o.error.empty()) {
        out << cells[c].n << ',' << format_real(cells[c].rho) << ",,,,,," << '"' << o.error
            << '"' << '\n';
      }
    }
  }

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = cfg.entries();
  manifest.seed = base_seed;
  manifest.input_hashes[q_source] = hash_matrix(q_true.matrix());
  manifest.outputs = {(out_dir / "sweep_results.csv").string(),
                      (out_dir / "sweep_detail.csv").string()};
  manifest.wall_clock_seconds = seconds_since(start);
  write_manifest(out_dir / "manifest.json", manifest);
}

}  // namespace dinaq
