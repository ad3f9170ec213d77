#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dinaq/commands.hpp"
#include "dinaq/config.hpp"
#include "dinaq/csv.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/simulate.hpp"

using namespace dinaq;
namespace fs = std::filesystem;

namespace {

/// Self-cleaning scratch directory for command outputs.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("dinaq_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("key-value config parsing") {
  SUBCASE("values, comments, and whitespace") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "# comment line\n"
        "n = 500\n"
        "rho=0.1   # trailing comment\n"
        "g = 0.2\n"
        "\n"
        "rule = zero\n");
    CHECK(cfg.get_int("n") == 500);
    CHECK(cfg.get_double("rho") == doctest::Approx(0.1));
    CHECK(cfg.get_string("rule") == "zero");
    CHECK_FALSE(cfg.has("seed"));
    CHECK(cfg.get_uint64_or("seed", 7) == 7);
  }
  SUBCASE("unknown keys are errors, not warnings") {
    CHECK_THROWS_AS(KeyValueConfig::parse_string("bogus = 1\n"), ConfigError);
  }
  SUBCASE("malformed lines") {
    CHECK_THROWS_AS(KeyValueConfig::parse_string("n 500\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("n =\n"), ConfigError);
  }
  SUBCASE("typed accessors reject junk") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string("n = abc\nrho = 0.1x\n");
    CHECK_THROWS_AS(cfg.get_int("n"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("rho"), ConfigError);
    CHECK_THROWS_AS(cfg.get_int("iterations"), ConfigError);  // missing
  }
  SUBCASE("lists") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string("n = 500,1000\nrho = 0.1,0.3,0.5\n");
    CHECK(cfg.get_int_list("n") == std::vector<int>{500, 1000});
    CHECK(cfg.get_double_list("rho").size() == 3);
  }
}

TEST_CASE("csv round trips") {
  TempDir dir("csv");
  std::mt19937_64 engine(4242);

  SUBCASE("binary matrices") {
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t rows = 1 + engine() % 20;
      const std::size_t cols = 1 + engine() % 10;
      BinaryMatrix m(rows, cols);
      for (auto& v : m.data()) v = engine() % 2;
      write_binary_csv(dir.path / "m.csv", m);
      CHECK(read_binary_csv(dir.path / "m.csv") == m);
    }
  }
  SUBCASE("real matrices survive at the printed precision") {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RealMatrix m(7, 5);
    for (auto& v : m.data()) v = unif(engine);
    write_real_csv(dir.path / "r.csv", m);
    const RealMatrix back = read_real_csv(dir.path / "r.csv");
    REQUIRE(back.rows() == m.rows());
    for (std::size_t idx = 0; idx < m.data().size(); ++idx) {
      CHECK(back.data()[idx] == doctest::Approx(m.data()[idx]).epsilon(1e-6));
    }
  }
  SUBCASE("draw stacks") {
    QSampleArray draws;
    for (int t = 0; t < 6; ++t) {
      BinaryMatrix m(4, 3);
      for (auto& v : m.data()) v = engine() % 2;
      draws.push_back(std::move(m));
    }
    write_draw_stack_csv(dir.path / "draws.csv", draws);
    CHECK(read_draw_stack_csv(dir.path / "draws.csv", 4, 3) == draws);
  }
  SUBCASE("bad files raise io errors") {
    CHECK_THROWS_AS(read_binary_csv(dir.path / "missing.csv"), IoError);
    std::ofstream(dir.path / "bad.csv") << "1,0\n0\n";
    CHECK_THROWS_AS(read_binary_csv(dir.path / "bad.csv"), IoError);
    std::ofstream(dir.path / "two.csv") << "1,2\n";
    CHECK_THROWS_AS(read_binary_csv(dir.path / "two.csv"), IoError);
  }
}

TEST_CASE("cmd_simulate writes the dataset and manifest") {
  SUBCASE("complete-design run writes the full dataset") {
    TempDir dir("sim1");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 500\nrho = 0.1\nrule = zero\ng = 0.2\ns = 0.2\nseed = 42\nq_fixture = qmatrix_I\n");
    cmd_simulate(cfg, dir.path);

    const BinaryMatrix responses = read_binary_csv(dir.path / "responses.csv");
    CHECK(responses.rows() == 500);
    CHECK(responses.cols() == 15);
    const BinaryMatrix alpha = read_binary_csv(dir.path / "alpha_true.csv");
    CHECK(alpha.rows() == 500);
    CHECK(alpha.cols() == 4);
    CHECK(read_binary_csv(dir.path / "q_true.csv") ==
          load_fixture_qmatrix("qmatrix_I").matrix());
    CHECK(fs::exists(dir.path / "manifest.json"));
    const std::string manifest = slurp(dir.path / "manifest.json");
    CHECK(manifest.find("\"command\": \"simulate\"") != std::string::npos);
  }
  SUBCASE("single examinee") {
    TempDir dir("sim_n1");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 1\nrho = 0.0\ng = 0.2\ns = 0.2\nq_fixture = qmatrix_II\n");
    cmd_simulate(cfg, dir.path);
    CHECK(read_binary_csv(dir.path / "responses.csv").rows() == 1);
  }
  SUBCASE("rho at the positive-definite boundary fails") {
    TempDir dir("sim_rho");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 10\nrho = 1.0\ng = 0.2\ns = 0.2\nq_fixture = qmatrix_I\n");
    CHECK_THROWS_AS(cmd_simulate(cfg, dir.path), InvalidInputError);
  }
  SUBCASE("dimension keys are cross-checked") {
    TempDir dir("sim_dims");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 10\nrho = 0.1\ng = 0.2\ns = 0.2\nq_fixture = qmatrix_I\nj = 15\nk = 5\n");
    CHECK_THROWS_AS(cmd_simulate(cfg, dir.path), InvalidInputError);
  }
}

TEST_CASE("cmd_fit") {
  TempDir data_dir("fit_data");
  const KeyValueConfig sim_cfg = KeyValueConfig::parse_string(
      "n = 80\nrho = 0.1\nrule = zero\ng = 0.2\ns = 0.2\nseed = 7\nq_fixture = qmatrix_I\n");
  cmd_simulate(sim_cfg, data_dir.path);
  const fs::path responses = data_dir.path / "responses.csv";

  SUBCASE("known-Q mode returns the supplied matrix exactly") {
    TempDir out("fit_known");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "k = 4\niterations = 20\nburn_in = 10\nchains = 2\nseed = 11\nq_known = true\n"
        "q_fixture = qmatrix_I\n");
    cmd_fit(cfg, responses, out.path, false);
    const RealMatrix mean = read_real_csv(out.path / "q_mean.csv");
    const QMatrix truth = load_fixture_qmatrix("qmatrix_I");
    for (std::size_t j = 0; j < 15; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(mean(j, k) == doctest::Approx(static_cast<double>(truth(j, k))));
      }
    }
    CHECK(fs::exists(out.path / "params_summary.csv"));
    const std::string manifest = slurp(out.path / "manifest.json");
    CHECK(manifest.find("\"relabel\"") != std::string::npos);
  }
  SUBCASE("same seed gives byte-identical estimates") {
    TempDir out_a("fit_a");
    TempDir out_b("fit_b");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "k = 4\niterations = 15\nburn_in = 15\nchains = 3\nseed = 99\n");
    cmd_fit(cfg, responses, out_a.path, true);
    cmd_fit(cfg, responses, out_b.path, true);
    CHECK(slurp(out_a.path / "q_mean.csv") == slurp(out_b.path / "q_mean.csv"));
    CHECK(slurp(out_a.path / "q_mean_raw.csv") == slurp(out_b.path / "q_mean_raw.csv"));
    CHECK(slurp(out_a.path / "params_summary.csv") == slurp(out_b.path / "params_summary.csv"));
    CHECK(slurp(out_a.path / "q_draws.csv") == slurp(out_b.path / "q_draws.csv"));
  }
  SUBCASE("q_known without a Q source is invalid") {
    TempDir out("fit_bad");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "k = 4\niterations = 5\nq_known = true\n");
    CHECK_THROWS_AS(cmd_fit(cfg, responses, out.path, false), InvalidInputError);
  }
  SUBCASE("draw dumps round trip") {
    TempDir out("fit_draws");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "k = 4\niterations = 8\nburn_in = 8\nchains = 2\nseed = 5\n");
    cmd_fit(cfg, responses, out.path, true);
    const QSampleArray raw = read_draw_stack_csv(out.path / "q_draws.csv", 15, 4);
    CHECK(raw.size() == 16);
    const QSampleArray aligned = read_draw_stack_csv(out.path / "q_draws_relabeled.csv", 15, 4);
    CHECK(aligned.size() == 16);
  }
}

TEST_CASE("cmd_score") {
  TempDir dir("score");
  const QMatrix truth = load_fixture_qmatrix("qmatrix_I");
  write_binary_csv(dir.path / "truth.csv", truth.matrix());

  SUBCASE("estimate equal to the truth scores 1 on both rates") {
    RealMatrix est(15, 4);
    for (std::size_t j = 0; j < 15; ++j) {
      for (std::size_t k = 0; k < 4; ++k) est(j, k) = truth(j, k);
    }
    write_real_csv(dir.path / "est.csv", est);
    std::ostringstream out;
    const RecoveryReport report =
        cmd_score(dir.path / "est.csv", dir.path / "truth.csv", dir.path, out);
    CHECK(report.delta_q == doctest::Approx(1.0));
    CHECK(report.delta_q_rounded == doctest::Approx(1.0));
    CHECK(out.str() == "delta_q 1.000000\ndelta_q_rounded 1.000000\n");
    CHECK(fs::exists(dir.path / "per_entry_error.csv"));
  }
  SUBCASE("all 0.5 scores one half on the raw rate") {
    write_real_csv(dir.path / "half.csv", RealMatrix(15, 4, 0.5));
    std::ostringstream out;
    const RecoveryReport report =
        cmd_score(dir.path / "half.csv", dir.path / "truth.csv", std::nullopt, out);
    CHECK(report.delta_q == doctest::Approx(0.5));
  }
  SUBCASE("shape mismatch exits with a diagnostic") {
    write_real_csv(dir.path / "bad.csv", RealMatrix(3, 3, 0.5));
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_score(dir.path / "bad.csv", dir.path / "truth.csv", std::nullopt, out),
                    InvalidInputError);
  }
}

TEST_CASE("cmd_sweep") {
  SUBCASE("one-cell grid with two replications") {
    TempDir out("sweep_small");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 40\nrho = 0.1\nreplications = 2\nrule = zero\ng = 0.2\ns = 0.2\n"
        "iterations = 10\nburn_in = 10\nchains = 2\nseed = 17\nq_fixture = qmatrix_I\n");
    cmd_sweep(cfg, out.path, 1);

    const std::string results = slurp(out.path / "sweep_results.csv");
    CHECK(results.find("n,rho,replications,status") == 0);
    CHECK(results.find("40,0.100000,2,ok") != std::string::npos);

    std::istringstream detail(slurp(out.path / "sweep_detail.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(detail, line)) ++rows;
    CHECK(rows == 3);  // header + 2 replications
  }
  SUBCASE("zero replications is an error") {
    TempDir out("sweep_zero");
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 40\nrho = 0.1\nreplications = 0\ng = 0.2\ns = 0.2\n"
        "iterations = 5\nq_fixture = qmatrix_I\n");
    CHECK_THROWS_AS(cmd_sweep(cfg, out.path, 1), InvalidInputError);
  }
}
