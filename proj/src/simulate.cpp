#include "dinaq/simulate.hpp"

#include <cmath>
#include <string>

#include "dinaq/dina.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/patterns.hpp"
#include "dinaq/special_functions.hpp"

namespace dinaq {

namespace {

// Bundled simulation designs: each attribute of the first matrix appears
// alone, in every pair, in every triple, and once in quadruplet; the second
// is incomplete (no single-attribute items) and imbalanced.
constexpr std::uint8_t kQmatrixI[15][4] = {
    {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0},
    {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1},
    {1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1},
};

constexpr std::uint8_t kQmatrixII[15][5] = {
    {0, 1, 0, 1, 0}, {0, 1, 0, 0, 1}, {0, 0, 1, 1, 0}, {0, 0, 1, 0, 1},
    {0, 0, 0, 1, 1}, {1, 1, 1, 0, 0}, {1, 1, 0, 1, 0}, {1, 1, 0, 0, 1},
    {1, 0, 1, 1, 0}, {1, 0, 1, 0, 1}, {1, 0, 0, 1, 1}, {0, 1, 1, 1, 0},
    {0, 1, 1, 0, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 1, 1},
};

}  // namespace

void validate_sim_config(const SimConfig& cfg) {
  if (cfg.n < 1) throw InvalidInputError("sim config: examinee count must be >= 1");
  if (!(cfg.rho >= 0.0 && cfg.rho < 1.0)) {
    throw InvalidInputError(
        "sim config: correlation must lie in [0, 1); at 1 the correlation matrix is singular");
  }
  if (cfg.g_true.size() != cfg.q_true.items() || cfg.s_true.size() != cfg.q_true.items()) {
    throw InvalidInputError("sim config: guess/slip lengths must equal the item count");
  }
  validate_item_params(ItemParams{cfg.g_true, cfg.s_true});
}

RealMatrix correlation_matrix(int k, double rho) {
  if (k < 1) throw InvalidInputError("correlation matrix: dimension must be >= 1");
  RealMatrix sigma(static_cast<std::size_t>(k), static_cast<std::size_t>(k), rho);
  for (int i = 0; i < k; ++i) sigma(i, i) = 1.0;
  return sigma;
}

RealMatrix cholesky_upper(const RealMatrix& sigma) {
  const std::size_t k = sigma.rows();
  if (k == 0 || sigma.cols() != k) throw InvalidInputError("cholesky: matrix must be square");
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = r + 1; c < k; ++c) {
      if (std::abs(sigma(r, c) - sigma(c, r)) > 1e-12) {
        throw InvalidInputError("cholesky: matrix must be symmetric");
      }
    }
  }

  // Lower factor L with sigma = L L^T, returned transposed.
  RealMatrix lower(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      double sum = sigma(r, c);
      for (std::size_t t = 0; t < c; ++t) sum -= lower(r, t) * lower(c, t);
      if (r == c) {
        if (!(sum > 0.0)) {
          throw DecompositionError("cholesky: matrix is not positive definite");
        }
        lower(r, r) = std::sqrt(sum);
      } else {
        lower(r, c) = sum / lower(c, c);
      }
    }
  }

  RealMatrix upper(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c <= r; ++c) upper(c, r) = lower(r, c);
  }
  return upper;
}

RealMatrix gen_correlated_normals(int n, int k, double rho, Rng& rng) {
  if (n < 1 || k < 1) throw InvalidInputError("correlated normals: n and k must be >= 1");
  const RealMatrix upper = cholesky_upper(correlation_matrix(k, rho));

  RealMatrix latent(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  std::vector<double> iid(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < latent.rows(); ++i) {
    for (double& v : iid) v = rng.next_normal();
    // Row times upper-triangular factor keeps the target correlation.
    for (std::size_t c = 0; c < latent.cols(); ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r <= c; ++r) sum += iid[r] * upper(r, c);
      latent(i, c) = sum;
    }
  }
  return latent;
}

AttributeMatrix gen_attributes(const SimConfig& cfg, Rng& rng) {
  validate_sim_config(cfg);
  const int k = static_cast<int>(cfg.q_true.attributes());
  const RealMatrix latent = gen_correlated_normals(cfg.n, k, cfg.rho, rng);

  // Thresholds live on the latent-normal scale: 0 under the zero rule,
  // the k/(K+1) standard normal quantile per column under the quantile
  // rule, which makes the column-k mastery rate 1 - k/(K+1).
  std::vector<double> cuts(static_cast<std::size_t>(k), 0.0);
  if (cfg.rule == ThresholdRule::quantile) {
    for (int a = 0; a < k; ++a) {
      cuts[static_cast<std::size_t>(a)] =
          normal_quantile(static_cast<double>(a + 1) / static_cast<double>(k + 1));
    }
  }

  BinaryMatrix alpha(latent.rows(), latent.cols());
  for (std::size_t i = 0; i < latent.rows(); ++i) {
    for (std::size_t a = 0; a < latent.cols(); ++a) {
      alpha(i, a) = latent(i, a) >= cuts[a] ? 1 : 0;
    }
  }
  return AttributeMatrix(std::move(alpha));
}

AttributeMatrix gen_attributes(const SimConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_attributes(cfg, rng);
}

ResponseMatrix gen_responses(const AttributeMatrix& alpha, const QMatrix& q,
                             const ItemParams& params, Rng& rng) {
  if (alpha.attributes() != q.attributes()) {
    throw InvalidInputError("gen_responses: attribute count mismatch");
  }
  validate_item_params(params);
  if (params.guess.size() != q.items()) {
    throw InvalidInputError("gen_responses: item params do not match Q-matrix");
  }

  BinaryMatrix y(alpha.examinees(), q.items());
  for (std::size_t i = 0; i < alpha.examinees(); ++i) {
    for (std::size_t j = 0; j < q.items(); ++j) {
      const double p = response_prob(eta(alpha.row(i), q.row(j)), params.guess[j], params.slip[j]);
      y(i, j) = rng.next_uniform() < p ? 1 : 0;
    }
  }
  return ResponseMatrix(std::move(y));
}

QMatrix load_fixture_qmatrix(std::string_view name) {
  if (name == "qmatrix_I") {
    BinaryMatrix m(15, 4);
    for (std::size_t j = 0; j < 15; ++j) {
      for (std::size_t k = 0; k < 4; ++k) m(j, k) = kQmatrixI[j][k];
    }
    return QMatrix(std::move(m));
  }
  if (name == "qmatrix_II") {
    BinaryMatrix m(15, 5);
    for (std::size_t j = 0; j < 15; ++j) {
      for (std::size_t k = 0; k < 5; ++k) m(j, k) = kQmatrixII[j][k];
    }
    return QMatrix(std::move(m));
  }
  throw InvalidInputError("unknown fixture Q-matrix '" + std::string(name) +
                          "'; expected qmatrix_I or qmatrix_II");
}

SimulatedData simulate_dataset(const SimConfig& cfg) {
  validate_sim_config(cfg);
  Rng rng(cfg.seed);
  AttributeMatrix alpha = gen_attributes(cfg, rng);
  ResponseMatrix responses =
      gen_responses(alpha, cfg.q_true, ItemParams{cfg.g_true, cfg.s_true}, rng);
  return SimulatedData{std::move(alpha), std::move(responses)};
}

}  // namespace dinaq
