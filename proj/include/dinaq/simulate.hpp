#pragma once

#include <string_view>
#include <vector>

#include "dinaq/matrix.hpp"
#include "dinaq/rng.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

/// How latent normals are cut into mastery indicators.
enum class ThresholdRule {
  zero,      // alpha = 1 iff the latent value is >= 0 (same rate everywhere)
  quantile,  // column k cut at the k/(K+1) normal quantile, so attribute 1
             // is mastered most often and attribute K least often
};

struct SimConfig {
  int n = 0;
  QMatrix q_true;
  double rho = 0.0;  // common pairwise attribute correlation, in [0, 1)
  std::vector<double> g_true;
  std::vector<double> s_true;
  ThresholdRule rule = ThresholdRule::zero;
  RngSeed seed = 0;
};

void validate_sim_config(const SimConfig& cfg);

/// Exchangeable correlation matrix with unit diagonal and off-diagonal rho.
RealMatrix correlation_matrix(int k, double rho);

/// Upper-triangular factor U with U^T U = sigma.
RealMatrix cholesky_upper(const RealMatrix& sigma);

/// n x k matrix of standard normal rows with common pairwise correlation
/// rho, built as iid normals times the Cholesky factor.
RealMatrix gen_correlated_normals(int n, int k, double rho, Rng& rng);

/// Correlated mastery matrix per the config's threshold rule.
AttributeMatrix gen_attributes(const SimConfig& cfg);
AttributeMatrix gen_attributes(const SimConfig& cfg, Rng& rng);

/// Binary responses: each cell is 1 with the DINA response probability,
/// realized by comparing one uniform draw per cell.
ResponseMatrix gen_responses(const AttributeMatrix& alpha, const QMatrix& q,
                             const ItemParams& params, Rng& rng);

/// The two bundled simulation Q-matrices ("qmatrix_I": 15 items x 4
/// attributes, complete and balanced; "qmatrix_II": 15 x 5, incomplete
/// and imbalanced).
QMatrix load_fixture_qmatrix(std::string_view name);

struct SimulatedData {
  AttributeMatrix alpha;
  ResponseMatrix responses;
};

/// Attributes plus responses from one seeded stream.
SimulatedData simulate_dataset(const SimConfig& cfg);

}  // namespace dinaq
