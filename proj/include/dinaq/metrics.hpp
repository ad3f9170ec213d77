#pragma once

#include <span>
#include <vector>

#include "dinaq/matrix.hpp"
#include "dinaq/sampler.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

/// Mean entrywise agreement between estimates and the true Q-matrix:
/// mean over replications of 1 - sum|q_hat - q| / (J*K).
double recovery_rate(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true);

/// Same, with every estimate rounded to {0, 1} first; exactly 0.5 rounds up.
double recovery_rate_rounded(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true);

struct RecoveryReport {
  double delta_q = 0.0;
  double delta_q_rounded = 0.0;
  RealMatrix per_entry_error;  // J x K mean |q_hat - q| across replications
  int replications = 0;
};

RecoveryReport recovery_report(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true);

/// -2 * marginal log-likelihood + 2p with p = 2J + 2^K - 1 (guess and slip
/// per item plus the free pattern probabilities).
double aic(const ResponseMatrix& y, const QMatrix& q, const ItemParams& params,
           std::span<const double> theta);

int aic_parameter_count(std::size_t items, std::size_t attributes);

struct ParamSummary {
  double mean = 0.0;
  double lower = 0.0;  // central 95% interval
  double upper = 0.0;
};

struct DrawSummary {
  std::vector<ParamSummary> guess;
  std::vector<ParamSummary> slip;
  std::vector<ParamSummary> theta;
  RealMatrix mean_q;  // raw entrywise mean; relabeled mean comes from relabel
};

DrawSummary summarize_draws(const PosteriorDraws& draws);

/// Central 95% interval plus mean of an unsorted sample.
ParamSummary summarize_sample(std::span<const double> values);

}  // namespace dinaq
