#include "dinaq/fit.hpp"

namespace dinaq {

EstimationResult estimate_qmatrix(const ResponseMatrix& y, const ChainConfig& cfg,
                                  const std::optional<QMatrix>& q) {
  const std::vector<PosteriorDraws> chains = run_chains(y, cfg, q);
  PosteriorDraws pooled = concat_chains(chains);
  RelabelResult relabel = relabel_converge(pooled.q_draws);
  DrawSummary summary = summarize_draws(pooled);
  return EstimationResult{std::move(pooled), std::move(relabel), std::move(summary)};
}

}  // namespace dinaq
