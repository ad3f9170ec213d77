#pragma once

#include <optional>

#include "dinaq/metrics.hpp"
#include "dinaq/relabel.hpp"
#include "dinaq/sampler.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

struct EstimationResult {
  PosteriorDraws pooled;   // retained draws mixed across chains
  RelabelResult relabel;   // column alignment of the pooled Q draws
  DrawSummary summary;     // parameter summaries (mean_q is the raw mean)
};

/// End-to-end estimation: run the chains, pool the retained halves, relabel
/// the Q draws, and summarize. `q` is the fixed matrix under cfg.q_known and
/// an optional shared initial value otherwise.
EstimationResult estimate_qmatrix(const ResponseMatrix& y, const ChainConfig& cfg,
                                  const std::optional<QMatrix>& q = {});

}  // namespace dinaq
