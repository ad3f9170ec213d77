#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dinaq/matrix.hpp"
#include "dinaq/rng.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

/// Full parameter state of one chain between sweeps.
struct ChainState {
  AttributeMatrix alpha;
  ItemParams params;
  QMatrix q;
  SimplexVector theta;  // length 2^K
};

struct ChainConfig {
  int k = 1;                    // attribute count
  int iterations = 1;           // retained draws per chain
  std::optional<int> burn_in;   // discarded sweeps; defaults to `iterations`
                                // (drop the first half of each chain)
  int chains = 1;
  RngSeed seed = 0;
  bool q_known = false;

  int resolved_burn_in() const { return burn_in.value_or(iterations); }
};

/// Stack of per-iteration Q-matrix draws.
using QSampleArray = std::vector<BinaryMatrix>;

struct PosteriorDraws {
  QSampleArray q_draws;     // T matrices, J x K
  RealMatrix guess_draws;   // T x J
  RealMatrix slip_draws;    // T x J
  RealMatrix theta_draws;   // T x 2^K
  RealMatrix alpha_mean;    // I x K, mean over retained sweeps

  friend bool operator==(const PosteriorDraws&, const PosteriorDraws&) = default;
};

/// Success/failure tallies behind the closed-form guess and slip posteriors:
/// guess ~ Beta(1 + guess_success, 1 + guess_fail),
/// slip  ~ Beta(1 + slip_success, 1 + slip_fail).
struct ItemParamCounts {
  std::int64_t guess_success = 0;  // eta = 0, answered correctly
  std::int64_t guess_fail = 0;     // eta = 0, answered incorrectly
  std::int64_t slip_success = 0;   // eta = 1, answered incorrectly
  std::int64_t slip_fail = 0;      // eta = 1, answered correctly
};

ItemParamCounts item_param_counts(const ResponseMatrix& y, const AttributeMatrix& alpha,
                                  const QMatrix& q, std::size_t item);

/// Dirichlet(1 + n_1, ..., 1 + n_M) draw from the pattern occupancy counts.
SimplexVector update_theta(const AttributeMatrix& alpha, Rng& rng);

/// Posterior over the 2^K mastery patterns for one examinee.
SimplexVector attribute_posterior(std::span<const std::uint8_t> y_row, const QMatrix& q,
                                  const ItemParams& params, std::span<const double> theta);

/// Redraws every examinee's mastery pattern from its full conditional.
AttributeMatrix update_attributes(const ResponseMatrix& y, const QMatrix& q,
                                  const ItemParams& params, std::span<const double> theta,
                                  Rng& rng);

/// Redraws guess then slip for every item from their truncated Beta full
/// conditionals; the output satisfies 1 - slip > guess.
ItemParams update_item_params(const ResponseMatrix& y, const AttributeMatrix& alpha,
                              const QMatrix& q, const ItemParams& current, Rng& rng);

/// Redraws item `item`'s Q-row: samples the entry inclusion probabilities
/// phi_k ~ Beta(1 + q_prev[k], 2 - q_prev[k]), then draws one of the
/// 2^K - 1 admissible rows from prior x likelihood.
std::vector<std::uint8_t> update_q_row(std::size_t item, const ResponseMatrix& y,
                                       const AttributeMatrix& alpha, const ItemParams& params,
                                       std::span<const std::uint8_t> q_prev_row, Rng& rng);

/// Q-row kernel with the inclusion probabilities held fixed.
std::vector<std::uint8_t> update_q_row_given_phi(std::size_t item, const ResponseMatrix& y,
                                                 const AttributeMatrix& alpha,
                                                 const ItemParams& params,
                                                 std::span<const double> phi, Rng& rng);

/// Diffuse random starting point: Bernoulli(0.5) mastery, Uniform(0, 0.4)
/// guess/slip, uniform Q-rows and pattern probabilities. `q_override`
/// replaces the random Q when given.
ChainState random_initial_state(const ResponseMatrix& y, int k, Rng& rng,
                                const std::optional<QMatrix>& q_override = {});

/// Called after each completed sweep (burn-in included), with the sweep
/// index and the state it produced.
using SweepObserver = std::function<void(int sweep, const ChainState& state)>;

/// Runs one chain: burn_in + iterations sweeps of
///   theta -> attributes -> item params -> Q-rows (unless q_known),
/// retaining the final `iterations` draws. Deterministic given the seed;
/// uses substream 0 of cfg.seed so a 1-chain run_chains matches exactly.
PosteriorDraws run_chain(const ResponseMatrix& y, const ChainConfig& cfg,
                         const std::optional<ChainState>& init = {},
                         const std::optional<QMatrix>& fixture = {},
                         const SweepObserver& observer = {});

/// Runs cfg.chains independent chains on substreams 0..chains-1, each from
/// its own random starting point. `q` is the fixed Q-matrix when
/// cfg.q_known, and the shared initial Q-row state otherwise.
std::vector<PosteriorDraws> run_chains(const ResponseMatrix& y, const ChainConfig& cfg,
                                       const std::optional<QMatrix>& q = {});

/// Pools retained draws across chains (the mixed second halves).
PosteriorDraws concat_chains(const std::vector<PosteriorDraws>& chains);

}  // namespace dinaq
