#include "dinaq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "dinaq/dina.hpp"
#include "dinaq/distributions.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/patterns.hpp"

namespace dinaq {

namespace {

std::vector<double> log_simplex(std::span<const double> theta) {
  std::vector<double> out(theta.size());
  for (std::size_t m = 0; m < theta.size(); ++m) {
    out[m] = theta[m] > 0.0 ? std::log(theta[m]) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

/// Normalizes log weights in place to probabilities via max subtraction.
void normalize_log_weights(std::vector<double>& weights, const char* who) {
  double max_w = -std::numeric_limits<double>::infinity();
  for (double w : weights) max_w = std::max(max_w, w);
  if (!std::isfinite(max_w)) {
    throw InternalError(std::string(who) + ": every candidate has zero posterior probability");
  }
  double total = 0.0;
  for (double& w : weights) {
    w = std::exp(w - max_w);
    total += w;
  }
  for (double& w : weights) w /= total;
}

SimplexVector posterior_from_table(std::span<const std::uint8_t> y_row,
                                   const PatternItemLogProbs& table,
                                   std::span<const double> log_theta) {
  std::vector<double> weights(table.patterns);
  for (std::size_t code = 0; code < table.patterns; ++code) {
    double ll = log_theta[code];
    const double* lc = table.log_correct.data() + code * table.items;
    const double* li = table.log_incorrect.data() + code * table.items;
    for (std::size_t j = 0; j < table.items; ++j) ll += y_row[j] != 0 ? lc[j] : li[j];
    weights[code] = ll;
  }
  normalize_log_weights(weights, "attribute update");
  return weights;
}

void check_dimensions(const ResponseMatrix& y, const ChainConfig& cfg) {
  if (cfg.k < 1) throw InvalidInputError("chain config: attribute count must be >= 1");
  if (cfg.k > kMaxAttributes) {
    throw UnsupportedConfigError("chain config: attribute count exceeds supported maximum");
  }
  if (cfg.iterations < 1) throw InvalidInputError("chain config: iterations must be >= 1");
  if (cfg.burn_in && *cfg.burn_in < 0) {
    throw InvalidInputError("chain config: burn-in must be non-negative");
  }
  if (cfg.chains < 1) throw InvalidInputError("chain config: chain count must be >= 1");
  if (y.examinees() == 0) throw InvalidInputError("chain config: no responses");
}

}  // namespace

ItemParamCounts item_param_counts(const ResponseMatrix& y, const AttributeMatrix& alpha,
                                  const QMatrix& q, std::size_t item) {
  if (item >= q.items()) throw InvalidInputError("item_param_counts: item index out of range");
  if (y.examinees() != alpha.examinees() || y.items() != q.items() ||
      alpha.attributes() != q.attributes()) {
    throw InvalidInputError("item_param_counts: dimension mismatch");
  }
  const PatternIndex q_mask = pattern_to_index(q.row(item));
  ItemParamCounts counts;
  for (std::size_t i = 0; i < y.examinees(); ++i) {
    const bool ideal = (pattern_to_index(alpha.row(i)) & q_mask) == q_mask;
    const bool correct = y(i, item) != 0;
    if (ideal) {
      (correct ? counts.slip_fail : counts.slip_success) += 1;
    } else {
      (correct ? counts.guess_success : counts.guess_fail) += 1;
    }
  }
  return counts;
}

SimplexVector update_theta(const AttributeMatrix& alpha, Rng& rng) {
  const int k = static_cast<int>(alpha.attributes());
  if (k > kMaxAttributes) {
    throw UnsupportedConfigError("update_theta: attribute count exceeds supported maximum");
  }
  const std::size_t m = std::size_t{1} << k;
  std::vector<double> concentration(m, 1.0);
  for (std::size_t i = 0; i < alpha.examinees(); ++i) {
    concentration[pattern_to_index(alpha.row(i))] += 1.0;
  }
  return sample_dirichlet(concentration, rng);
}

SimplexVector attribute_posterior(std::span<const std::uint8_t> y_row, const QMatrix& q,
                                  const ItemParams& params, std::span<const double> theta) {
  const std::size_t m = std::size_t{1} << q.attributes();
  if (theta.size() != m) throw InvalidInputError("attribute_posterior: theta length must be 2^K");
  if (y_row.size() != q.items()) {
    throw InvalidInputError("attribute_posterior: response row length mismatch");
  }
  const PatternItemLogProbs table = pattern_item_log_probs(q, params);
  return posterior_from_table(y_row, table, log_simplex(theta));
}

AttributeMatrix update_attributes(const ResponseMatrix& y, const QMatrix& q,
                                  const ItemParams& params, std::span<const double> theta,
                                  Rng& rng) {
  const std::size_t m = std::size_t{1} << q.attributes();
  if (theta.size() != m) throw InvalidInputError("update_attributes: theta length must be 2^K");
  if (y.items() != q.items()) throw InvalidInputError("update_attributes: item count mismatch");

  const PatternItemLogProbs table = pattern_item_log_probs(q, params);
  const std::vector<double> log_theta = log_simplex(theta);
  const int k = static_cast<int>(q.attributes());

  BinaryMatrix alpha(y.examinees(), q.attributes());
  for (std::size_t i = 0; i < y.examinees(); ++i) {
    const SimplexVector posterior = posterior_from_table(y.row(i), table, log_theta);
    const PatternIndex code = sample_categorical(posterior, rng);
    alpha.set_row(i, index_to_pattern(code, k));
  }
  return AttributeMatrix(std::move(alpha));
}

ItemParams update_item_params(const ResponseMatrix& y, const AttributeMatrix& alpha,
                              const QMatrix& q, const ItemParams& current, Rng& rng) {
  if (current.guess.size() != q.items()) {
    throw InvalidInputError("update_item_params: current params do not match Q-matrix");
  }
  ItemParams next;
  next.guess.resize(q.items());
  next.slip.resize(q.items());
  for (std::size_t j = 0; j < q.items(); ++j) {
    const ItemParamCounts counts = item_param_counts(y, alpha, q, j);
    // Guess first, truncated by the current slip; slip second, truncated by
    // the fresh guess. The pair always leaves 1 - slip > guess.
    const double g = sample_beta_truncated(1.0 + static_cast<double>(counts.guess_success),
                                           1.0 + static_cast<double>(counts.guess_fail),
                                           1.0 - current.slip[j], rng);
    const double s = sample_beta_truncated(1.0 + static_cast<double>(counts.slip_success),
                                           1.0 + static_cast<double>(counts.slip_fail),
                                           1.0 - g, rng);
    next.guess[j] = g;
    next.slip[j] = s;
  }
  return next;
}

std::vector<std::uint8_t> update_q_row_given_phi(std::size_t item, const ResponseMatrix& y,
                                                 const AttributeMatrix& alpha,
                                                 const ItemParams& params,
                                                 std::span<const double> phi, Rng& rng) {
  const int k = static_cast<int>(alpha.attributes());
  if (phi.size() != static_cast<std::size_t>(k)) {
    throw InvalidInputError("update_q_row: phi length must equal attribute count");
  }
  for (double p : phi) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidInputError("update_q_row: phi entries must lie strictly in (0, 1)");
    }
  }
  if (item >= y.items()) throw InvalidInputError("update_q_row: item index out of range");
  if (y.examinees() != alpha.examinees()) {
    throw InvalidInputError("update_q_row: dimension mismatch");
  }

  const std::size_t m = std::size_t{1} << k;
  const std::size_t h = m - 1;

  // Tally examinees by mastery pattern once; every candidate row's
  // likelihood reduces to the four guess/slip counts.
  std::vector<double> pattern_total(m, 0.0);
  std::vector<double> pattern_correct(m, 0.0);
  double total_correct = 0.0;
  for (std::size_t i = 0; i < y.examinees(); ++i) {
    const PatternIndex code = pattern_to_index(alpha.row(i));
    pattern_total[code] += 1.0;
    if (y(i, item) != 0) {
      pattern_correct[code] += 1.0;
      total_correct += 1.0;
    }
  }
  const double total = static_cast<double>(y.examinees());

  const double log_slip_fail = std::log(1.0 - params.slip[item]);
  const double log_slip = std::log(params.slip[item]);
  const double log_guess = std::log(params.guess[item]);
  const double log_guess_fail = std::log1p(-params.guess[item]);

  std::vector<double> log_phi(phi.size());
  std::vector<double> log_phi_not(phi.size());
  for (std::size_t a = 0; a < phi.size(); ++a) {
    log_phi[a] = std::log(phi[a]);
    log_phi_not[a] = std::log1p(-phi[a]);
  }

  std::vector<double> weights(h);
  for (std::size_t cand = 0; cand < h; ++cand) {
    const PatternIndex mask = static_cast<PatternIndex>(cand + 1);

    double log_prior = 0.0;
    for (int a = 0; a < k; ++a) {
      const bool requires_attr = ((mask >> (k - 1 - a)) & 1u) != 0;
      log_prior += requires_attr ? log_phi[a] : log_phi_not[a];
    }

    double mastery_correct = 0.0;
    double mastery_total = 0.0;
    for (std::size_t code = 0; code < m; ++code) {
      if ((static_cast<PatternIndex>(code) & mask) == mask) {
        mastery_correct += pattern_correct[code];
        mastery_total += pattern_total[code];
      }
    }
    const double mastery_incorrect = mastery_total - mastery_correct;
    const double lacking_correct = total_correct - mastery_correct;
    const double lacking_incorrect = (total - mastery_total) - lacking_correct;

    double loglik = 0.0;
    if (mastery_correct > 0.0) loglik += mastery_correct * log_slip_fail;
    if (mastery_incorrect > 0.0) loglik += mastery_incorrect * log_slip;
    if (lacking_correct > 0.0) loglik += lacking_correct * log_guess;
    if (lacking_incorrect > 0.0) loglik += lacking_incorrect * log_guess_fail;

    weights[cand] = log_prior + loglik;
  }
  normalize_log_weights(weights, "Q-row update");
  const PatternIndex drawn = sample_categorical(weights, rng);
  return index_to_pattern(drawn + 1, k);
}

std::vector<std::uint8_t> update_q_row(std::size_t item, const ResponseMatrix& y,
                                       const AttributeMatrix& alpha, const ItemParams& params,
                                       std::span<const std::uint8_t> q_prev_row, Rng& rng) {
  if (q_prev_row.size() != alpha.attributes()) {
    throw InvalidInputError("update_q_row: previous row length mismatch");
  }
  std::vector<double> phi(q_prev_row.size());
  for (std::size_t a = 0; a < q_prev_row.size(); ++a) {
    const double q_prev = static_cast<double>(q_prev_row[a]);
    phi[a] = sample_beta(1.0 + q_prev, 2.0 - q_prev, rng);
  }
  return update_q_row_given_phi(item, y, alpha, params, phi, rng);
}

ChainState random_initial_state(const ResponseMatrix& y, int k, Rng& rng,
                                const std::optional<QMatrix>& q_override) {
  if (k < 1 || k > kMaxAttributes) {
    throw InvalidInputError("initial state: invalid attribute count");
  }
  const std::size_t m = std::size_t{1} << k;
  const std::size_t items = y.items();

  BinaryMatrix alpha(y.examinees(), static_cast<std::size_t>(k));
  for (auto& cell : alpha.data()) cell = rng.next_uniform() < 0.5 ? 1 : 0;

  ItemParams params;
  params.guess.resize(items);
  params.slip.resize(items);
  for (std::size_t j = 0; j < items; ++j) {
    do {
      params.guess[j] = 0.4 * rng.next_uniform();
      params.slip[j] = 0.4 * rng.next_uniform();
    } while (!(1.0 - params.slip[j] > params.guess[j]));
  }

  QMatrix q = [&] {
    if (q_override) {
      if (q_override->attributes() != static_cast<std::size_t>(k) ||
          q_override->items() != items) {
        throw InvalidInputError("initial state: provided Q-matrix has wrong shape");
      }
      return *q_override;
    }
    BinaryMatrix rows(items, static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < items; ++j) {
      const PatternIndex code = static_cast<PatternIndex>(rng.next_below(m - 1) + 1);
      rows.set_row(j, index_to_pattern(code, k));
    }
    return QMatrix(std::move(rows));
  }();

  SimplexVector theta(m, 1.0 / static_cast<double>(m));
  return ChainState{AttributeMatrix(std::move(alpha)), std::move(params), std::move(q),
                    std::move(theta)};
}

namespace {

PosteriorDraws run_chain_on_stream(const ResponseMatrix& y, const ChainConfig& cfg,
                                   const std::optional<ChainState>& init,
                                   const std::optional<QMatrix>& fixture,
                                   const SweepObserver& observer, std::uint64_t stream) {
  check_dimensions(y, cfg);
  if (cfg.q_known && !fixture && !init) {
    throw InvalidInputError("run_chain: q_known requires a Q-matrix");
  }
  if (fixture && (fixture->items() != y.items() ||
                  fixture->attributes() != static_cast<std::size_t>(cfg.k))) {
    throw InvalidInputError("run_chain: fixture Q-matrix has wrong shape");
  }

  Rng rng = Rng::for_stream(cfg.seed, stream);
  ChainState state = init ? *init : random_initial_state(y, cfg.k, rng, fixture);
  if (state.alpha.examinees() != y.examinees() || state.q.items() != y.items() ||
      state.q.attributes() != static_cast<std::size_t>(cfg.k)) {
    throw InvalidInputError("run_chain: initial state has wrong shape");
  }

  const int burn = cfg.resolved_burn_in();
  const int total_sweeps = burn + cfg.iterations;
  const std::size_t m = std::size_t{1} << cfg.k;

  PosteriorDraws draws;
  draws.q_draws.reserve(static_cast<std::size_t>(cfg.iterations));
  draws.guess_draws = RealMatrix(static_cast<std::size_t>(cfg.iterations), y.items());
  draws.slip_draws = RealMatrix(static_cast<std::size_t>(cfg.iterations), y.items());
  draws.theta_draws = RealMatrix(static_cast<std::size_t>(cfg.iterations), m);
  RealMatrix alpha_sum(y.examinees(), static_cast<std::size_t>(cfg.k));

  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    state.theta = update_theta(state.alpha, rng);
    state.alpha = update_attributes(y, state.q, state.params, state.theta, rng);
    state.params = update_item_params(y, state.alpha, state.q, state.params, rng);
    if (!cfg.q_known) {
      for (std::size_t j = 0; j < state.q.items(); ++j) {
        state.q.set_row(j, update_q_row(j, y, state.alpha, state.params, state.q.row(j), rng));
      }
    }
    if (observer) observer(sweep, state);

    const int kept = sweep - burn;
    if (kept >= 0) {
      draws.q_draws.push_back(state.q.matrix());
      for (std::size_t j = 0; j < y.items(); ++j) {
        draws.guess_draws(static_cast<std::size_t>(kept), j) = state.params.guess[j];
        draws.slip_draws(static_cast<std::size_t>(kept), j) = state.params.slip[j];
      }
      for (std::size_t code = 0; code < m; ++code) {
        draws.theta_draws(static_cast<std::size_t>(kept), code) = state.theta[code];
      }
      for (std::size_t i = 0; i < y.examinees(); ++i) {
        for (std::size_t a = 0; a < static_cast<std::size_t>(cfg.k); ++a) {
          alpha_sum(i, a) += state.alpha(i, a);
        }
      }
    }
  }

  for (double& v : alpha_sum.data()) v /= static_cast<double>(cfg.iterations);
  draws.alpha_mean = std::move(alpha_sum);
  return draws;
}

}  // namespace

PosteriorDraws run_chain(const ResponseMatrix& y, const ChainConfig& cfg,
                         const std::optional<ChainState>& init,
                         const std::optional<QMatrix>& fixture, const SweepObserver& observer) {
  return run_chain_on_stream(y, cfg, init, fixture, observer, 0);
}

std::vector<PosteriorDraws> run_chains(const ResponseMatrix& y, const ChainConfig& cfg,
                                       const std::optional<QMatrix>& q) {
  check_dimensions(y, cfg);
  if (cfg.q_known && !q) throw InvalidInputError("run_chains: q_known requires a Q-matrix");

  // q doubles as the fixed matrix under q_known and as a shared initial
  // value otherwise; everything else starts from each stream's own draw.
  std::vector<std::future<PosteriorDraws>> futures;
  futures.reserve(static_cast<std::size_t>(cfg.chains));
  for (int chain = 0; chain < cfg.chains; ++chain) {
    futures.push_back(std::async(std::launch::async, [&y, &cfg, &q, chain] {
      return run_chain_on_stream(y, cfg, {}, q, {}, static_cast<std::uint64_t>(chain));
    }));
  }
  std::vector<PosteriorDraws> results;
  results.reserve(static_cast<std::size_t>(cfg.chains));
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

PosteriorDraws concat_chains(const std::vector<PosteriorDraws>& chains) {
  if (chains.empty()) throw InvalidInputError("concat_chains: no chains");
  PosteriorDraws out;
  const std::size_t items = chains.front().guess_draws.cols();
  const std::size_t m = chains.front().theta_draws.cols();
  std::size_t total = 0;
  for (const auto& c : chains) total += c.q_draws.size();

  out.guess_draws = RealMatrix(total, items);
  out.slip_draws = RealMatrix(total, items);
  out.theta_draws = RealMatrix(total, m);
  out.alpha_mean = RealMatrix(chains.front().alpha_mean.rows(), chains.front().alpha_mean.cols());
  out.q_draws.reserve(total);

  std::size_t row = 0;
  for (const auto& c : chains) {
    for (std::size_t t = 0; t < c.q_draws.size(); ++t, ++row) {
      out.q_draws.push_back(c.q_draws[t]);
      for (std::size_t j = 0; j < items; ++j) {
        out.guess_draws(row, j) = c.guess_draws(t, j);
        out.slip_draws(row, j) = c.slip_draws(t, j);
      }
      for (std::size_t code = 0; code < m; ++code) {
        out.theta_draws(row, code) = c.theta_draws(t, code);
      }
    }
    for (std::size_t i = 0; i < out.alpha_mean.rows(); ++i) {
      for (std::size_t a = 0; a < out.alpha_mean.cols(); ++a) {
        out.alpha_mean(i, a) += c.alpha_mean(i, a) / static_cast<double>(chains.size());
      }
    }
  }
  return out;
}

}  // namespace dinaq
