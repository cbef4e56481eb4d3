// Copyright 2026 The csense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csense/montecarlo.hpp"

#include <cmath>
#include <thread>

namespace csense {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Integer accumulators only; merging across workers is order-free.
struct TrialCounts {
  std::vector<std::int64_t> decisions;
  std::int64_t truncated = 0;
  std::uint64_t sum_n = 0;
  unsigned __int128 sumsq_n = 0;

  explicit TrialCounts(int m) : decisions(m, 0) {}

  void merge(const TrialCounts& other) {
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      decisions[i] += other.decisions[i];
    }
    truncated += other.truncated;
    sum_n += other.sum_n;
    sumsq_n += other.sumsq_n;
  }
};

template <typename TrialFn>
TrialCounts run_hypothesis(int m, std::int64_t trials, int threads,
                           const TrialFn& trial_fn) {
  const int workers = static_cast<int>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(threads, trials)));
  std::vector<TrialCounts> partial(workers, TrialCounts(m));
  const std::int64_t chunk = (trials + workers - 1) / workers;
  auto body = [&](int w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(trials, lo + chunk);
    for (std::int64_t t = lo; t < hi; ++t) {
      trial_fn(static_cast<std::uint32_t>(t), partial[w]);
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }
  TrialCounts total(m);
  for (const TrialCounts& p : partial) total.merge(p);
  return total;
}

HypothesisStats finalize(const TrialCounts& counts, int hypothesis,
                         std::int64_t trials, bool sequential) {
  HypothesisStats stats;
  stats.decision_counts = counts.decisions;
  stats.truncated = counts.truncated;
  std::int64_t errors = 0;
  for (std::size_t j = 0; j < counts.decisions.size(); ++j) {
    if (static_cast<int>(j) != hypothesis) errors += counts.decisions[j];
  }
  stats.error = binomial_estimate(errors, trials);
  if (sequential) {
    const std::int64_t used = trials - counts.truncated;
    if (used > 0) {
      const double mean = static_cast<double>(counts.sum_n) / used;
      stats.mean_stopping_time = mean;
      if (used > 1) {
        const double sumsq = static_cast<double>(counts.sumsq_n);
        const double var =
            (sumsq - mean * static_cast<double>(counts.sum_n)) / (used - 1);
        stats.se_stopping_time = var > 0.0 ? std::sqrt(var / used) : 0.0;
      }
    }
  }
  return stats;
}

}  // namespace

ErrorEstimate binomial_estimate(std::int64_t count, std::int64_t trials) {
  ErrorEstimate e;
  e.count = count;
  e.trials = trials;
  if (trials <= 0) return e;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(count) / n;
  e.estimate = p;
  if (count == 0) {
    e.ci_lo = 0.0;
    e.ci_hi = std::min(1.0, 3.0 / n);
    return e;
  }
  if (count == trials) {
    e.ci_lo = std::max(0.0, 1.0 - 3.0 / n);
    e.ci_hi = 1.0;
    return e;
  }
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  e.ci_lo = std::max(0.0, center - half);
  e.ci_hi = std::min(1.0, center + half);
  return e;
}

SimReport estimate_fss(const SensingModel& model, const FssConfig& config,
                       std::int64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw ModelError("estimate_fss: trials must be >= 1");
  const PolicyTables tables(model);
  const FssPlan plan(model, config);
  const int m = model.num_hypotheses();
  SimReport report;
  report.trials_per_hypothesis = trials;
  report.seed = seed;
  report.config_echo =
      "fss policy=" + to_string(config.policy) + " n=" + std::to_string(config.n);
  for (int i = 0; i < m; ++i) {
    auto trial_fn = [&, i](std::uint32_t t, TrialCounts& acc) {
      TrialRng rng(seed, static_cast<std::uint32_t>(i), t);
      const int decision = run_fss_trial(model, tables, plan, i, rng);
      ++acc.decisions[decision];
    };
    report.per_hypothesis.push_back(
        finalize(run_hypothesis(m, trials, threads, trial_fn), i, trials,
                 /*sequential=*/false));
  }
  return report;
}

SimReport estimate_sequential(const SensingModel& model,
                              const SequentialConfig& config,
                              std::int64_t trials, std::uint64_t seed,
                              int threads) {
  if (trials < 1) throw ModelError("estimate_sequential: trials must be >= 1");
  config.validate(model.num_hypotheses());
  const PolicyTables tables(model);
  const int m = model.num_hypotheses();
  SimReport report;
  report.trials_per_hypothesis = trials;
  report.seed = seed;
  report.config_echo = "seq variant=" + to_string(config.variant) +
                       " c=" + std::to_string(config.c) +
                       " a=" + std::to_string(config.a) +
                       " max_steps=" + std::to_string(config.max_steps);
  for (int i = 0; i < m; ++i) {
    auto trial_fn = [&, i](std::uint32_t t, TrialCounts& acc) {
      TrialRng rng(seed, static_cast<std::uint32_t>(i), t);
      const TrialOutcome outcome = run_trial(model, tables, i, config, rng);
      ++acc.decisions[outcome.decision];
      if (outcome.truncated) {
        ++acc.truncated;
      } else {
        acc.sum_n += static_cast<std::uint64_t>(outcome.stopping_time);
        acc.sumsq_n += static_cast<unsigned __int128>(outcome.stopping_time) *
                       static_cast<unsigned __int128>(outcome.stopping_time);
      }
    };
    report.per_hypothesis.push_back(
        finalize(run_hypothesis(m, trials, threads, trial_fn), i, trials,
                 /*sequential=*/true));
  }

  report.prior = config.prior.empty()
                     ? std::vector<double>(m, 1.0 / m)
                     : config.prior;
  for (int i = 0; i < m; ++i) {
    RiskEstimate risk;
    double variance = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double frac =
          static_cast<double>(report.per_hypothesis[j].decision_counts[i]) /
          static_cast<double>(trials);
      risk.estimate += report.prior[j] * frac;
      variance += report.prior[j] * report.prior[j] * frac * (1.0 - frac) /
                  static_cast<double>(trials);
    }
    risk.half_width = kZ95 * std::sqrt(variance);
    risk.ci_lo = std::max(0.0, risk.estimate - risk.half_width);
    risk.ci_hi = std::min(1.0, risk.estimate + risk.half_width);
    report.risks.push_back(risk);
  }
  return report;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw ModelError("fit_exponent: need at least 3 points");
  }
  std::vector<std::pair<double, double>> usable;
  int excluded = 0;
  for (const auto& [n, err] : points) {
    if (err > 0.0) {
      usable.push_back({n, -std::log(err)});
    } else {
      ++excluded;
    }
  }
  if (usable.size() < 2) {
    throw ModelError("fit_exponent: fewer than 2 usable points after "
                     "excluding zero error estimates");
  }
  const double count = static_cast<double>(usable.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : usable) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  ExponentFit fit;
  fit.excluded_points = excluded;
  if (sxx <= 0.0) throw ModelError("fit_exponent: degenerate n grid");
  fit.slope = sxy / sxx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 1e-30 ? std::max(0.0, 1.0 - ss_res / syy)
                              : (std::abs(ss_res) <= 1e-30 ? 1.0 : 0.0);
  return fit;
}

}  // namespace csense
