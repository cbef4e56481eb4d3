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

#include "csense/sequential.hpp"

#include <cmath>
#include <limits>

namespace csense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(SequentialVariant v) {
  switch (v) {
    case SequentialVariant::kChernoff: return "chernoff";
    case SequentialVariant::kModified: return "modified";
    case SequentialVariant::kRiskConstrained: return "risk_constrained";
  }
  return "?";
}

void SequentialConfig::validate(int num_hypotheses) const {
  if (max_steps <= 0) throw ModelError("sequential config: max_steps must be positive");
  if (variant == SequentialVariant::kChernoff ||
      variant == SequentialVariant::kModified) {
    if (!(c > 0.0 && c <= 1.0)) {
      throw ModelError("sequential config: c must lie in (0, 1]");
    }
  }
  if (variant == SequentialVariant::kModified ||
      variant == SequentialVariant::kRiskConstrained) {
    if (!(a > 1.0)) throw ModelError("sequential config: a must exceed 1");
  }
  if (variant == SequentialVariant::kRiskConstrained) {
    if (static_cast<int>(risk_bounds.size()) != num_hypotheses) {
      throw ModelError("sequential config: one risk bound per hypothesis required");
    }
    for (double r : risk_bounds) {
      if (!(r > 0.0)) throw ModelError("sequential config: risk bounds must be positive");
    }
    if (!prior.empty()) {
      if (static_cast<int>(prior.size()) != num_hypotheses) {
        throw ModelError("sequential config: prior length mismatch");
      }
      double sum = 0.0;
      for (double p : prior) {
        if (!(p > 0.0)) throw ModelError("sequential config: prior must have full support");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ModelError("sequential config: prior must sum to 1");
      }
    }
  }
}

double margin(const TestState& state) {
  if (state.loglik.size() < 2) throw ModelError("margin: need at least 2 hypotheses");
  const int leader = state.ml_index();
  const double top = state.loglik[leader];
  double runner_up = -kInf;
  for (int j = 0; j < static_cast<int>(state.loglik.size()); ++j) {
    if (j != leader && state.loglik[j] > runner_up) runner_up = state.loglik[j];
  }
  if (runner_up == -kInf) return kInf;
  return top - runner_up;
}

bool should_stop(const TestState& state, const SequentialConfig& config) {
  if (config.variant != SequentialVariant::kRiskConstrained) {
    return margin(state) >= -std::log(config.c);
  }
  const int m = static_cast<int>(state.loglik.size());
  const int leader = state.ml_index();
  const double pi_leader =
      config.prior.empty() ? 1.0 / m : config.prior[leader];
  double weighted_runner_up = -kInf;
  for (int j = 0; j < m; ++j) {
    if (j == leader) continue;
    const double pi_j = config.prior.empty() ? 1.0 / m : config.prior[j];
    weighted_runner_up =
        std::max(weighted_runner_up, std::log(pi_j) + state.loglik[j]);
  }
  const double lhs = std::log(pi_leader) + state.loglik[leader] - weighted_runner_up;
  const double threshold =
      std::log((m - 1) * pi_leader / config.risk_bounds[leader]);
  return lhs >= threshold;
}

int next_control(const TestState& state, const SequentialConfig& config,
                 const PolicyTables& tables, int num_controls, double u01) {
  if (config.variant != SequentialVariant::kChernoff &&
      is_exploration_time(config.a, state.count)) {
    const int u = static_cast<int>(u01 * num_controls);
    return u >= num_controls ? num_controls - 1 : u;
  }
  return sample_index(tables.strategy_cdf(state.ml_index()), u01);
}

TrialOutcome run_trial(const SensingModel& model, const PolicyTables& tables,
                       int true_hypothesis, const SequentialConfig& config,
                       TrialRng& rng) {
  config.validate(model.num_hypotheses());
  if (true_hypothesis < 0 || true_hypothesis >= model.num_hypotheses()) {
    throw ModelError("run_trial: invalid true hypothesis");
  }
  TestState state(model.num_hypotheses());
  TrialOutcome outcome;
  outcome.control_counts.assign(model.num_controls(), 0);
  for (;;) {
    const auto step = static_cast<std::uint64_t>(state.count);
    const int u = next_control(state, config, tables, model.num_controls(),
                               rng.uniform(step, 0));
    const int y = sample_index(tables.observation_cdf(true_hypothesis, u),
                               rng.uniform(step, 1));
    state.update(model, u, y);
    ++outcome.control_counts[u];
    if (should_stop(state, config)) break;
    if (state.count >= config.max_steps) {
      outcome.truncated = true;
      break;
    }
  }
  outcome.decision = state.ml_index();
  outcome.stopping_time = state.count;
  return outcome;
}

}  // namespace csense
