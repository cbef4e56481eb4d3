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

#include "csense/fss.hpp"

namespace csense {

std::string to_string(FssPolicy p) {
  switch (p) {
    case FssPolicy::kOpenLoop: return "open_loop";
    case FssPolicy::kCausalChernoff: return "causal";
    case FssPolicy::kMismatched: return "mismatched";
  }
  return "?";
}

void FssConfig::validate(int num_controls) const {
  if (n <= 0) throw ModelError("fss config: n must be positive");
  if (policy == FssPolicy::kOpenLoop) {
    if (static_cast<int>(open_loop_q.weights.size()) != num_controls) {
      throw ModelError("fss config: open-loop strategy length mismatch");
    }
  }
  if (policy == FssPolicy::kMismatched) {
    if (!(eta > 0.0)) throw ModelError("fss config: eta must be positive");
    if (!(eps_smooth > 0.0 && eps_smooth < 1.0)) {
      throw ModelError("fss config: eps_smooth must lie in (0, 1)");
    }
  }
}

FssPlan::FssPlan(const SensingModel& model, const FssConfig& config)
    : config_(config) {
  config_.validate(model.num_controls());
  if (config_.policy == FssPolicy::kOpenLoop) {
    schedule_ = open_loop_schedule(config_.open_loop_q, config_.n);
  } else if (config_.policy == FssPolicy::kMismatched) {
    smoothed_ = mismatched_smooth(model, config_.eps_smooth);
  }
}

int run_fss_trial(const SensingModel& model, const PolicyTables& tables,
                  const FssPlan& plan, int true_hypothesis, TrialRng& rng) {
  const FssConfig& config = plan.config();
  if (true_hypothesis < 0 || true_hypothesis >= model.num_hypotheses()) {
    throw ModelError("run_fss_trial: invalid true hypothesis");
  }
  switch (config.policy) {
    case FssPolicy::kOpenLoop: {
      TestState state(model.num_hypotheses());
      for (int k = 0; k < config.n; ++k) {
        const int u = plan.schedule()[k];
        const int y = sample_index(tables.observation_cdf(true_hypothesis, u),
                                   rng.uniform(k, 1));
        state.update(model, u, y);
      }
      return state.ml_index();
    }
    case FssPolicy::kCausalChernoff: {
      TestState state(model.num_hypotheses());
      for (int k = 0; k < config.n; ++k) {
        const int u = tables.fss_causal_control(state.ml_index());
        const int y = sample_index(tables.observation_cdf(true_hypothesis, u),
                                   rng.uniform(k, 1));
        state.update(model, u, y);
      }
      return state.ml_index();
    }
    case FssPolicy::kMismatched: {
      MismatchedState state(model.num_hypotheses());
      for (int k = 0; k < config.n; ++k) {
        const int u = mismatched_control(model, *plan.smoothed(), state.nu,
                                         config.eta, config.eps_smooth);
        const int y = sample_index(tables.observation_cdf(true_hypothesis, u),
                                   rng.uniform(k, 1));
        state.update(*plan.smoothed(), u, y);
      }
      return state.map_index();
    }
  }
  throw ModelError("run_fss_trial: unknown policy");
}

}  // namespace csense
