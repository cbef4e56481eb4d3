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

#ifndef CSENSE_SEQUENTIAL_HPP_
#define CSENSE_SEQUENTIAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "csense/model.hpp"
#include "csense/policies.hpp"
#include "csense/rng.hpp"

namespace csense {

enum class SequentialVariant { kChernoff, kModified, kRiskConstrained };

std::string to_string(SequentialVariant v);

/// Configuration for the three sequential tests.
///  - chernoff: maximin control given the ML index; stop when the leader's
///    log-likelihood margin reaches -log c.
///  - modified: same, but the control after k samples is uniform whenever k
///    is an exploration time ceil(a^l); removes the positivity assumption.
///  - risk_constrained: modified control policy with per-hypothesis stopping
///    thresholds log((M-1) pi(i) / rbar_i) on the prior-weighted margin.
struct SequentialConfig {
  SequentialVariant variant = SequentialVariant::kChernoff;
  double c = 1e-3;                  // chernoff / modified threshold parameter
  double a = 1.5;                   // exploration base (modified / risk)
  std::vector<double> prior;        // risk variant; empty = uniform
  std::vector<double> risk_bounds;  // risk variant, all > 0
  std::int64_t max_steps = 1000000; // safety cap, reported as truncation

  void validate(int num_hypotheses) const;
};

struct TrialOutcome {
  int decision = 0;
  std::int64_t stopping_time = 0;
  bool truncated = false;
  std::vector<std::int64_t> control_counts;
};

/// loglik margin of the ML hypothesis over the best competitor; +infinity
/// once every competitor is eliminated.
double margin(const TestState& state);

bool should_stop(const TestState& state, const SequentialConfig& config);

/// Control for the step after state.count samples. Draws at most one uniform
/// (the trial's control draw for this step).
int next_control(const TestState& state, const SequentialConfig& config,
                 const PolicyTables& tables, int num_controls, double u01);

TrialOutcome run_trial(const SensingModel& model, const PolicyTables& tables,
                       int true_hypothesis, const SequentialConfig& config,
                       TrialRng& rng);

}  // namespace csense

#endif  // CSENSE_SEQUENTIAL_HPP_
