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

#ifndef CSENSE_FSS_HPP_
#define CSENSE_FSS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "csense/model.hpp"
#include "csense/policies.hpp"
#include "csense/rng.hpp"

namespace csense {

enum class FssPolicy { kOpenLoop, kCausalChernoff, kMismatched };

std::string to_string(FssPolicy p);

/// Fixed-sample-size test: exactly n observations, then a point decision.
///  - open_loop: the precomputed schedule for q_star; never reads data.
///  - causal_chernoff: control for step k+1 is the cached pure rule at the
///    ML index after k steps (index 0 before any data).
///  - mismatched: control from the smoothed-model posterior; the decision is
///    that posterior's argmax rather than the true-model ML.
struct FssConfig {
  FssPolicy policy = FssPolicy::kCausalChernoff;
  int n = 1;
  MixedStrategy open_loop_q;  // open_loop only
  double eta = 1.0;           // mismatched only
  double eps_smooth = 0.5;    // mismatched only

  void validate(int num_controls) const;
};

/// Precomputed per-config state shared by all trials.
class FssPlan {
 public:
  FssPlan(const SensingModel& model, const FssConfig& config);

  const FssConfig& config() const { return config_; }
  const std::vector<int>& schedule() const { return schedule_; }
  const SensingModel* smoothed() const {
    return smoothed_ ? &*smoothed_ : nullptr;
  }

 private:
  FssConfig config_;
  std::vector<int> schedule_;            // open_loop
  std::optional<SensingModel> smoothed_; // mismatched
};

int run_fss_trial(const SensingModel& model, const PolicyTables& tables,
                  const FssPlan& plan, int true_hypothesis, TrialRng& rng);

}  // namespace csense

#endif  // CSENSE_FSS_HPP_
