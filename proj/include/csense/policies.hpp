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

#ifndef CSENSE_POLICIES_HPP_
#define CSENSE_POLICIES_HPP_

#include <cstdint>
#include <vector>

#include "csense/games.hpp"
#include "csense/model.hpp"

namespace csense {

/// Least index attaining the maximum. All -infinity yields 0.
int ml_estimate(const std::vector<double>& loglik);

/// Running per-hypothesis log-likelihoods (up to a common additive constant;
/// control-policy factors cancel across hypotheses). An off-support
/// observation under some hypothesis drives that coordinate to -infinity,
/// eliminating it.
struct TestState {
  std::vector<double> loglik;
  std::int64_t count = 0;

  explicit TestState(int num_hypotheses)
      : loglik(num_hypotheses, 0.0) {}

  void update(const SensingModel& model, int control, int y) {
    const double* row = model.log_row(control, y);
    for (std::size_t i = 0; i < loglik.size(); ++i) loglik[i] += row[i];
    ++count;
  }

  int ml_index() const { return ml_estimate(loglik); }
};

/// Per-model cache of both stationary control maps: the pure fixed-sample
/// rule (max over controls of the worst-pair Chernoff information given the
/// current ML index) and the sequential maximin mixture (worst-case KL drift
/// given the current ML index). Built eagerly; lookups are the per-step cost.
class PolicyTables {
 public:
  explicit PolicyTables(const SensingModel& model);

  int fss_causal_control(int i_hat) const { return fss_control_[i_hat]; }
  const MixedStrategy& chernoff_control_distribution(int i_hat) const {
    return chernoff_dist_[i_hat];
  }
  double chernoff_drift(int i_hat) const { return chernoff_value_[i_hat]; }

  /// Cumulative weights of chernoff_control_distribution(i_hat).
  const std::vector<double>& strategy_cdf(int i_hat) const {
    return strategy_cdf_[i_hat];
  }
  /// Cumulative pmf of p_i^u (observation sampling).
  const std::vector<double>& observation_cdf(int hypothesis, int control) const {
    return observation_cdf_[hypothesis][control];
  }

 private:
  std::vector<int> fss_control_;
  std::vector<MixedStrategy> chernoff_dist_;
  std::vector<double> chernoff_value_;
  std::vector<std::vector<double>> strategy_cdf_;
  std::vector<std::vector<std::vector<double>>> observation_cdf_;
};

/// Deterministic length-n control sequence whose empirical composition
/// minimizes the worst per-control deviation from q (largest-remainder
/// apportionment), interleaved round-robin by fractional positions.
std::vector<int> open_loop_schedule(const MixedStrategy& q, int n);

/// Deduplicated {ceil(a^l) : l = 0, 1, ...} clipped to [1, horizon].
/// A trial whose elapsed sample count k is in the set draws its next control
/// uniformly.
std::vector<std::int64_t> exploration_schedule(double a, std::int64_t horizon);

/// True iff k = ceil(a^l) for some integer l >= 0.
bool is_exploration_time(double a, std::int64_t k);

/// Full-support convolution of every cell with the eps-smoothed uniform
/// kernel: q_i^u(y) = 1/J + (eps/J)(J p_i^u(y) - 1).
SensingModel mismatched_smooth(const SensingModel& model, double eps_smooth);

/// Control minimizing the worst-hypothesis tilted moment of the smoothed
/// likelihood-ratio step, given posterior nu (least-index tie-break).
int mismatched_control(const SensingModel& model, const SensingModel& smoothed,
                       const std::vector<double>& nu, double eta,
                       double eps_smooth);

/// Posterior over hypotheses under the smoothed model, uniform prior. Full
/// support is preserved by smoothing, so likelihood ratios stay finite.
struct MismatchedState {
  std::vector<double> nu;

  explicit MismatchedState(int num_hypotheses)
      : nu(num_hypotheses, 1.0 / num_hypotheses) {}

  void update(const SensingModel& smoothed, int control, int y);
  /// l(i) = nu(i) / (1 - nu(i)).
  double likelihood_ratio(int i) const { return nu[i] / (1.0 - nu[i]); }
  int map_index() const { return ml_estimate(nu); }
};

}  // namespace csense

#endif  // CSENSE_POLICIES_HPP_
