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

#ifndef CSENSE_MONTECARLO_HPP_
#define CSENSE_MONTECARLO_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csense/fss.hpp"
#include "csense/model.hpp"
#include "csense/sequential.hpp"

namespace csense {

/// Binomial point estimate with a 95% Wilson interval; exact-zero (or
/// exact-one) counts fall back to the one-sided rule of three.
struct ErrorEstimate {
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t count = 0;
  std::int64_t trials = 0;
};

ErrorEstimate binomial_estimate(std::int64_t count, std::int64_t trials);

struct HypothesisStats {
  ErrorEstimate error;                       // P_i{decision != i}
  std::vector<std::int64_t> decision_counts; // indexed by decided hypothesis
  double mean_stopping_time = 0.0;           // sequential, truncations excluded
  double se_stopping_time = 0.0;
  std::int64_t truncated = 0;
};

struct RiskEstimate {
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double half_width = 0.0;  // 1.96 * propagated standard error
};

/// Aggregates are pure integer counts underneath, so a report is
/// byte-identical for any thread count given the same seed.
struct SimReport {
  std::vector<HypothesisStats> per_hypothesis;
  std::vector<RiskEstimate> risks;  // sequential runs only
  std::vector<double> prior;        // prior used for the risks
  std::int64_t trials_per_hypothesis = 0;
  std::uint64_t seed = 0;
  std::string config_echo;
};

SimReport estimate_fss(const SensingModel& model, const FssConfig& config,
                       std::int64_t trials, std::uint64_t seed,
                       int threads = 1);

SimReport estimate_sequential(const SensingModel& model,
                              const SequentialConfig& config,
                              std::int64_t trials, std::uint64_t seed,
                              int threads = 1);

struct ExponentFit {
  double slope = 0.0;
  double r_squared = 0.0;
  int excluded_points = 0;  // zero error estimates cannot enter the log fit
};

/// Least-squares line through (n, -log error); the slope estimates the decay
/// exponent. Needs at least 3 points; zero errors are dropped with a count.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace csense

#endif  // CSENSE_MONTECARLO_HPP_
