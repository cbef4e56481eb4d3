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

#include <doctest.h>

#include <cmath>

#include "csense/montecarlo.hpp"

using namespace csense;

namespace {

bool reports_identical(const SimReport& a, const SimReport& b) {
  if (a.per_hypothesis.size() != b.per_hypothesis.size()) return false;
  for (std::size_t i = 0; i < a.per_hypothesis.size(); ++i) {
    const HypothesisStats &x = a.per_hypothesis[i], &y = b.per_hypothesis[i];
    if (x.decision_counts != y.decision_counts) return false;
    if (x.error.estimate != y.error.estimate) return false;
    if (x.error.ci_lo != y.error.ci_lo || x.error.ci_hi != y.error.ci_hi) {
      return false;
    }
    if (x.mean_stopping_time != y.mean_stopping_time) return false;
    if (x.se_stopping_time != y.se_stopping_time) return false;
    if (x.truncated != y.truncated) return false;
  }
  if (a.risks.size() != b.risks.size()) return false;
  for (std::size_t i = 0; i < a.risks.size(); ++i) {
    if (a.risks[i].estimate != b.risks[i].estimate) return false;
    if (a.risks[i].ci_lo != b.risks[i].ci_lo) return false;
    if (a.risks[i].ci_hi != b.risks[i].ci_hi) return false;
  }
  return true;
}

SensingModel indistinguishable_binary() {
  return load_model(R"({"hypotheses":2,"controls":["a"],
    "observations":["0","1"],
    "pmf":{"0":{"a":[0.5,0.5]},"1":{"a":[0.5,0.5]}}})");
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("wilson interval basics") {
  const ErrorEstimate e = binomial_estimate(30, 100);
  CHECK(e.estimate == doctest::Approx(0.3));
  CHECK(e.ci_lo < 0.3);
  CHECK(e.ci_hi > 0.3);
  CHECK(e.ci_lo > 0.2);
  CHECK(e.ci_hi < 0.42);

  const ErrorEstimate zero = binomial_estimate(0, 1000);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.ci_lo == 0.0);
  CHECK(zero.ci_hi == doctest::Approx(0.003));  // rule of three

  const ErrorEstimate all = binomial_estimate(1000, 1000);
  CHECK(all.ci_hi == 1.0);
  CHECK(all.ci_lo == doctest::Approx(0.997));
}

TEST_CASE("fss reports are deterministic and thread-count independent") {
  const SensingModel m = table1_model(0.3);
  FssConfig config;
  config.policy = FssPolicy::kCausalChernoff;
  config.n = 12;
  const SimReport serial = estimate_fss(m, config, 2000, 555, 1);
  const SimReport repeat = estimate_fss(m, config, 2000, 555, 1);
  const SimReport parallel = estimate_fss(m, config, 2000, 555, 8);
  CHECK(reports_identical(serial, repeat));
  CHECK(reports_identical(serial, parallel));
  CHECK(serial.per_hypothesis.size() == 3);
  for (const auto& h : serial.per_hypothesis) {
    std::int64_t total = 0;
    for (std::int64_t c : h.decision_counts) total += c;
    CHECK(total == 2000);
    CHECK(h.error.ci_lo <= h.error.estimate);
    CHECK(h.error.estimate <= h.error.ci_hi);
  }
}

TEST_CASE("indistinguishable hypotheses give a coin-flip error rate") {
  FssConfig config;
  config.policy = FssPolicy::kCausalChernoff;
  config.n = 9;
  const SimReport report =
      estimate_fss(indistinguishable_binary(), config, 4000, 99, 2);
  // decisions are the least-index tie: truth 0 never errs, truth 1 always does
  CHECK(report.per_hypothesis[0].error.estimate == 0.0);
  CHECK(report.per_hypothesis[1].error.estimate == 1.0);
}

TEST_CASE("sequential reports: immediate stop and risk bookkeeping") {
  SequentialConfig config;
  config.c = 1.0;  // margin 0 stops after one sample
  const SimReport report =
      estimate_sequential(indistinguishable_binary(), config, 3000, 7, 2);
  for (const auto& h : report.per_hypothesis) {
    CHECK(h.mean_stopping_time == doctest::Approx(1.0));
    CHECK(h.se_stopping_time == doctest::Approx(0.0));
    CHECK(h.truncated == 0);
  }
  // every trial decides 0 (tied likelihoods), so with a uniform prior
  // R_0 = pi(1) * 1 = 0.5 and R_1 = 0
  CHECK(report.per_hypothesis[0].decision_counts[0] == 3000);
  CHECK(report.per_hypothesis[1].decision_counts[0] == 3000);
  CHECK(report.risks[0].estimate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.risks[1].estimate == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sequential reports are thread-count independent") {
  const SensingModel m = table1_model(0.25);
  SequentialConfig config;
  config.variant = SequentialVariant::kModified;
  config.c = 1e-2;
  const SimReport serial = estimate_sequential(m, config, 1500, 31, 1);
  const SimReport parallel = estimate_sequential(m, config, 1500, 31, 8);
  CHECK(reports_identical(serial, parallel));
  for (const auto& h : serial.per_hypothesis) {
    CHECK(h.mean_stopping_time > 1.0);
  }
}

TEST_CASE("expected stopping time tracks the drift on the example") {
  const SensingModel m = table1_model(0.25);
  SequentialConfig config;
  config.c = 1e-3;
  const SimReport report = estimate_sequential(m, config, 4000, 2718, 2);
  const double predicted = -std::log(config.c) / (0.5 * std::log(3.0));  // 12.58
  for (const auto& h : report.per_hypothesis) {
    CHECK(h.mean_stopping_time == doctest::Approx(predicted).epsilon(0.25));
  }
}

TEST_CASE("wilson coverage on a bernoulli fixture") {
  int covered = 0;
  for (std::uint32_t rep = 0; rep < 100; ++rep) {
    TrialRng rng(4242, 0, rep);
    const int draws = 500;
    std::int64_t hits = 0;
    for (int t = 0; t < draws; ++t) {
      if (rng.uniform(t, 0) < 0.3) ++hits;
    }
    const ErrorEstimate e = binomial_estimate(hits, draws);
    if (e.ci_lo <= 0.3 && 0.3 <= e.ci_hi) ++covered;
  }
  CHECK(covered >= 90);
}

TEST_CASE("paired and unpaired policy comparisons agree within noise") {
  const SensingModel m = table1_model(0.3);
  const int n = 20, trials = 3000;
  FssConfig causal;
  causal.policy = FssPolicy::kCausalChernoff;
  causal.n = n;
  FssConfig open_loop;
  open_loop.policy = FssPolicy::kOpenLoop;
  open_loop.n = n;
  open_loop.open_loop_q.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};

  auto max_error = [](const SimReport& r) {
    double worst = 0.0;
    for (const auto& h : r.per_hypothesis) {
      worst = std::max(worst, h.error.estimate);
    }
    return worst;
  };
  // paired: same seed, shared observation streams per (hypothesis, trial)
  const double paired_gap = max_error(estimate_fss(m, open_loop, trials, 1, 2)) -
                            max_error(estimate_fss(m, causal, trials, 1, 2));
  // unpaired: fresh seed for one arm
  const double unpaired_gap =
      max_error(estimate_fss(m, open_loop, trials, 909, 2)) -
      max_error(estimate_fss(m, causal, trials, 1, 2));
  CHECK(paired_gap > 0.0);
  CHECK(unpaired_gap > 0.0);
  CHECK(std::abs(paired_gap - unpaired_gap) < 0.04);
}

TEST_CASE("trial counts are validated") {
  FssConfig config;
  config.n = 5;
  CHECK_THROWS_AS(estimate_fss(table1_model(0.25), config, 0, 1, 1), ModelError);
  SequentialConfig seq;
  CHECK_THROWS_AS(estimate_sequential(table1_model(0.25), seq, 0, 1, 1),
                  ModelError);
}

TEST_CASE("exponent fit") {
  std::vector<std::pair<double, double>> exact;
  for (const double n : {10.0, 20.0, 30.0}) {
    exact.push_back({n, std::exp(-0.1 * n)});
  }
  const ExponentFit fit = fit_exponent(exact);
  CHECK(fit.slope == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.excluded_points == 0);

  const ExponentFit flat =
      fit_exponent({{10.0, 0.25}, {20.0, 0.25}, {30.0, 0.25}});
  CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-12));

  const ExponentFit with_zero =
      fit_exponent({{10.0, 0.5}, {20.0, 0.25}, {30.0, 0.0}, {40.0, 0.05}});
  CHECK(with_zero.excluded_points == 1);

  CHECK_THROWS_AS(fit_exponent({{10.0, 0.5}, {20.0, 0.25}}), ModelError);
  CHECK_THROWS_AS(fit_exponent({{10.0, 0.0}, {20.0, 0.0}, {30.0, 0.1}}),
                  ModelError);
}

}  // TEST_SUITE
