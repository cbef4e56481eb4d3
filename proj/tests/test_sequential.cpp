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
#include <limits>

#include "csense/sequential.hpp"

using namespace csense;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TestState state_with(std::vector<double> loglik) {
  TestState s(static_cast<int>(loglik.size()));
  s.loglik = std::move(loglik);
  s.count = 1;
  return s;
}

}  // namespace

TEST_SUITE("sequential") {

TEST_CASE("margin") {
  CHECK(margin(state_with({0.0, -2.0, -5.0})) == doctest::Approx(2.0));
  CHECK(margin(state_with({0.0, 0.0, -1.0})) == doctest::Approx(0.0));
  CHECK(margin(state_with({0.0, kNegInf, kNegInf})) ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(margin(state_with({1.0})), ModelError);
}

TEST_CASE("stopping thresholds") {
  SequentialConfig config;
  config.variant = SequentialVariant::kChernoff;
  config.c = 1.0;
  CHECK(should_stop(state_with({0.0, 0.0}), config));  // threshold 0, margin 0

  config.c = 0.01;  // threshold ln 100 = 4.60517
  CHECK(should_stop(state_with({4.7, 0.0}), config));
  CHECK_FALSE(should_stop(state_with({4.5, 0.0}), config));

  SequentialConfig risk;
  risk.variant = SequentialVariant::kRiskConstrained;
  risk.risk_bounds = {0.01, 0.01, 0.01};
  // uniform prior cancels in the weighted margin; threshold ln(2*(1/3)/0.01)
  const double threshold = std::log(2.0 * (1.0 / 3.0) / 0.01);
  CHECK(threshold == doctest::Approx(4.19971).epsilon(1e-5));
  CHECK(should_stop(state_with({4.21, 0.0, -1.0}), risk));
  CHECK_FALSE(should_stop(state_with({4.19, 0.0, -1.0}), risk));
}

TEST_CASE("config validation") {
  const SensingModel m = table1_model(0.25);
  SequentialConfig config;
  config.max_steps = 0;
  CHECK_THROWS_AS(config.validate(3), ModelError);
  config.max_steps = 10;
  config.c = 0.0;
  CHECK_THROWS_AS(config.validate(3), ModelError);
  config.c = 0.5;
  CHECK_NOTHROW(config.validate(3));

  SequentialConfig modified;
  modified.variant = SequentialVariant::kModified;
  modified.a = 1.0;
  CHECK_THROWS_AS(modified.validate(3), ModelError);

  SequentialConfig risk;
  risk.variant = SequentialVariant::kRiskConstrained;
  CHECK_THROWS_AS(risk.validate(3), ModelError);  // missing bounds
  risk.risk_bounds = {0.1, 0.1, 0.1};
  CHECK_NOTHROW(risk.validate(3));
  risk.prior = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(risk.validate(3), ModelError);  // not a pmf
  risk.prior = {0.5, 0.25, 0.25};
  CHECK_NOTHROW(risk.validate(3));
  risk.prior = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(risk.validate(3), ModelError);  // needs full support
  (void)m;
}

TEST_CASE("control selection") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);

  SequentialConfig chernoff;
  chernoff.variant = SequentialVariant::kChernoff;
  TestState leader0(3);
  leader0.loglik = {1.0, 0.0, 0.0};
  leader0.count = 3;
  for (double u01 : {0.0, 0.3, 0.9, 0.999}) {
    CHECK(next_control(leader0, chernoff, tables, 3, u01) == 0);
  }

  SequentialConfig modified;
  modified.variant = SequentialVariant::kModified;
  modified.a = 1.5;
  TestState one_sample(3);
  one_sample.loglik = {1.0, 0.0, 0.0};
  one_sample.count = 1;  // exploration time for any a
  CHECK(next_control(one_sample, modified, tables, 3, 0.0) == 0);
  CHECK(next_control(one_sample, modified, tables, 3, 0.5) == 1);
  CHECK(next_control(one_sample, modified, tables, 3, 0.9) == 2);
  TestState fresh(3);  // count 0 is not in the schedule
  CHECK(next_control(fresh, modified, tables, 3, 0.9) == 0);
}

TEST_CASE("immediate stop at c = 1") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  SequentialConfig config;
  config.c = 1.0;
  for (std::uint32_t trial = 0; trial < 20; ++trial) {
    TrialRng rng(99, 0, trial);
    const TrialOutcome out = run_trial(m, tables, 0, config, rng);
    CHECK(out.stopping_time == 1);
    CHECK_FALSE(out.truncated);
  }
}

TEST_CASE("trials are deterministic in the seed") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  SequentialConfig config;
  config.c = 1e-3;
  for (std::uint32_t trial = 0; trial < 10; ++trial) {
    TrialRng rng_a(1234, 1, trial), rng_b(1234, 1, trial);
    const TrialOutcome a = run_trial(m, tables, 1, config, rng_a);
    const TrialOutcome b = run_trial(m, tables, 1, config, rng_b);
    CHECK(a.decision == b.decision);
    CHECK(a.stopping_time == b.stopping_time);
    CHECK(a.control_counts == b.control_counts);
  }
}

TEST_CASE("stopping times are monotone in the threshold") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  for (std::uint32_t trial = 0; trial < 50; ++trial) {
    std::int64_t previous = 0;
    for (const double c : {1e-1, 1e-2, 1e-3, 1e-4}) {
      SequentialConfig config;
      config.c = c;
      TrialRng rng(777, 2, trial);
      const TrialOutcome out = run_trial(m, tables, 2, config, rng);
      CHECK(out.stopping_time >= previous);
      previous = out.stopping_time;
    }
  }
}

TEST_CASE("truncation at max_steps") {
  // indistinguishable hypotheses never accumulate margin
  const SensingModel m = load_model(R"({"hypotheses":2,"controls":["a"],
    "observations":["0","1"],
    "pmf":{"0":{"a":[0.5,0.5]},"1":{"a":[0.5,0.5]}}})");
  const PolicyTables tables(m);
  SequentialConfig config;
  config.c = 1e-3;
  config.max_steps = 64;
  TrialRng rng(5, 0, 0);
  const TrialOutcome out = run_trial(m, tables, 0, config, rng);
  CHECK(out.truncated);
  CHECK(out.stopping_time == 64);
  CHECK(out.decision == 0);  // least-index tie
  std::int64_t total = 0;
  for (std::int64_t c : out.control_counts) total += c;
  CHECK(total == 64);
}

TEST_CASE("errors vanish as the threshold tightens under positivity") {
  // every pair separated under every control
  const SensingModel m = load_model(R"({"hypotheses":3,"controls":["a","b"],
    "observations":["0","1"],
    "pmf":{"0":{"a":[0.8,0.2],"b":[0.3,0.7]},
           "1":{"a":[0.2,0.8],"b":[0.7,0.3]},
           "2":{"a":[0.5,0.5],"b":[0.1,0.9]}}})");
  REQUIRE(check_positivity(m).holds_overall);
  const PolicyTables tables(m);
  double previous = 1.0, previous_ci = 0.0;
  for (const double c : {1e-1, 1e-2, 1e-3}) {
    SequentialConfig config;
    config.c = c;
    std::int64_t errors = 0;
    const int trials = 2000;
    for (int truth = 0; truth < 3; ++truth) {
      for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(trials); ++t) {
        TrialRng rng(606, static_cast<std::uint32_t>(truth), t);
        if (run_trial(m, tables, truth, config, rng).decision != truth) ++errors;
      }
    }
    const double rate = static_cast<double>(errors) / (3.0 * trials);
    const double ci =
        1.96 * std::sqrt(std::max(rate, 1e-4) * (1.0 - rate) / (3.0 * trials));
    CHECK(rate <= previous + previous_ci + ci);
    previous = rate;
    previous_ci = ci;
  }
  CHECK(previous < 0.01);  // smallest threshold ends nearly error-free
}

TEST_CASE("decision is the least-index argmax at stop") {
  const SensingModel m = table1_model(0.3);
  const PolicyTables tables(m);
  SequentialConfig config;
  config.variant = SequentialVariant::kModified;
  config.c = 1e-2;
  for (std::uint32_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(31337, 0, trial);
    const TrialOutcome out = run_trial(m, tables, 0, config, rng);
    // replay with the same stream to recover the final state
    TrialRng replay_rng(31337, 0, trial);
    TestState state(3);
    for (std::int64_t k = 0; k < out.stopping_time; ++k) {
      const int u = next_control(state, config, tables, 3,
                                 replay_rng.uniform(k, 0));
      const int y = sample_index(tables.observation_cdf(0, u),
                                 replay_rng.uniform(k, 1));
      state.update(m, u, y);
    }
    CHECK(state.ml_index() == out.decision);
    CHECK(should_stop(state, config));
  }
}

}  // TEST_SUITE
