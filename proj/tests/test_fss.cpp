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

#include "csense/fss.hpp"

using namespace csense;

TEST_SUITE("fss") {

TEST_CASE("config validation") {
  FssConfig config;
  config.n = 0;
  CHECK_THROWS_AS(config.validate(3), ModelError);
  config.n = 10;
  CHECK_NOTHROW(config.validate(3));

  FssConfig open_loop;
  open_loop.policy = FssPolicy::kOpenLoop;
  open_loop.n = 5;
  CHECK_THROWS_AS(open_loop.validate(3), ModelError);  // missing strategy
  open_loop.open_loop_q.weights = {0.5, 0.25, 0.25};
  CHECK_NOTHROW(open_loop.validate(3));

  FssConfig mismatched;
  mismatched.policy = FssPolicy::kMismatched;
  mismatched.n = 5;
  mismatched.eps_smooth = 1.5;
  CHECK_THROWS_AS(mismatched.validate(3), ModelError);
}

TEST_CASE("same seed gives the same decision") {
  const SensingModel m = table1_model(0.3);
  const PolicyTables tables(m);
  FssConfig config;
  config.policy = FssPolicy::kCausalChernoff;
  config.n = 25;
  const FssPlan plan(m, config);
  for (std::uint32_t trial = 0; trial < 20; ++trial) {
    TrialRng a(42, 1, trial), b(42, 1, trial);
    CHECK(run_fss_trial(m, tables, plan, 1, a) ==
          run_fss_trial(m, tables, plan, 1, b));
  }
}

TEST_CASE("open-loop schedule is computed once and ignores observations") {
  const SensingModel m = table1_model(0.3);
  FssConfig config;
  config.policy = FssPolicy::kOpenLoop;
  config.n = 17;
  config.open_loop_q.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const FssPlan plan_a(m, config), plan_b(m, config);
  CHECK(plan_a.schedule() == plan_b.schedule());
  CHECK(plan_a.schedule().size() == 17);
}

TEST_CASE("causal replay follows the diagonal policy") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  FssConfig config;
  config.policy = FssPolicy::kCausalChernoff;
  config.n = 30;
  const FssPlan plan(m, config);
  for (std::uint32_t trial = 0; trial < 50; ++trial) {
    TrialRng rng(2024, 2, trial);
    const int decision = run_fss_trial(m, tables, plan, 2, rng);
    TrialRng replay(2024, 2, trial);
    TestState state(3);
    for (int k = 0; k < config.n; ++k) {
      const int u = tables.fss_causal_control(state.ml_index());
      CHECK(u == state.ml_index());  // diagonal policy on this model
      const int y = sample_index(tables.observation_cdf(2, u),
                                 replay.uniform(k, 1));
      state.update(m, u, y);
    }
    CHECK(state.ml_index() == decision);
  }
}

TEST_CASE("first causal control uses the index-0 tie") {
  // Truth 1, n = 1: the opening control must be a (the ML index before any
  // data is 0). Under control a, a y = 0 draw favors hypothesis 0 and y = 1
  // leaves {1, 2} tied, decided as 1. Decision 2 is impossible.
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  FssConfig config;
  config.policy = FssPolicy::kCausalChernoff;
  config.n = 1;
  const FssPlan plan(m, config);
  for (std::uint32_t trial = 0; trial < 200; ++trial) {
    TrialRng rng(7, 1, trial);
    const int decision = run_fss_trial(m, tables, plan, 1, rng);
    CHECK(decision != 2);
  }
}

TEST_CASE("mismatched replay decides by the smoothed posterior") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  FssConfig config;
  config.policy = FssPolicy::kMismatched;
  config.n = 20;
  config.eta = 1.0;
  config.eps_smooth = 0.5;
  const FssPlan plan(m, config);
  for (std::uint32_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(99, 0, trial);
    const int decision = run_fss_trial(m, tables, plan, 0, rng);
    TrialRng replay(99, 0, trial);
    MismatchedState state(3);
    for (int k = 0; k < config.n; ++k) {
      const int u = mismatched_control(m, *plan.smoothed(), state.nu,
                                       config.eta, config.eps_smooth);
      const int y = sample_index(tables.observation_cdf(0, u),
                                 replay.uniform(k, 1));
      state.update(*plan.smoothed(), u, y);
    }
    CHECK(state.map_index() == decision);
  }
}

TEST_CASE("longer runs are more accurate for every policy") {
  const SensingModel m = table1_model(0.25);
  const PolicyTables tables(m);
  auto error_rate = [&](FssPolicy policy, int n, int trials) {
    FssConfig config;
    config.policy = policy;
    config.n = n;
    if (policy == FssPolicy::kOpenLoop) {
      config.open_loop_q.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    }
    const FssPlan plan(m, config);
    int errors = 0;
    for (std::uint32_t trial = 0; trial < static_cast<std::uint32_t>(trials);
         ++trial) {
      for (int truth = 0; truth < 3; ++truth) {
        TrialRng rng(11, static_cast<std::uint32_t>(truth), trial);
        if (run_fss_trial(m, tables, plan, truth, rng) != truth) ++errors;
      }
    }
    return static_cast<double>(errors) / (3.0 * trials);
  };
  for (const FssPolicy policy :
       {FssPolicy::kCausalChernoff, FssPolicy::kOpenLoop,
        FssPolicy::kMismatched}) {
    const int trials = policy == FssPolicy::kMismatched ? 800 : 4000;
    const double coarse = error_rate(policy, 6, trials);
    const double fine = error_rate(policy, 36, trials);
    CHECK(fine < coarse);
    CHECK(fine < 0.08);
  }
}

}  // TEST_SUITE
