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

#include "csense/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csense/divergences.hpp"
#include "csense/exponents.hpp"

namespace csense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int ml_estimate(const std::vector<double>& loglik) {
  if (loglik.empty()) throw ModelError("ml_estimate: empty vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(loglik.size()); ++i) {
    if (loglik[i] > loglik[best]) best = i;
  }
  return best;
}

PolicyTables::PolicyTables(const SensingModel& model) {
  const int m = model.num_hypotheses();
  const int k = model.num_controls();
  fss_control_.resize(m);
  chernoff_dist_.resize(m);
  chernoff_value_.resize(m);
  strategy_cdf_.resize(m);
  for (int i = 0; i < m; ++i) {
    double best = -kInf;
    int best_u = 0;
    for (int u = 0; u < k; ++u) {
      double worst = kInf;
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        worst = std::min(
            worst, chernoff_information(model.pmf(i, u), model.pmf(j, u)).value);
      }
      if (worst > best) {
        best = worst;
        best_u = u;
      }
    }
    fss_control_[i] = best_u;

    const SequentialDenominator den = sequential_denominator(model, i);
    chernoff_dist_[i] = den.q_star;
    chernoff_value_[i] = den.value;
    strategy_cdf_[i].resize(k);
    double cum = 0.0;
    for (int u = 0; u < k; ++u) {
      cum += den.q_star.weights[u];
      strategy_cdf_[i][u] = cum;
    }
    strategy_cdf_[i][k - 1] = 1.0;
  }
  observation_cdf_.assign(m, std::vector<std::vector<double>>(k));
  for (int i = 0; i < m; ++i) {
    for (int u = 0; u < k; ++u) {
      auto& cdf = observation_cdf_[i][u];
      cdf.resize(model.num_observations());
      double cum = 0.0;
      for (int y = 0; y < model.num_observations(); ++y) {
        cum += model.prob(i, u, y);
        cdf[y] = cum;
      }
      cdf.back() = 1.0;
    }
  }
}

std::vector<int> open_loop_schedule(const MixedStrategy& q, int n) {
  if (n <= 0) throw ModelError("open_loop_schedule: n must be positive");
  const int k = static_cast<int>(q.weights.size());
  if (k == 0) throw ModelError("open_loop_schedule: empty strategy");

  // Largest-remainder apportionment of n slots.
  std::vector<int> counts(k);
  std::vector<std::pair<double, int>> remainders(k);
  int assigned = 0;
  for (int u = 0; u < k; ++u) {
    const double exact = q.weights[u] * n;
    counts[u] = static_cast<int>(std::floor(exact));
    remainders[u] = {-(exact - counts[u]), u};  // sort ascending = largest first
    assigned += counts[u];
  }
  std::sort(remainders.begin(), remainders.end());
  for (int extra = 0; extra < n - assigned; ++extra) {
    ++counts[remainders[extra % k].second];
  }

  // Interleave by fractional positions (t + 1/2) / count; ties by control
  // index, so equal-weight controls rotate.
  std::vector<std::pair<double, int>> slots;
  slots.reserve(n);
  for (int u = 0; u < k; ++u) {
    for (int t = 0; t < counts[u]; ++t) {
      slots.push_back({(t + 0.5) / counts[u], u});
    }
  }
  std::sort(slots.begin(), slots.end());
  std::vector<int> schedule(n);
  for (int t = 0; t < n; ++t) schedule[t] = slots[t].second;
  return schedule;
}

std::vector<std::int64_t> exploration_schedule(double a, std::int64_t horizon) {
  if (!(a > 1.0)) throw ModelError("exploration_schedule: requires a > 1");
  std::vector<std::int64_t> times;
  for (int l = 0;; ++l) {
    const double value = std::pow(a, l);
    if (value > static_cast<double>(horizon) + 0.5) break;
    const auto k = static_cast<std::int64_t>(std::ceil(value - 1e-9));
    if (k > horizon) break;
    if (times.empty() || times.back() != k) times.push_back(k);
  }
  return times;
}

bool is_exploration_time(double a, std::int64_t k) {
  if (k < 1) return false;
  if (k == 1) return true;  // l = 0
  const double guess = std::log(static_cast<double>(k)) / std::log(a);
  const auto center = static_cast<std::int64_t>(std::llround(guess));
  for (std::int64_t l = std::max<std::int64_t>(0, center - 2); l <= center + 2;
       ++l) {
    const auto t = static_cast<std::int64_t>(
        std::ceil(std::pow(a, static_cast<double>(l)) - 1e-9));
    if (t == k) return true;
  }
  return false;
}

SensingModel mismatched_smooth(const SensingModel& model, double eps_smooth) {
  if (!(eps_smooth > 0.0 && eps_smooth < 1.0)) {
    throw ModelError("mismatched_smooth: eps_smooth must lie in (0, 1)");
  }
  const int num_y = model.num_observations();
  std::vector<std::vector<Pmf>> cells;
  for (int i = 0; i < model.num_hypotheses(); ++i) {
    std::vector<Pmf> row;
    for (int u = 0; u < model.num_controls(); ++u) {
      std::vector<double> probs(num_y);
      for (int y = 0; y < num_y; ++y) {
        probs[y] = 1.0 / num_y +
                   (eps_smooth / num_y) * (num_y * model.prob(i, u, y) - 1.0);
      }
      row.emplace_back(std::move(probs));
    }
    cells.push_back(std::move(row));
  }
  return SensingModel(model.controls(), model.observations(), std::move(cells));
}

int mismatched_control(const SensingModel& model, const SensingModel& smoothed,
                       const std::vector<double>& nu, double eta,
                       double eps_smooth) {
  const int m = model.num_hypotheses();
  const int num_y = model.num_observations();
  for (double w : nu) {
    if (!(w > 0.0)) throw ModelError("mismatched_control: nu must have full support");
  }
  const double exponent = -eta / (num_y * eps_smooth);
  double best = kInf;
  int best_u = 0;
  for (int u = 0; u < model.num_controls(); ++u) {
    double worst = -kInf;
    for (int i = 0; i < m; ++i) {
      double sum = 0.0;
      for (int y = 0; y < num_y; ++y) {
        double mix = 0.0;
        for (int j = 0; j < m; ++j) {
          if (j != i) mix += nu[j] * smoothed.prob(j, u, y);
        }
        mix /= 1.0 - nu[i];
        sum += model.prob(i, u, y) *
               std::pow(smoothed.prob(i, u, y) / mix, exponent);
      }
      worst = std::max(worst, sum);
    }
    if (worst < best) {
      best = worst;
      best_u = u;
    }
  }
  return best_u;
}

void MismatchedState::update(const SensingModel& smoothed, int control, int y) {
  double total = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    nu[i] *= smoothed.prob(static_cast<int>(i), control, y);
    total += nu[i];
  }
  for (double& w : nu) w /= total;
}

}  // namespace csense
