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

#ifndef CSENSE_MODEL_HPP_
#define CSENSE_MODEL_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace csense {

/// Thrown when an input violates a documented precondition or invariant.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A validated probability vector over a finite observation alphabet.
///
/// Entries must be nonnegative and sum to 1 within kSumTolerance. Values are
/// stored exactly as given (a sub-tolerance deficit is rounding noise, and
/// keeping the parsed bits makes serialization round-trips exact).
class Pmf {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Pmf(std::vector<double> probs);

  double operator[](std::size_t y) const { return probs_[y]; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }

  bool same_support(const Pmf& other) const;
  bool full_support() const;

  friend bool operator==(const Pmf& a, const Pmf& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<double> probs_;
};

/// Hypotheses x controls x finite observation alphabet, one pmf per
/// (hypothesis, control) cell. Immutable after construction and safe to share
/// across concurrent readers.
///
/// Invariants checked at construction: at least two hypotheses, one control,
/// two observation symbols, unique labels, and for each control all
/// per-hypothesis pmfs share the same support (zeros in exactly the same
/// places). Supports may differ across controls.
class SensingModel {
 public:
  SensingModel(std::vector<std::string> controls,
               std::vector<std::string> observations,
               std::vector<std::vector<Pmf>> cells /* [hypothesis][control] */);

  int num_hypotheses() const { return static_cast<int>(cells_.size()); }
  int num_controls() const { return static_cast<int>(controls_.size()); }
  int num_observations() const { return static_cast<int>(observations_.size()); }

  const Pmf& pmf(int hypothesis, int control) const {
    return cells_[hypothesis][control];
  }
  double prob(int hypothesis, int control, int y) const {
    return cells_[hypothesis][control][y];
  }
  /// log p_i^u(y), -infinity at off-support symbols.
  double log_prob(int hypothesis, int control, int y) const {
    return log_rows_[control][static_cast<std::size_t>(y) * num_hypotheses() +
                             hypothesis];
  }
  /// Contiguous [log p_0^u(y), ..., log p_{M-1}^u(y)]; the per-step hot path.
  const double* log_row(int control, int y) const {
    return log_rows_[control].data() +
           static_cast<std::size_t>(y) * num_hypotheses();
  }

  const std::vector<std::string>& controls() const { return controls_; }
  const std::vector<std::string>& observations() const { return observations_; }
  const std::string& control_label(int u) const { return controls_[u]; }

  friend bool operator==(const SensingModel& a, const SensingModel& b);

 private:
  std::vector<std::string> controls_;
  std::vector<std::string> observations_;
  std::vector<std::vector<Pmf>> cells_;
  std::vector<std::vector<double>> log_rows_;  // [control][y * M + hypothesis]
};

/// One zero-divergence cell pair: D(p_i^u || p_j^u) = 0, i.e. the two rows are
/// identical under control u.
struct PositivityFailure {
  int control = 0;
  int i = 0;
  int j = 0;
  friend bool operator==(const PositivityFailure&,
                         const PositivityFailure&) = default;
};

struct PositivityReport {
  bool holds_overall = true;
  std::vector<PositivityFailure> failures;  // ordered pairs, both directions
};

/// Lists every ordered pair (u, i, j), i != j, with p_i^u identical to p_j^u.
PositivityReport check_positivity(const SensingModel& model);

/// Parses the JSON model document. Throws ModelError on malformed documents,
/// row-sum violations, duplicate labels, or support mismatches.
SensingModel load_model(const std::string& text);

/// Full-precision JSON serialization; load_model(serialize_model(m)) == m.
std::string serialize_model(const SensingModel& model);

/// The three-location sensor-selection example: M = 3, controls {a, b, c},
/// binary observations; querying location i under hypothesis i sees
/// Bernoulli(eps), every other query sees Bernoulli(1 - eps).
SensingModel table1_model(double eps);

}  // namespace csense

#endif  // CSENSE_MODEL_HPP_
