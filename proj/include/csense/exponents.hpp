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

#ifndef CSENSE_EXPONENTS_HPP_
#define CSENSE_EXPONENTS_HPP_

#include <optional>
#include <vector>

#include "csense/games.hpp"
#include "csense/model.hpp"

namespace csense {

struct BinaryExponent {
  double value = 0.0;
  int control = 0;  // least-index maximizer
};

/// Best fixed-sample exponent for M = 2: the maximum Chernoff information
/// over controls. Past information and randomization add nothing here.
BinaryExponent binary_exponent(const SensingModel& model);

struct OpenLoopSettings {
  double lattice_resolution = 0.02;  // simplex seeding over control mixtures
  double refine_step = 1e-5;         // local transfer refinement floor
};

struct OpenLoopExponent {
  double value = 0.0;  // attained by q_star, hence a certified lower bound
  MixedStrategy q_star;
};

/// Best open-loop exponent: max over control mixtures q of the worst
/// hypothesis pair's tilted exponent
///   min_{i != j} max_s -sum_u q(u) log renyi_sum(p_i^u, p_j^u, s).
/// The objective is a min of convex functions of q (nonconcave), so the
/// search seeds on a simplex lattice and refines by pairwise mass transfers
/// with shrinking steps.
OpenLoopExponent open_loop_exponent(const SensingModel& model,
                                    const OpenLoopSettings& settings = {});

/// Pairwise cap on any causal scheme, M > 2:
/// min_{i != j} max_u max_s -log renyi_sum(p_i^u, p_j^u, s).
double causal_upper_bound(const SensingModel& model);

struct CausalLowerSettings {
  /// Tilting parameters to scan; empty means the default grid
  /// {0.05 k : 1 <= k <= 100}.
  std::vector<double> eta_grid;
  /// Effort knob for the inner certification (smaller = larger box budget).
  double nu_resolution = 0.02;
};

/// Achievable causal exponent bound, M > 2 on a finite alphabet:
///   max over eta of -log( sup_nu min_u max_i
///       sum_y p_i^u(y) exp(eta [nu.p^u(y) - p_i^u(y)] / (1 - nu(i))) ),
/// nu ranging over non-point-mass pmfs on the hypotheses. The inner sup is
/// bracketed by branch-and-bound over nu-boxes: per sheet (u, i) the
/// integrand is convex in the renormalized off-i weights, so interval-image
/// vertex evaluation upper-bounds each box. The reported value uses the
/// certified upper bracket of the sup, so it is a safe lower bound on the
/// causal exponent for any grid or budget.
double causal_lower_bound(const SensingModel& model,
                          const CausalLowerSettings& settings = {});

struct SequentialDenominator {
  double value = 0.0;
  MixedStrategy q_star;
};

/// Worst-case KL drift of the maximin control mixture when hypothesis i is
/// in the lead: solve_maximin over A[u][j] = kl(p_i^u, p_j^u), j != i.
SequentialDenominator sequential_denominator(const SensingModel& model,
                                             int hypothesis);

/// Closed forms for the three-location example as functions of eps.
/// seq_denominator_quoted and seq_denominator_derived differ: direct maximin
/// evaluation gives (1 - 2 eps) log((1 - eps)/eps), attained by the diagonal
/// control, which exceeds the often-quoted -log(2 sqrt(eps (1 - eps))).
struct ExampleClosedForms {
  double beta_ol = 0.0;
  double causal_lb = 0.0;
  double causal_ub = 0.0;
  double seq_denominator_quoted = 0.0;
  double seq_denominator_derived = 0.0;
};

ExampleClosedForms example_closed_forms(double eps);

struct ExponentReport {
  std::optional<BinaryExponent> binary;       // M == 2 only
  OpenLoopExponent open_loop;
  std::optional<double> causal_lower;         // M > 2 only
  std::optional<double> causal_upper;         // M > 2 only
  std::vector<SequentialDenominator> sequential_denominators;  // per hypothesis
};

ExponentReport compute_exponent_report(const SensingModel& model,
                                       const OpenLoopSettings& ol = {},
                                       const CausalLowerSettings& cl = {});

}  // namespace csense

#endif  // CSENSE_EXPONENTS_HPP_
